#pragma once

// Point sets of PG(2,q) as membership bitmaps, plus the text file format
// used across the CLI: one point per line as `x:y:z`, `#` comments and
// blank lines ignored, coordinates reduced representatives in [0,p)
// (base-p digit encoding for extension fields). Points are normalized on
// load; duplicates are rejected.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "plane.hpp"

namespace semioval {

struct pointset_error : std::runtime_error {
    explicit pointset_error(const std::string& msg) : std::runtime_error(msg) {}
};

class PointSet {
public:
    PointSet() = default;
    explicit PointSet(const Plane& pl)
        : plane_(&pl), bits_(pl.words(), 0) {}

    const Plane& plane() const { return *plane_; }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool contains(int pt) const { return (bits_[pt >> 6] >> (pt & 63)) & 1; }

    void add(int pt) {
        uint64_t m = uint64_t(1) << (pt & 63);
        if (!(bits_[pt >> 6] & m)) { bits_[pt >> 6] |= m; ++size_; }
    }
    void remove(int pt) {
        uint64_t m = uint64_t(1) << (pt & 63);
        if (bits_[pt >> 6] & m) { bits_[pt >> 6] &= ~m; --size_; }
    }

    const std::vector<uint64_t>& bits() const { return bits_; }

    int count_on_line(int ln) const {
        const auto& lb = plane_->line_bits(ln);
        int c = 0;
        for (size_t w = 0; w < bits_.size(); ++w)
            c += __builtin_popcountll(bits_[w] & lb[w]);
        return c;
    }

    std::vector<int> to_indices() const {
        std::vector<int> out;
        out.reserve(size_);
        for (int p = 0; p < plane_->size(); ++p)
            if (contains(p)) out.push_back(p);
        return out;
    }

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.bits_ == b.bits_;
    }

private:
    const Plane* plane_ = nullptr;
    std::vector<uint64_t> bits_;
    int size_ = 0;
};

inline PointSet make_pointset(const Plane& pl, const std::vector<int>& pts) {
    PointSet s(pl);
    for (int p : pts) s.add(p);
    return s;
}

inline PointSet parse_pointset(const Plane& pl, std::istream& in) {
    PointSet s(pl);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string text;
        for (char ch : raw)
            if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
        if (text.empty()) continue;

        Triple t;
        std::istringstream fields(text);
        std::string tok;
        int i = 0;
        while (std::getline(fields, tok, ':')) {
            if (i >= 3) throw pointset_error("line " + std::to_string(lineno) + ": too many coordinates");
            size_t used = 0;
            int v;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                throw pointset_error("line " + std::to_string(lineno) + ": bad coordinate '" + tok + "'");
            }
            if (used != tok.size())
                throw pointset_error("line " + std::to_string(lineno) + ": bad coordinate '" + tok + "'");
            if (v < 0 || v >= pl.q())
                throw pointset_error("line " + std::to_string(lineno) + ": coordinate out of field");
            t[i++] = v;
        }
        if (i != 3) throw pointset_error("line " + std::to_string(lineno) + ": expected x:y:z");

        int idx;
        try {
            idx = pl.index_of(t);
        } catch (const plane_error& e) {
            throw pointset_error("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (s.contains(idx))
            throw pointset_error("line " + std::to_string(lineno) + ": duplicate point " +
                                 triple_str(pl.point(idx).c));
        s.add(idx);
    }
    return s;
}

inline PointSet load_pointset(const Plane& pl, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw pointset_error("cannot open " + path);
    return parse_pointset(pl, in);
}

inline std::string format_pointset(const PointSet& s) {
    std::ostringstream out;
    for (int p : s.to_indices()) {
        const Triple& t = s.plane().point(p).c;
        out << t[0] << ":" << t[1] << ":" << t[2] << "\n";
    }
    return out.str();
}

} // namespace semioval
