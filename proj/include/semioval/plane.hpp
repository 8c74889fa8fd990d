#pragma once

// The Desarguesian projective plane PG(2,q): canonical point/line
// enumeration, incidence tables, join and meet.
//
// Points are nonzero coordinate triples (x,y,z) over GF(q) normalized so the
// first nonzero coordinate is 1; a point's index is the lexicographic rank
// of its normalized triple. Lines [a,b,c] use the identical normalization
// and numbering (point (x,y,z) lies on [a,b,c] iff ax+by+cz = 0), so the
// index of line [a,b,c] equals the index of point (a,b,c).

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gf.hpp"

namespace semioval {

struct plane_error : std::runtime_error {
    explicit plane_error(const std::string& msg) : std::runtime_error(msg) {}
};

using Triple = std::array<int, 3>;

struct ProjPoint {
    Triple c{0, 0, 0};
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c == b.c; }
};

struct ProjLine {
    Triple c{0, 0, 0};
    friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.c == b.c; }
};

inline std::string triple_str(const Triple& t, char open = '(', char close = ')') {
    return open + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
           std::to_string(t[2]) + close;
}

class Plane {
public:
    explicit Plane(Field f) : gf_(std::move(f)) { build(); }

    const Field& field() const { return gf_; }
    int q() const { return gf_.q(); }
    int size() const { return n_; } // number of points == number of lines

    const ProjPoint& point(int idx) const { return points_[idx]; }
    ProjLine line(int idx) const { return ProjLine{points_[idx].c}; }

    Triple normalize(int x, int y, int z) const {
        if (x == 0 && y == 0 && z == 0) throw plane_error("zero triple");
        Triple t{x, y, z};
        for (auto v : t)
            if (v < 0 || v >= gf_.q()) throw plane_error("coordinate out of field");
        int lead = t[0] ? t[0] : (t[1] ? t[1] : t[2]);
        int s = gf_.inv(lead);
        for (auto& v : t) v = gf_.mul(s, v);
        return t;
    }

    int index_of(const Triple& raw) const {
        Triple t = normalize(raw[0], raw[1], raw[2]);
        int key = (t[0] * gf_.q() + t[1]) * gf_.q() + t[2];
        return index_[key];
    }
    int point_index(int x, int y, int z) const { return index_of({x, y, z}); }
    int line_index(int a, int b, int c) const { return index_of({a, b, c}); }

    bool incident(int pt, int ln) const {
        const Triple& p = points_[pt].c;
        const Triple& l = points_[ln].c;
        int s = gf_.add(gf_.mul(p[0], l[0]),
                        gf_.add(gf_.mul(p[1], l[1]), gf_.mul(p[2], l[2])));
        return s == 0;
    }

    // join of two distinct points (a line index); by duality the same table
    // is the meet of two distinct lines (a point index)
    int join(int p1, int p2) const {
        if (p1 == p2) throw plane_error("join of equal points");
        return cross_[p1 * n_ + p2];
    }
    int meet(int l1, int l2) const {
        if (l1 == l2) throw plane_error("meet of equal lines");
        return cross_[l1 * n_ + l2];
    }

    const std::vector<int>& points_on_line(int ln) const { return pts_on_line_[ln]; }
    const std::vector<int>& lines_through_point(int pt) const { return lines_thru_pt_[pt]; }

    // membership bitmap of a line's points, for fast set intersections
    const std::vector<uint64_t>& line_bits(int ln) const { return line_bits_[ln]; }
    int words() const { return words_; }

private:
    Field gf_;
    int n_ = 0, words_ = 0;
    std::vector<ProjPoint> points_;
    std::vector<int> index_; // dense (x*q+y)*q+z -> point index, -1 otherwise
    std::vector<int> cross_;
    std::vector<std::vector<int>> pts_on_line_, lines_thru_pt_;
    std::vector<std::vector<uint64_t>> line_bits_;

    void build();
};

inline void Plane::build() {
    const int q = gf_.q();
    n_ = q * q + q + 1;
    words_ = (n_ + 63) / 64;

    points_.reserve(n_);
    index_.assign(q * q * q, -1);
    for (int x = 0; x <= 1; ++x) {
        for (int y = 0; y < q; ++y) {
            for (int z = 0; z < q; ++z) {
                if (x == 0 && y == 0 && z == 0) continue;
                if (x == 0 && y == 0 && z != 1) continue;
                if (x == 0 && y != 0 && y != 1) continue;
                int idx = static_cast<int>(points_.size());
                points_.push_back(ProjPoint{Triple{x, y, z}});
                index_[(x * q + y) * q + z] = idx;
            }
        }
    }
    if (static_cast<int>(points_.size()) != n_) throw plane_error("point enumeration broken");

    pts_on_line_.assign(n_, {});
    lines_thru_pt_.assign(n_, {});
    line_bits_.assign(n_, std::vector<uint64_t>(words_, 0));
    for (int l = 0; l < n_; ++l) {
        for (int p = 0; p < n_; ++p) {
            if (!incident(p, l)) continue;
            pts_on_line_[l].push_back(p);
            lines_thru_pt_[p].push_back(l);
            line_bits_[l][p >> 6] |= uint64_t(1) << (p & 63);
        }
        if (static_cast<int>(pts_on_line_[l].size()) != q + 1)
            throw plane_error("line has wrong point count");
    }

    cross_.assign(static_cast<size_t>(n_) * n_, -1);
    for (int i = 0; i < n_; ++i) {
        const Triple& a = points_[i].c;
        for (int j = i + 1; j < n_; ++j) {
            const Triple& b = points_[j].c;
            Triple c{
                gf_.sub(gf_.mul(a[1], b[2]), gf_.mul(a[2], b[1])),
                gf_.sub(gf_.mul(a[2], b[0]), gf_.mul(a[0], b[2])),
                gf_.sub(gf_.mul(a[0], b[1]), gf_.mul(a[1], b[0]))};
            int idx = index_of(c);
            cross_[i * n_ + j] = idx;
            cross_[j * n_ + i] = idx;
        }
    }
}

inline ProjLine line_through(const Plane& pl, const ProjPoint& p, const ProjPoint& q) {
    return pl.line(pl.join(pl.index_of(p.c), pl.index_of(q.c)));
}

inline ProjPoint meet(const Plane& pl, const ProjLine& l, const ProjLine& m) {
    return pl.point(pl.meet(pl.index_of(l.c), pl.index_of(m.c)));
}

inline bool incident(const Plane& pl, const ProjPoint& p, const ProjLine& l) {
    return pl.incident(pl.index_of(p.c), pl.index_of(l.c));
}

} // namespace semioval
