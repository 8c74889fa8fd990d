#pragma once

// Test-only oracles, independent of the library code paths they check:
// subset enumeration for blocking semiovals, counting-based spectrum
// recomputation, a tiny DIMACS DPLL solver, and seeded random point sets.

#include <random>
#include <sstream>

#include "semioval/analysis.hpp"
#include "semioval/plane.hpp"

namespace oracle {

using semioval::Plane;
using semioval::PointSet;

// definition-level check, written against the raw incidence lists rather
// than the bitmap spectrum
inline bool brute_is_blocking_semioval(const Plane& pl, const std::vector<int>& pts) {
    std::vector<char> in(pl.size(), 0);
    for (int p : pts) in[p] = 1;
    for (int l = 0; l < pl.size(); ++l) {
        int c = 0;
        for (int p : pl.points_on_line(l)) c += in[p];
        if (c == 0 || c == pl.q() + 1) return false;
    }
    for (int p : pts) {
        int tangents = 0;
        for (int l : pl.lines_through_point(p)) {
            int c = 0;
            for (int x : pl.points_on_line(l)) c += in[x];
            if (c == 1) ++tangents;
        }
        if (tangents != 1) return false;
    }
    return true;
}

// every blocking semioval of size <= max_size, as sorted index vectors in
// lexicographic order
inline std::vector<std::vector<int>> enumerate_blocking_semiovals(const Plane& pl, int max_size) {
    std::vector<std::vector<int>> found;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int next) {
        if (!cur.empty() && brute_is_blocking_semioval(pl, cur)) found.push_back(cur);
        if (static_cast<int>(cur.size()) == max_size) return;
        for (int p = next; p < pl.size(); ++p) {
            cur.push_back(p);
            rec(p + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return found;
}

inline PointSet random_pointset(const Plane& pl, std::mt19937_64& rng) {
    PointSet s(pl);
    std::uniform_int_distribution<int> size_d(0, pl.size());
    int target = size_d(rng);
    std::vector<int> perm(pl.size());
    for (int i = 0; i < pl.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < target; ++i) s.add(perm[i]);
    return s;
}

// Minimal DIMACS CNF DPLL solver (unit propagation + chronological
// branching) used to cross-check CNF exports against the native engine.
class MiniCnf {
public:
    explicit MiniCnf(const std::string& dimacs) {
        std::istringstream in(dimacs);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == 'c') continue;
            if (line[0] == 'p') {
                std::istringstream h(line);
                std::string p, cnf;
                h >> p >> cnf >> nvars_;
                continue;
            }
            std::istringstream cl(line);
            std::vector<int> lits;
            int lit;
            while (cl >> lit && lit != 0) lits.push_back(lit);
            clauses_.push_back(lits);
        }
        val_.assign(nvars_ + 1, 0);
    }

    // returns 1 = SAT, 0 = UNSAT
    int solve() { return dpll() ? 1 : 0; }
    bool value(int var) const { return val_[var] > 0; }

private:
    int nvars_ = 0;
    std::vector<std::vector<int>> clauses_;
    std::vector<int> val_; // 0 unset, +1 true, -1 false

    bool propagate(std::vector<int>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& cl : clauses_) {
                int unassigned = 0, last = 0;
                bool sat = false;
                for (int lit : cl) {
                    int v = val_[std::abs(lit)];
                    if (v == 0) { ++unassigned; last = lit; }
                    else if ((v > 0) == (lit > 0)) { sat = true; break; }
                }
                if (sat) continue;
                if (unassigned == 0) return false;
                if (unassigned == 1) {
                    val_[std::abs(last)] = last > 0 ? 1 : -1;
                    trail.push_back(std::abs(last));
                    changed = true;
                }
            }
        }
        return true;
    }

    bool dpll() {
        std::vector<int> trail;
        if (!propagate(trail)) {
            for (int v : trail) val_[v] = 0;
            return false;
        }
        int var = 0;
        for (int v = 1; v <= nvars_; ++v)
            if (val_[v] == 0) { var = v; break; }
        if (var == 0) return true;
        for (int sign : {1, -1}) {
            val_[var] = sign;
            if (dpll()) return true;
            val_[var] = 0;
        }
        for (int v : trail) val_[v] = 0;
        return false;
    }
};

} // namespace oracle
