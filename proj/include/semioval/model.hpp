#pragma once

// The Boolean model for blocking semiovals and its native solver.
//
// Variables: one Boolean per point ("in the set") and one per line ("is a
// tangent"). Three guarded cardinality families define a blocking semioval:
//   tangent(l)      =>  sum of point vars on l == 1
//   not tangent(l)  =>  sum of point vars on l >= 2
//   in(P)           =>  sum of tangent vars through P == 1
// Case searches add forced assignments, exact secant sizes per line, a
// global size constraint, and optional per-line upper bounds.
//
// The solver is a chronological backtracker with exact cardinality
// propagation over per-line and per-point counters; it branches on a point
// of the most constrained still-active line. Identical inputs always yield
// identical status, witness and statistics.

#include <chrono>
#include <optional>
#include <vector>

#include "analysis.hpp"
#include "plane.hpp"
#include "pointset.hpp"

namespace semioval {

struct model_error : std::runtime_error {
    explicit model_error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class SolveStatus { Sat, Unsat, Timeout };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Sat: return "SAT";
        case SolveStatus::Unsat: return "UNSAT";
        default: return "TIMEOUT";
    }
}

struct ExactCount {
    std::vector<int> points;
    int k;
};

struct ConstraintModel {
    const Plane* plane = nullptr;
    std::vector<int8_t> point_force;   // -1 free, 0 out, 1 in
    std::vector<int8_t> tangent_force; // -1 free, 0 non-tangent, 1 tangent
    std::vector<int> line_exact;       // -1 none, else required secant size
    std::vector<int> line_max;         // per-line upper bound, q+1 = unconstrained
    std::vector<ExactCount> extra_exact; // cardinalities over arbitrary point sets
    int size_min = -1, size_max = -1;  // -1 = unconstrained
    // #tangent lines equals the set size for every blocking semioval (each
    // point has one tangent, each tangent one point), so a size constraint
    // doubles as a tangent-count constraint; kept as a switch for exports
    bool tangent_count_cut = true;

    int var_count() const { return 2 * plane->size(); }
    int guarded_constraint_count() const { return 3 * plane->size(); }
    bool size_constrained() const { return size_min >= 0 || size_max >= 0; }
};

inline ConstraintModel build_base_model(const Plane& pl) {
    ConstraintModel m;
    m.plane = &pl;
    m.point_force.assign(pl.size(), -1);
    m.tangent_force.assign(pl.size(), -1);
    m.line_exact.assign(pl.size(), -1);
    m.line_max.assign(pl.size(), pl.q() + 1);
    return m;
}

inline void constrain_size(ConstraintModel& m, int n) {
    if (m.size_constrained() && (m.size_min != n || m.size_max != n))
        throw model_error("size already constrained differently");
    m.size_min = m.size_max = n;
}

inline void constrain_size_window(ConstraintModel& m, int lo, int hi) {
    if (lo > hi) throw model_error("empty size window");
    m.size_min = lo;
    m.size_max = hi;
}

inline void force_point(ConstraintModel& m, int pt, bool in) {
    int8_t v = in ? 1 : 0;
    if (m.point_force[pt] >= 0 && m.point_force[pt] != v)
        throw model_error("contradictory point forcing at " + triple_str(m.plane->point(pt).c));
    m.point_force[pt] = v;
}

inline void force_tangent(ConstraintModel& m, int ln, bool tangent) {
    int8_t v = tangent ? 1 : 0;
    if (m.tangent_force[ln] >= 0 && m.tangent_force[ln] != v)
        throw model_error("contradictory tangency forcing at " + triple_str(m.plane->point(ln).c, '[', ']'));
    m.tangent_force[ln] = v;
}

inline void force_secant(ConstraintModel& m, int ln, int k) {
    if (k < 1 || k > m.plane->q() + 1) throw model_error("secant size out of range");
    if (m.line_exact[ln] >= 0 && m.line_exact[ln] != k)
        throw model_error("contradictory secant forcing at " + triple_str(m.plane->point(ln).c, '[', ']'));
    int in_forced = 0, out_forced = 0;
    for (int p : m.plane->points_on_line(ln)) {
        if (m.point_force[p] == 1) ++in_forced;
        if (m.point_force[p] == 0) ++out_forced;
    }
    if (in_forced > k || m.plane->q() + 1 - out_forced < k)
        throw model_error("secant forcing contradicts point forcings");
    m.line_exact[ln] = k;
    force_tangent(m, ln, k == 1);
}

inline void limit_line_max(ConstraintModel& m, int ln, int cap) {
    m.line_max[ln] = std::min(m.line_max[ln], cap);
}

inline void add_exact_count(ConstraintModel& m, std::vector<int> points, int k) {
    if (k < 0 || k > static_cast<int>(points.size()))
        throw model_error("exact count out of range");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    int in_forced = 0, out_forced = 0;
    for (int p : points) {
        if (m.point_force[p] == 1) ++in_forced;
        if (m.point_force[p] == 0) ++out_forced;
    }
    if (in_forced > k || static_cast<int>(points.size()) - out_forced < k)
        throw model_error("exact count contradicts point forcings");
    m.extra_exact.push_back({std::move(points), k});
}

struct SolveStats {
    long long decisions = 0;
    long long propagations = 0;
    long long conflicts = 0;
    double wall_s = 0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Timeout;
    std::optional<PointSet> witness;
    SolveStats stats;
};

namespace detail {

class Solver {
public:
    Solver(const ConstraintModel& m, std::chrono::duration<double> limit)
        : M(m), P(*m.plane), n_(P.size()), limit_s_(limit.count()) {}

    SolveResult run() {
        start_ = std::chrono::steady_clock::now();
        init();
        SolveResult res;
        try {
            bool root_ok = seed_forcings() && propagate();
            bool sat = root_ok && dfs();
            res.status = sat ? SolveStatus::Sat : SolveStatus::Unsat;
            if (sat) res.witness = extract_witness();
        } catch (const TimeoutSignal&) {
            res.status = SolveStatus::Timeout;
        }
        res.stats = stats_;
        res.stats.wall_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return res;
    }

private:
    struct TimeoutSignal {};
    struct TrailEntry { int idx; int8_t kind; }; // kind 0 = point, 1 = tangent

    const ConstraintModel& M;
    const Plane& P;
    int n_;
    double limit_s_;
    std::chrono::steady_clock::time_point start_;
    SolveStats stats_;

    std::vector<int8_t> pval_, tval_;
    std::vector<int> line_in_, line_undec_;
    std::vector<int> pt_tin_, pt_tundec_;
    std::vector<int> ex_in_, ex_undec_;
    std::vector<std::vector<int>> pt_extras_; // point -> extra-constraint ids
    long long in_total_ = 0, undec_total_ = 0;
    long long tin_total_ = 0, tundec_total_ = 0;
    int uncovered_lines_ = 0;

    std::vector<TrailEntry> trail_;
    std::vector<int> dirty_lines_, dirty_points_, dirty_extras_;
    std::vector<char> line_dirty_, point_dirty_, extra_dirty_;
    bool conflict_ = false;
    long long ticks_ = 0;

    void init() {
        pval_.assign(n_, -1);
        tval_.assign(n_, -1);
        line_in_.assign(n_, 0);
        line_undec_.assign(n_, P.q() + 1);
        pt_tin_.assign(n_, 0);
        pt_tundec_.assign(n_, P.q() + 1);
        undec_total_ = n_;
        tundec_total_ = n_;
        uncovered_lines_ = n_;
        line_dirty_.assign(n_, 0);
        point_dirty_.assign(n_, 0);
        const int ne = static_cast<int>(M.extra_exact.size());
        ex_in_.assign(ne, 0);
        ex_undec_.assign(ne, 0);
        extra_dirty_.assign(ne, 0);
        pt_extras_.assign(n_, {});
        for (int e = 0; e < ne; ++e) {
            ex_undec_[e] = static_cast<int>(M.extra_exact[e].points.size());
            for (int p : M.extra_exact[e].points) pt_extras_[p].push_back(e);
        }
    }

    bool seed_forcings() {
        for (int p = 0; p < n_; ++p)
            if (M.point_force[p] >= 0 && !assign_point(p, M.point_force[p])) return false;
        for (int l = 0; l < n_; ++l)
            if (M.tangent_force[l] >= 0 && !assign_tangent(l, M.tangent_force[l])) return false;
        for (int l = 0; l < n_; ++l) mark_line(l);
        for (int e = 0; e < static_cast<int>(M.extra_exact.size()); ++e) mark_extra(e);
        return true;
    }

    void check_time() {
        if ((++ticks_ & 0x3fff) != 0) return;
        auto now = std::chrono::steady_clock::now();
        if (std::chrono::duration<double>(now - start_).count() > limit_s_) throw TimeoutSignal{};
    }

    void mark_line(int l) {
        if (!line_dirty_[l]) { line_dirty_[l] = 1; dirty_lines_.push_back(l); }
    }
    void mark_point(int p) {
        if (!point_dirty_[p]) { point_dirty_[p] = 1; dirty_points_.push_back(p); }
    }
    void mark_extra(int e) {
        if (!extra_dirty_[e]) { extra_dirty_[e] = 1; dirty_extras_.push_back(e); }
    }

    bool assign_point(int p, int8_t v) {
        if (pval_[p] >= 0) return pval_[p] == v;
        pval_[p] = v;
        trail_.push_back({p, 0});
        --undec_total_;
        if (v == 1) ++in_total_;
        for (int l : P.lines_through_point(p)) {
            --line_undec_[l];
            if (v == 1 && ++line_in_[l] == 1) --uncovered_lines_;
            mark_line(l);
        }
        for (int e : pt_extras_[p]) {
            --ex_undec_[e];
            if (v == 1) ++ex_in_[e];
            mark_extra(e);
        }
        if (v == 1) mark_point(p);
        ++stats_.propagations;
        check_time();
        return true;
    }

    bool assign_tangent(int l, int8_t v) {
        if (tval_[l] >= 0) return tval_[l] == v;
        tval_[l] = v;
        trail_.push_back({l, 1});
        --tundec_total_;
        if (v == 1) ++tin_total_;
        for (int p : P.points_on_line(l)) {
            --pt_tundec_[p];
            if (v == 1) ++pt_tin_[p];
            mark_point(p);
        }
        mark_line(l);
        ++stats_.propagations;
        check_time();
        return true;
    }

    void undo_to(size_t mark) {
        while (trail_.size() > mark) {
            auto [idx, kind] = trail_.back();
            trail_.pop_back();
            if (kind == 0) {
                int8_t v = pval_[idx];
                pval_[idx] = -1;
                ++undec_total_;
                if (v == 1) --in_total_;
                for (int l : P.lines_through_point(idx)) {
                    ++line_undec_[l];
                    if (v == 1 && --line_in_[l] == 0) ++uncovered_lines_;
                }
                for (int e : pt_extras_[idx]) {
                    ++ex_undec_[e];
                    if (v == 1) --ex_in_[e];
                }
            } else {
                int8_t v = tval_[idx];
                tval_[idx] = -1;
                ++tundec_total_;
                if (v == 1) --tin_total_;
                for (int p : P.points_on_line(idx)) {
                    ++pt_tundec_[p];
                    if (v == 1) --pt_tin_[p];
                }
            }
        }
        for (int l : dirty_lines_) line_dirty_[l] = 0;
        for (int p : dirty_points_) point_dirty_[p] = 0;
        for (int e : dirty_extras_) extra_dirty_[e] = 0;
        dirty_lines_.clear();
        dirty_points_.clear();
        dirty_extras_.clear();
        conflict_ = false;
    }

    // effective cardinality bounds on a line's point sum
    void line_bounds(int l, int& lo, int& hi) const {
        lo = 1; // blocked either way: tangent -> ==1, non-tangent -> >=2
        hi = M.line_max[l];
        if (M.line_exact[l] >= 0) { lo = std::max(lo, M.line_exact[l]); hi = std::min(hi, M.line_exact[l]); }
        if (tval_[l] == 1) { hi = std::min(hi, 1); }
        else if (tval_[l] == 0) { lo = std::max(lo, 2); }
    }

    bool fix_line_rest(int l, int8_t v) {
        for (int p : P.points_on_line(l))
            if (pval_[p] < 0 && !assign_point(p, v)) return false;
        return true;
    }

    bool process_line(int l) {
        int lo, hi;
        line_bounds(l, lo, hi);
        int li = line_in_[l], lu = line_undec_[l];
        if (lo > hi || li > hi || li + lu < lo) return false;
        if (tval_[l] < 0) {
            if (li >= 2) { if (!assign_tangent(l, 0)) return false; }
            else if (li + lu <= 1) { if (!assign_tangent(l, 1)) return false; }
            line_bounds(l, lo, hi);
            li = line_in_[l];
            lu = line_undec_[l];
            if (lo > hi || li > hi || li + lu < lo) return false;
        }
        if (lu == 0) return li >= lo;
        if (li == hi) return fix_line_rest(l, 0);
        if (li + lu == lo) return fix_line_rest(l, 1);
        return true;
    }

    bool process_point(int p) {
        if (pval_[p] == 0) return true;
        int ti = pt_tin_[p], tu = pt_tundec_[p];
        if (pval_[p] < 0) {
            // an in-point would need exactly one tangent through it
            if (ti >= 2 || (ti == 0 && tu == 0)) return assign_point(p, 0);
            return true;
        }
        if (ti > 1 || ti + tu < 1) return false;
        if (ti == 1) {
            if (tu == 0) return true;
            for (int l : P.lines_through_point(p))
                if (tval_[l] < 0 && !assign_tangent(l, 0)) return false;
            return true;
        }
        if (tu == 1) {
            for (int l : P.lines_through_point(p))
                if (tval_[l] < 0) return assign_tangent(l, 1);
        }
        return true;
    }

    bool process_extra(int e) {
        const auto& ec = M.extra_exact[e];
        int in = ex_in_[e], undec = ex_undec_[e];
        if (in > ec.k || in + undec < ec.k) return false;
        if (undec == 0) return true;
        if (in == ec.k) {
            for (int p : ec.points)
                if (pval_[p] < 0 && !assign_point(p, 0)) return false;
        } else if (in + undec == ec.k) {
            for (int p : ec.points)
                if (pval_[p] < 0 && !assign_point(p, 1)) return false;
        }
        return true;
    }

    bool process_globals() {
        if (M.size_constrained()) {
            long long lo = M.size_min >= 0 ? M.size_min : 0;
            long long hi = M.size_max >= 0 ? M.size_max : n_;
            if (in_total_ > hi || in_total_ + undec_total_ < lo) return false;
            // every still-unblocked line needs one of the remaining points,
            // and a point blocks at most q+1 lines
            if (uncovered_lines_ > (P.q() + 1) * (hi - in_total_)) return false;
            if (undec_total_ > 0 && in_total_ == hi) {
                for (int p = 0; p < n_; ++p)
                    if (pval_[p] < 0 && !assign_point(p, 0)) return false;
            } else if (undec_total_ > 0 && in_total_ + undec_total_ == lo) {
                for (int p = 0; p < n_; ++p)
                    if (pval_[p] < 0 && !assign_point(p, 1)) return false;
            }
            if (M.tangent_count_cut) {
                if (tin_total_ > hi || tin_total_ + tundec_total_ < lo) return false;
                if (tundec_total_ > 0 && tin_total_ == hi) {
                    for (int l = 0; l < n_; ++l)
                        if (tval_[l] < 0 && !assign_tangent(l, 0)) return false;
                } else if (tundec_total_ > 0 && tin_total_ + tundec_total_ == lo) {
                    for (int l = 0; l < n_; ++l)
                        if (tval_[l] < 0 && !assign_tangent(l, 1)) return false;
                }
            }
        }
        return true;
    }

    bool propagate() {
        while (true) {
            if (!process_globals()) return false;
            bool any = false;
            while (!dirty_lines_.empty() || !dirty_points_.empty() || !dirty_extras_.empty()) {
                any = true;
                while (!dirty_lines_.empty()) {
                    int l = dirty_lines_.back();
                    dirty_lines_.pop_back();
                    line_dirty_[l] = 0;
                    if (!process_line(l)) return false;
                }
                while (!dirty_points_.empty()) {
                    int p = dirty_points_.back();
                    dirty_points_.pop_back();
                    point_dirty_[p] = 0;
                    if (!process_point(p)) return false;
                }
                while (!dirty_extras_.empty()) {
                    int e = dirty_extras_.back();
                    dirty_extras_.pop_back();
                    extra_dirty_[e] = 0;
                    if (!process_extra(e)) return false;
                }
            }
            if (!any) return true;
        }
    }

    // most constrained still-active line: lines with an unmet exact count
    // first, then unblocked lines, then anything still open; fewest
    // undecided points wins, ties by index
    int pick_branch_point() {
        int best_line = -1, best_score = INT32_MAX;
        for (int l = 0; l < n_; ++l) {
            if (line_undec_[l] == 0) continue;
            int lo, hi;
            line_bounds(l, lo, hi);
            bool open = line_in_[l] < lo || tval_[l] < 0 || line_in_[l] + line_undec_[l] > hi;
            if (!open) continue;
            int tier;
            if (M.line_exact[l] >= 0 && line_in_[l] < M.line_exact[l]) tier = 0;
            else if (line_in_[l] == 0) tier = 1;
            else tier = 2;
            int score = tier * 1000 + line_undec_[l];
            if (score < best_score) { best_score = score; best_line = l; }
        }
        if (best_line >= 0) {
            for (int p : P.points_on_line(best_line))
                if (pval_[p] < 0) return p;
        }
        for (int p = 0; p < n_; ++p)
            if (pval_[p] < 0) return p;
        return -1;
    }

    bool all_assigned_consistent() {
        // with every point decided, propagation has fixed all tangents and
        // checked all counters; just make sure nothing is left open
        return undec_total_ == 0 && tundec_total_ == 0;
    }

    bool dfs() {
        int p = pick_branch_point();
        if (p < 0) {
            if (all_assigned_consistent()) return true;
            // tangent vars can only remain open without any undecided point
            // if propagation was short-circuited; force them now
            for (int l = 0; l < n_; ++l)
                if (tval_[l] < 0) { mark_line(l); }
            if (!propagate()) return false;
            return all_assigned_consistent();
        }
        ++stats_.decisions;
        for (int8_t v : {int8_t(1), int8_t(0)}) {
            size_t mark = trail_.size();
            if (assign_point(p, v) && propagate()) {
                if (dfs()) return true;
            }
            ++stats_.conflicts;
            undo_to(mark);
        }
        return false;
    }

    PointSet extract_witness() const {
        PointSet s(P);
        for (int p = 0; p < n_; ++p)
            if (pval_[p] == 1) s.add(p);
        return s;
    }
};

} // namespace detail

inline bool witness_matches_model(const ConstraintModel& m, const PointSet& s) {
    const Plane& pl = *m.plane;
    for (int p = 0; p < pl.size(); ++p)
        if (m.point_force[p] >= 0 && s.contains(p) != (m.point_force[p] == 1)) return false;
    for (int l = 0; l < pl.size(); ++l) {
        int c = s.count_on_line(l);
        if (m.line_exact[l] >= 0 && c != m.line_exact[l]) return false;
        if (c > m.line_max[l]) return false;
        if (m.tangent_force[l] == 1 && c != 1) return false;
        if (m.tangent_force[l] == 0 && c == 1) return false;
    }
    for (const auto& ec : m.extra_exact) {
        int c = 0;
        for (int p : ec.points) c += s.contains(p);
        if (c != ec.k) return false;
    }
    if (m.size_min >= 0 && s.size() < m.size_min) return false;
    if (m.size_max >= 0 && s.size() > m.size_max) return false;
    return true;
}

inline SolveResult solve(const ConstraintModel& m,
                         std::chrono::duration<double> time_limit = std::chrono::minutes(10)) {
    detail::Solver solver(m, time_limit);
    SolveResult res = solver.run();
    if (res.status == SolveStatus::Sat) {
        if (!res.witness || !is_blocking_semioval(*res.witness) ||
            !witness_matches_model(m, *res.witness))
            throw model_error("solver returned an invalid witness");
    }
    return res;
}

} // namespace semioval
