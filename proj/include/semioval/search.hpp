#pragma once

// The case searches: the staged 10-secant enumeration, the two 6-secant
// branch searches over PG(2,11), the generic minimum-size search, and the
// diagonal-orbit search that rediscovers the 26-point example.
//
// Every case list is generated deterministically from the plane, so case
// ids are stable across runs and machines; parallel runs fold results back
// in case-id order.

#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "analysis.hpp"
#include "group.hpp"
#include "model.hpp"

namespace semioval {

struct search_error : std::runtime_error {
    explicit search_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct CaseConfig {
    int id = 0;
    std::string desc;
    std::vector<int> force_in, force_out;
    std::vector<std::pair<int, int>> secants; // (line index, exact size)
    int size = 25;
    // facts that hold in the case's branch but are not among its defining
    // forcings; applied only when RunOptions::strengthen is set
    std::vector<std::pair<int, int>> branch_secants;
    std::vector<std::pair<int, int>> branch_line_caps;
    std::vector<ExactCount> branch_counts;
};

struct CaseResult {
    int id = 0;
    SolveStatus status = SolveStatus::Timeout;
    std::optional<PointSet> witness;
    SolveStats stats;
};

struct RunOptions {
    int jobs = 1;
    double time_limit_per_case_s = 600;
    int case_from = 0, case_to = -1; // inclusive range, -1 = all
    bool strengthen = true;          // add the valid <=6 secant caps
    int size_min = -1, size_max = -1; // override the case size (ten-secant variant)
};

struct SearchSummary {
    std::string name;
    long long total_cases = 0, unsat = 0, sat = 0, timeouts = 0;
    std::vector<CaseResult> results;
    std::map<std::string, long long> counters;
    double wall_s = 0;
    bool all_unsat() const { return sat == 0 && timeouts == 0; }
};

namespace detail {

inline void run_case_range(int from, int to, int jobs, const std::function<void(int)>& work) {
    if (jobs <= 1) {
        for (int i = from; i <= to; ++i) work(i);
        return;
    }
    std::atomic<int> next(from);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mu;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            while (true) {
                int i = next.fetch_add(1);
                if (i > to) break;
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    next.store(to + 1);
                    break;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline void trim_results(std::vector<CaseResult>& results, int from, int to) {
    results.erase(results.begin() + to + 1, results.end());
    results.erase(results.begin(), results.begin() + from);
}

} // namespace detail

// ---------------------------------------------------------------------------
// 10-secant branch
// ---------------------------------------------------------------------------

struct TenSecantContext {
    const Plane* plane = nullptr;
    int Q, R, l10;          // Q=(1,0,0), R=(0,1,0), l10=[0,0,1]
    int three_secant;       // [0,1,0]
    int first_two_secant;   // [0,1,1]
    std::vector<int> second_two_secant_options; // line indices, 5 of them
    std::vector<int> third_point_options;       // points on the 3-secant, 9 of them
    std::vector<int> l10_in_points;             // the ten forced points of l10

    long long stage3 = 28, stage4 = 15, stage5 = 2520;
    long long configurations_per_case() const { return stage3 * stage4 * stage5; }
    long long total_configurations() const {
        return static_cast<long long>(second_two_secant_options.size()) *
               third_point_options.size() * configurations_per_case();
    }
};

inline TenSecantContext ten_secant_context(const Plane& pl) {
    if (pl.q() != 11) throw search_error("the 10-secant search is defined over PG(2,11)");
    TenSecantContext ctx;
    ctx.plane = &pl;
    ctx.Q = pl.point_index(1, 0, 0);
    ctx.R = pl.point_index(0, 1, 0);
    ctx.l10 = pl.line_index(0, 0, 1);
    ctx.three_secant = pl.line_index(0, 1, 0);
    ctx.first_two_secant = pl.line_index(0, 1, 1);

    for (int p : pl.points_on_line(ctx.l10))
        if (p != ctx.Q && p != ctx.R) ctx.l10_in_points.push_back(p);

    // pairs of non-tangent lines through Q, folded under the group fixing
    // Q, R and the 3-secant; each orbit is represented by its pair through
    // [0,1,1] with the smallest partner index
    GroupSet g = subgroup_fixing(pl, FixSpec{{ctx.Q, ctx.R}, {}, {ctx.three_secant}});
    std::vector<int> candidate_lines;
    for (int l : pl.lines_through_point(ctx.Q))
        if (l != ctx.l10 && l != ctx.three_secant) candidate_lines.push_back(l);
    auto orbits = pair_orbits(candidate_lines, line_perms(pl, g));
    for (const auto& orbit : orbits) {
        int partner = -1;
        for (const auto& pr : orbit) {
            if (pr.first == ctx.first_two_secant && (partner < 0 || pr.second < partner))
                partner = pr.second;
            if (pr.second == ctx.first_two_secant && (partner < 0 || pr.first < partner))
                partner = pr.first;
        }
        if (partner < 0) throw search_error("line-pair orbit misses the [0,1,1] representative");
        ctx.second_two_secant_options.push_back(partner);
    }
    std::sort(ctx.second_two_secant_options.begin(), ctx.second_two_secant_options.end());

    // the stabilizer of each full line selection must act 2-transitively on
    // the non-Q points of the 3-secant, which is what lets two of the three
    // points there be pinned
    int p001 = pl.point_index(0, 0, 1), p101 = pl.point_index(1, 0, 1);
    for (int c2 : ctx.second_two_secant_options) {
        GroupSet h = subgroup_fixing(
            pl, FixSpec{{ctx.Q, ctx.R}, {}, {ctx.three_secant, ctx.first_two_secant, c2}});
        auto perms = point_perms(pl, h);
        std::set<std::pair<int, int>> orbit;
        std::vector<std::pair<int, int>> queue{{p001, p101}};
        orbit.insert(queue[0]);
        for (size_t i = 0; i < queue.size(); ++i)
            for (const auto& perm : perms) {
                auto img = std::make_pair(perm[queue[i].first], perm[queue[i].second]);
                if (orbit.insert(img).second) queue.push_back(img);
            }
        if (orbit.size() != 110)
            throw search_error("stabilizer not 2-transitive on the 3-secant");
    }

    for (int p : pl.points_on_line(ctx.three_secant))
        if (p != ctx.Q && p != p001 && p != p101) ctx.third_point_options.push_back(p);
    if (ctx.second_two_secant_options.size() != 5 || ctx.third_point_options.size() != 9)
        throw search_error("unexpected 10-secant stage counts");
    return ctx;
}

inline std::vector<CaseConfig> ten_secant_cases(const Plane& pl) {
    TenSecantContext ctx = ten_secant_context(pl);
    std::vector<CaseConfig> cases;
    int p001 = pl.point_index(0, 0, 1), p101 = pl.point_index(1, 0, 1);
    int id = 0;
    for (int c2 : ctx.second_two_secant_options) {
        for (int x : ctx.third_point_options) {
            CaseConfig c;
            c.id = id++;
            c.desc = "10-secant, 2nd 2-secant " + triple_str(pl.point(c2).c, '[', ']') +
                     ", 3rd point " + triple_str(pl.point(x).c);
            c.force_in = ctx.l10_in_points;
            c.force_in.push_back(p001);
            c.force_in.push_back(p101);
            c.force_in.push_back(x);
            c.force_out = {ctx.Q, ctx.R};
            c.secants.emplace_back(ctx.three_secant, 3);
            c.secants.emplace_back(ctx.first_two_secant, 2);
            c.secants.emplace_back(c2, 2);
            for (int l : pl.lines_through_point(ctx.Q))
                if (l != ctx.l10 && l != ctx.three_secant && l != ctx.first_two_secant && l != c2)
                    c.secants.emplace_back(l, 1);
            cases.push_back(std::move(c));
        }
    }
    return cases;
}

inline ConstraintModel build_case_model(const Plane& pl, const CaseConfig& c,
                                        const RunOptions& opt, int exempt_line = -1) {
    ConstraintModel m = build_base_model(pl);
    int lo = opt.size_min >= 0 ? opt.size_min : c.size;
    int hi = opt.size_max >= 0 ? opt.size_max : c.size;
    constrain_size_window(m, lo, hi);
    for (int p : c.force_in) force_point(m, p, true);
    for (int p : c.force_out) force_point(m, p, false);
    for (auto [l, k] : c.secants) force_secant(m, l, k);
    if (opt.strengthen) {
        // valid in both branches: secant sizes 7..q+1 are ruled out by the
        // size bounds, the single permitted 10-secant is the exempt line
        for (int l = 0; l < pl.size(); ++l)
            if (l != exempt_line) limit_line_max(m, l, 6);
        for (auto [l, k] : c.branch_secants) force_secant(m, l, k);
        for (auto [l, k] : c.branch_line_caps) limit_line_max(m, l, k);
        for (const auto& ec : c.branch_counts) add_exact_count(m, ec.points, ec.k);
    }
    return m;
}

namespace detail {

// The staged explicit enumeration of one 10-secant case. State tracks, for
// every forced point T of the 10-secant, how many of the 11 other lines
// through T are still missed by the off-line points chosen so far; a leaf
// is a hit exactly when each T misses exactly one line (its tangent).
class TenSecantDirect {
public:
    TenSecantDirect(const TenSecantContext& ctx, int c2_line, int third_point)
        : pl_(*ctx.plane), ctx_(ctx), c2_(c2_line), third_(third_point) {
        const int n = pl_.size();
        slot_.assign(static_cast<size_t>(n) * 10, -1);
        for (int t = 0; t < 10; ++t) {
            int tp = ctx.l10_in_points[t];
            int s = 0;
            for (int l : pl_.lines_through_point(tp)) {
                if (l == ctx.l10) continue;
                for (int p : pl_.points_on_line(l))
                    if (p != tp) slot_[static_cast<size_t>(p) * 10 + t] = static_cast<int8_t>(s);
                ++s;
            }
        }
        cnt_.assign(10 * 11, 0);
        uncovered_.assign(10, 11);
        on_q_secant_.assign(n, 0);
        for (int l : {ctx.three_secant, ctx.first_two_secant, c2_})
            for (int p : pl_.points_on_line(l)) on_q_secant_[p] = 1;
        r_used_.assign(n, 0);
        q_used_.assign(n, 0);
    }

    struct Outcome {
        long long configurations = 0; // leaves accounted for, pruned subtrees included
        long long leaves_visited = 0;
        std::vector<PointSet> found;
    };

    Outcome run() {
        add_point(pl_.point_index(0, 0, 1));
        add_point(pl_.point_index(1, 0, 1));
        add_point(third_);
        r_used_[pl_.join(ctx_.R, pl_.point_index(0, 0, 1))] = 1;
        r_used_[pl_.join(ctx_.R, pl_.point_index(1, 0, 1))] = 1;
        r_used_[pl_.join(ctx_.R, third_)] = 1;
        stage_pairs(ctx_.first_two_secant, /*expect=*/8, [&] {
            stage_pairs(c2_, /*expect=*/6, [&] { stage5(); });
        });
        return out_;
    }

private:
    const Plane& pl_;
    const TenSecantContext& ctx_;
    int c2_, third_;
    std::vector<int8_t> slot_;
    std::vector<uint16_t> cnt_;
    std::vector<int> uncovered_;
    int dead_ = 0;
    std::vector<char> on_q_secant_, r_used_, q_used_;
    std::vector<int> chosen_;
    Outcome out_;

    void add_point(int p) {
        chosen_.push_back(p);
        const int8_t* s = &slot_[static_cast<size_t>(p) * 10];
        for (int t = 0; t < 10; ++t)
            if (cnt_[t * 11 + s[t]]++ == 0 && --uncovered_[t] == 0) ++dead_;
    }
    void remove_point() {
        int p = chosen_.back();
        chosen_.pop_back();
        const int8_t* s = &slot_[static_cast<size_t>(p) * 10];
        for (int t = 0; t < 10; ++t)
            if (--cnt_[t * 11 + s[t]] == 0 && uncovered_[t]++ == 0) --dead_;
    }

    // choose an unordered pair of points of `line` to join S_R, respecting
    // the used tangent lines through R
    template <typename Next>
    void stage_pairs(int line, int expect, const Next& next) {
        std::vector<int> cand;
        for (int p : pl_.points_on_line(line))
            if (p != ctx_.Q && !r_used_[pl_.join(ctx_.R, p)]) cand.push_back(p);
        if (static_cast<int>(cand.size()) != expect)
            throw search_error("10-secant stage candidate count broke");
        for (size_t i = 0; i < cand.size(); ++i) {
            for (size_t j = i + 1; j < cand.size(); ++j) {
                int a = cand[i], b = cand[j];
                int la = pl_.join(ctx_.R, a), lb = pl_.join(ctx_.R, b);
                add_point(a);
                add_point(b);
                r_used_[la] = r_used_[lb] = 1;
                next();
                r_used_[la] = r_used_[lb] = 0;
                remove_point();
                remove_point();
            }
        }
    }

    void stage5() {
        std::vector<int> rlines;
        for (int l : pl_.lines_through_point(ctx_.R))
            if (l != ctx_.l10 && !r_used_[l]) rlines.push_back(l);
        if (rlines.size() != 4) throw search_error("10-secant stage-5 line count broke");
        // leaves under one chosen pair at each depth: 15*6*1, 6*1, 1, 1
        static const long long below[4] = {90, 6, 1, 1};
        stage5_level(rlines, 0, below);
    }

    void stage5_level(const std::vector<int>& rlines, int depth, const long long* below) {
        if (depth == 4) {
            ++out_.configurations;
            ++out_.leaves_visited;
            bool hit = true;
            for (int t = 0; t < 10; ++t)
                if (uncovered_[t] != 1) { hit = false; break; }
            if (hit) record_witness();
            return;
        }
        std::vector<int> cand;
        for (int p : pl_.points_on_line(rlines[depth]))
            if (p != ctx_.R && !on_q_secant_[p] && !q_used_[pl_.join(ctx_.Q, p)]) cand.push_back(p);
        if (static_cast<int>(cand.size()) != 8 - 2 * depth)
            throw search_error("10-secant stage-5 candidate count broke");
        for (size_t i = 0; i < cand.size(); ++i) {
            for (size_t j = i + 1; j < cand.size(); ++j) {
                int a = cand[i], b = cand[j];
                int la = pl_.join(ctx_.Q, a), lb = pl_.join(ctx_.Q, b);
                add_point(a);
                add_point(b);
                if (dead_ == 0) {
                    q_used_[la] = q_used_[lb] = 1;
                    stage5_level(rlines, depth + 1, below);
                    q_used_[la] = q_used_[lb] = 0;
                } else {
                    out_.configurations += below[depth];
                }
                remove_point();
                remove_point();
            }
        }
    }

    void record_witness() {
        PointSet s(pl_);
        for (int p : ctx_.l10_in_points) s.add(p);
        for (int p : chosen_) s.add(p);
        if (!is_blocking_semioval(s))
            throw search_error("10-secant direct check produced a bogus witness");
        out_.found.push_back(std::move(s));
    }
};

} // namespace detail

enum class TenSecantEngine { Direct, Cp };

inline SearchSummary run_ten_secant(const Plane& pl, TenSecantEngine engine,
                                    const RunOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    TenSecantContext ctx = ten_secant_context(pl);
    std::vector<CaseConfig> cases = ten_secant_cases(pl);
    int from = std::max(0, opt.case_from);
    int to = opt.case_to < 0 ? static_cast<int>(cases.size()) - 1
                             : std::min<int>(opt.case_to, cases.size() - 1);

    SearchSummary sum;
    sum.name = engine == TenSecantEngine::Direct ? "ten-secant/direct" : "ten-secant/cp";
    sum.total_cases = to - from + 1;
    sum.results.resize(cases.size());
    std::vector<long long> confs(cases.size(), 0), leaves(cases.size(), 0);

    detail::run_case_range(from, to, opt.jobs, [&](int i) {
        const CaseConfig& c = cases[i];
        CaseResult r;
        r.id = c.id;
        if (engine == TenSecantEngine::Direct) {
            int c2 = ctx.second_two_secant_options[i / 9];
            int x = ctx.third_point_options[i % 9];
            detail::TenSecantDirect d(ctx, c2, x);
            auto res = d.run();
            confs[i] = res.configurations;
            leaves[i] = res.leaves_visited;
            r.status = res.found.empty() ? SolveStatus::Unsat : SolveStatus::Sat;
            if (!res.found.empty()) r.witness = res.found.front();
        } else {
            ConstraintModel m = build_case_model(pl, c, opt, ctx.l10);
            auto res = solve(m, std::chrono::duration<double>(opt.time_limit_per_case_s));
            r.status = res.status;
            r.witness = res.witness;
            r.stats = res.stats;
        }
        sum.results[i] = std::move(r);
    });

    for (int i = from; i <= to; ++i) {
        switch (sum.results[i].status) {
            case SolveStatus::Unsat: ++sum.unsat; break;
            case SolveStatus::Sat: ++sum.sat; break;
            default: ++sum.timeouts; break;
        }
    }
    if (engine == TenSecantEngine::Direct) {
        long long c = 0, lv = 0;
        for (int i = from; i <= to; ++i) { c += confs[i]; lv += leaves[i]; }
        sum.counters["configurations"] = c;
        sum.counters["leaves_visited"] = lv;
        sum.counters["stage_product"] = ctx.total_configurations();
    }
    sum.counters["case_from"] = from;
    sum.counters["case_to"] = to;
    detail::trim_results(sum.results, from, to);
    sum.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sum;
}

// The size-relaxed 10-secant model: the ten points of [0,0,1] other than
// (1,0,0) and (0,1,0) forced in, those two forced out, and the set size left
// to a window instead of being pinned at 25. Running it above 25 turns up
// the 26-point blocking semioval.
inline SolveResult ten_secant_relaxed(const Plane& pl, int size_min, int size_max,
                                      double time_limit_s = 600, bool strengthen = true) {
    TenSecantContext ctx = ten_secant_context(pl);
    ConstraintModel m = build_base_model(pl);
    constrain_size_window(m, size_min, size_max);
    for (int p : ctx.l10_in_points) force_point(m, p, true);
    force_point(m, ctx.Q, false);
    force_point(m, ctx.R, false);
    if (strengthen)
        for (int l = 0; l < pl.size(); ++l)
            if (l != ctx.l10) limit_line_max(m, l, 6);
    return solve(m, std::chrono::duration<double>(time_limit_s));
}

// ---------------------------------------------------------------------------
// 6-secant branch
// ---------------------------------------------------------------------------

struct SixSecantContext {
    const Plane* plane = nullptr;
    std::array<int, 4> I{}; // (1,0,0), (0,1,0), (0,0,1), (1,1,1)
    int Q, R;               // (1,1,0), (1,0,1)
    std::array<int, 5> config_lines{}; // n, l1, l2, m1, m2
    std::vector<int> domain;           // candidate P points: off all five lines
    std::vector<std::vector<int>> orbits_i3, orbits_i4;
};

inline SixSecantContext six_secant_context(const Plane& pl) {
    if (pl.q() != 11) throw search_error("the 6-secant searches are defined over PG(2,11)");
    SixSecantContext ctx;
    ctx.plane = &pl;
    ctx.I = {pl.point_index(1, 0, 0), pl.point_index(0, 1, 0), pl.point_index(0, 0, 1),
             pl.point_index(1, 1, 1)};
    ctx.Q = pl.point_index(1, 1, 0);
    ctx.R = pl.point_index(1, 0, 1);
    int l2 = pl.join(ctx.I[0], ctx.I[1]);
    int m2 = pl.join(ctx.I[0], ctx.I[2]);
    int l1 = pl.join(ctx.I[2], ctx.I[3]);
    int m1 = pl.join(ctx.I[1], ctx.I[3]);
    int nline = pl.join(ctx.Q, ctx.R);
    ctx.config_lines = {nline, l1, l2, m1, m2};

    for (int p = 0; p < pl.size(); ++p) {
        bool on = false;
        for (int l : ctx.config_lines)
            if (pl.incident(p, l)) { on = true; break; }
        if (!on) ctx.domain.push_back(p);
    }

    GroupSet g2 = subgroup_fixing(pl, FixSpec{{ctx.I[0], ctx.I[3]}, {{ctx.I[1], ctx.I[2]}}, {}});
    GroupSet g8 = subgroup_fixing(
        pl, FixSpec{{}, {{ctx.Q, ctx.R}, {ctx.I[0], ctx.I[1], ctx.I[2], ctx.I[3]}}, {}});
    if (g2.size() != 2 || g8.size() != 8)
        throw search_error("unexpected configuration stabilizer orders");
    ctx.orbits_i3 = point_orbits(pl, g2, ctx.domain);
    ctx.orbits_i4 = point_orbits(pl, g8, ctx.domain);
    return ctx;
}

// lines through P that can be 6-secants of the configuration: they must
// miss Q, R and all four points of I, so that they cross the five config
// lines in five fresh, distinct points
inline std::vector<int> six_secant_candidate_lines(const SixSecantContext& ctx, int p) {
    const Plane& pl = *ctx.plane;
    std::vector<int> out;
    for (int l : pl.lines_through_point(p)) {
        bool ok = !pl.incident(ctx.Q, l) && !pl.incident(ctx.R, l);
        for (int i = 0; ok && i < 4; ++i)
            if (pl.incident(ctx.I[i], l)) ok = false;
        if (ok) out.push_back(l);
    }
    return out;
}

// In this branch Q and R each lie on exactly three 6-secants, all of them
// configuration lines, so their remaining pencil lines hold at most 5.
inline std::vector<std::pair<int, int>> six_secant_pencil_caps(const SixSecantContext& ctx) {
    const Plane& pl = *ctx.plane;
    std::vector<std::pair<int, int>> caps;
    for (int center : {ctx.Q, ctx.R}) {
        for (int l : pl.lines_through_point(center)) {
            bool config = false;
            for (int cl : ctx.config_lines)
                if (l == cl) config = true;
            if (!config) caps.emplace_back(l, 5);
        }
    }
    return caps;
}

inline std::array<int, 5> six_secant_intersections(const SixSecantContext& ctx, int line) {
    const Plane& pl = *ctx.plane;
    std::array<int, 5> pts{};
    for (int i = 0; i < 5; ++i) pts[i] = pl.meet(line, ctx.config_lines[i]);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (pts[i] == pts[j]) throw search_error("candidate 6-secant hits a config vertex");
    return pts;
}

inline std::vector<CaseConfig> six_secant_i3_cases(const Plane& pl) {
    SixSecantContext ctx = six_secant_context(pl);
    std::vector<CaseConfig> cases;
    int id = 0;
    for (const auto& orbit : ctx.orbits_i3) {
        int p = orbit.front();
        auto lines = six_secant_candidate_lines(ctx, p);
        for (size_t i = 0; i < lines.size(); ++i) {
            for (size_t j = i + 1; j < lines.size(); ++j) {
                CaseConfig c;
                c.id = id++;
                c.desc = "6-secant |I∩S|=3, P " + triple_str(pl.point(p).c) + ", lines " +
                         triple_str(pl.point(lines[i]).c, '[', ']') + " " +
                         triple_str(pl.point(lines[j]).c, '[', ']');
                c.force_in = {ctx.I[0], ctx.I[1], ctx.I[2], ctx.Q, ctx.R, p};
                for (int l : {lines[i], lines[j]})
                    for (int x : six_secant_intersections(ctx, l)) c.force_in.push_back(x);
                std::sort(c.force_in.begin(), c.force_in.end());
                if (std::adjacent_find(c.force_in.begin(), c.force_in.end()) != c.force_in.end() ||
                    c.force_in.size() != 16)
                    throw search_error("i3 case does not pin 16 distinct points");
                c.force_out = {ctx.I[3]};
                // branch facts: the five configuration lines and P's two
                // lines are exactly 6-secants here, and exactly two points
                // of the set avoid the configuration lines
                for (int l : ctx.config_lines) c.branch_secants.emplace_back(l, 6);
                c.branch_secants.emplace_back(lines[i], 6);
                c.branch_secants.emplace_back(lines[j], 6);
                c.branch_line_caps = six_secant_pencil_caps(ctx);
                c.branch_counts.push_back({ctx.domain, 2});
                cases.push_back(std::move(c));
            }
        }
    }
    return cases;
}

inline std::vector<CaseConfig> six_secant_i4_cases(const Plane& pl) {
    SixSecantContext ctx = six_secant_context(pl);
    std::vector<CaseConfig> cases;
    int id = 0;
    for (const auto& orbit : ctx.orbits_i4) {
        int p = orbit.front();
        auto clean_lines = six_secant_candidate_lines(ctx, p);
        for (int h1 : clean_lines) {
            for (int h2 : pl.lines_through_point(p)) {
                if (h2 == h1) continue;
                CaseConfig c;
                c.id = id++;
                c.desc = "6-secant |I∩S|=4, P " + triple_str(pl.point(p).c) + ", clean line " +
                         triple_str(pl.point(h1).c, '[', ']') + ", second " +
                         triple_str(pl.point(h2).c, '[', ']');
                c.force_in = {ctx.I[0], ctx.I[1], ctx.I[2], ctx.I[3], ctx.Q, ctx.R, p};
                for (int x : six_secant_intersections(ctx, h1)) c.force_in.push_back(x);
                std::sort(c.force_in.begin(), c.force_in.end());
                if (std::adjacent_find(c.force_in.begin(), c.force_in.end()) != c.force_in.end() ||
                    c.force_in.size() != 12)
                    throw search_error("i4 case does not pin 12 distinct points");
                c.secants.emplace_back(h2, 6);
                // branch facts: the configuration lines and the clean line
                // are exactly 6-secants, and exactly three points of the
                // set avoid the configuration lines
                for (int l : ctx.config_lines) c.branch_secants.emplace_back(l, 6);
                c.branch_secants.emplace_back(h1, 6);
                c.branch_line_caps = six_secant_pencil_caps(ctx);
                c.branch_counts.push_back({ctx.domain, 3});
                cases.push_back(std::move(c));
            }
        }
    }
    return cases;
}

enum class SixSecantBranch { I3, I4 };

inline SearchSummary run_six_secant(const Plane& pl, SixSecantBranch which,
                                    const RunOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CaseConfig> cases =
        which == SixSecantBranch::I3 ? six_secant_i3_cases(pl) : six_secant_i4_cases(pl);
    int from = std::max(0, opt.case_from);
    int to = opt.case_to < 0 ? static_cast<int>(cases.size()) - 1
                             : std::min<int>(opt.case_to, cases.size() - 1);

    SearchSummary sum;
    sum.name = which == SixSecantBranch::I3 ? "six-secant-i3" : "six-secant-i4";
    sum.total_cases = to - from + 1;
    sum.counters["all_cases"] = static_cast<long long>(cases.size());
    sum.results.resize(cases.size());

    detail::run_case_range(from, to, opt.jobs, [&](int i) {
        ConstraintModel m = build_case_model(pl, cases[i], opt);
        auto res = solve(m, std::chrono::duration<double>(opt.time_limit_per_case_s));
        CaseResult r;
        r.id = cases[i].id;
        r.status = res.status;
        r.witness = res.witness;
        r.stats = res.stats;
        sum.results[i] = std::move(r);
    });
    for (int i = from; i <= to; ++i) {
        switch (sum.results[i].status) {
            case SolveStatus::Unsat: ++sum.unsat; break;
            case SolveStatus::Sat: ++sum.sat; break;
            default: ++sum.timeouts; break;
        }
    }
    sum.counters["case_from"] = from;
    sum.counters["case_to"] = to;
    detail::trim_results(sum.results, from, to);
    sum.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sum;
}

// ---------------------------------------------------------------------------
// minimum-size search
// ---------------------------------------------------------------------------

struct MinSearchResult {
    int n_min = -1;
    std::optional<PointSet> witness;
    std::vector<std::pair<int, SolveStatus>> per_size;
    double wall_s = 0;
};

inline MinSearchResult min_blocking_semioval(const Plane& pl, int n_max,
                                             double time_limit_per_size_s = 600) {
    auto t0 = std::chrono::steady_clock::now();
    MinSearchResult out;
    int start = std::max(pl.q() + 2, lower_bound_heger_takats(pl.q()));
    if (8 * pl.q() - 47 > 0) start = std::max(start, lower_bound_dover(pl.q()));
    for (int n = start; n <= n_max; ++n) {
        ConstraintModel m = build_base_model(pl);
        constrain_size(m, n);
        // PGL(3,q) is transitive on points, so some image of any witness
        // contains point 0; seeding it breaks that symmetry
        force_point(m, 0, true);
        auto res = solve(m, std::chrono::duration<double>(time_limit_per_size_s));
        out.per_size.emplace_back(n, res.status);
        if (res.status == SolveStatus::Timeout) break;
        if (res.status == SolveStatus::Sat) {
            out.n_min = n;
            out.witness = res.witness;
            break;
        }
    }
    out.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// ---------------------------------------------------------------------------
// diagonal-orbit search
// ---------------------------------------------------------------------------

enum class DiagStructure {
    All,      // every union of orbits up to the size cap
    Triangle  // unions extending the (q-1)-secant + tangent-corner triangle
};

struct DiagSearchResult {
    int group_order = 0;
    int orbit_count = 0;
    long long unions_checked = 0;
    std::vector<PointSet> found;
    double wall_s = 0;
};

inline DiagSearchResult diagonal_orbit_search(const Plane& pl, int a, int b, int size_cap,
                                              DiagStructure structure = DiagStructure::All,
                                              long long node_budget = 200000000) {
    const Field& f = pl.field();
    if (a <= 0 || a >= f.q() || b <= 0 || b >= f.q())
        throw search_error("diagonal entries must be nonzero field elements");
    Collineation g = diag_collineation(f, 1, a, b);
    std::vector<Collineation> elems{identity_collineation()};
    Collineation acc = g;
    while (!(acc == identity_collineation())) {
        elems.push_back(acc);
        acc = compose(f, acc, g);
    }
    GroupSet grp(pl, std::move(elems), /*parametrized=*/true);

    std::vector<int> all(pl.size());
    for (int p = 0; p < pl.size(); ++p) all[p] = p;
    auto orbs = point_orbits(pl, grp, all);

    DiagSearchResult out;
    out.group_order = static_cast<int>(grp.size());
    out.orbit_count = static_cast<int>(orbs.size());

    std::vector<char> required(orbs.size(), 0), banned(orbs.size(), 0);
    if (structure == DiagStructure::Triangle) {
        int corner1 = pl.point_index(1, 0, 0), corner2 = pl.point_index(0, 1, 0);
        int apex = pl.point_index(0, 0, 1);
        int tangent_side = pl.line_index(1, 0, 0); // must stay tangent at the apex
        for (size_t i = 0; i < orbs.size(); ++i) {
            for (int p : orbs[i]) {
                const Triple& t = pl.point(p).c;
                if (p == corner1 || p == corner2) banned[i] = 1;
                if (t[2] == 0 && p != corner1 && p != corner2) required[i] = 1; // (q-1)-secant side
                if (p == apex) required[i] = 1;
                if (p != apex && pl.incident(p, tangent_side)) banned[i] = 1;
            }
            if (required[i] && banned[i])
                throw search_error("triangle structure incompatible with this orbit partition");
        }
    }

    // orbits ordered largest first so the size cap prunes early
    std::vector<int> order(orbs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        if (required[x] != required[y]) return required[x] > required[y];
        return orbs[x].size() > orbs[y].size();
    });

    PointSet current(pl);
    long long nodes = 0;
    int min_interesting = std::max(pl.q() + 2, lower_bound_heger_takats(pl.q()));
    std::function<void(size_t)> dfs = [&](size_t depth) {
        if (++nodes > node_budget)
            throw search_error("diagonal-orbit search exceeded its node budget");
        if (depth == order.size()) {
            ++out.unions_checked;
            if (current.size() >= min_interesting && is_blocking_semioval(current))
                out.found.push_back(current);
            return;
        }
        int oi = order[depth];
        const auto& orbit = orbs[oi];
        bool can_add = !banned[oi] && current.size() + static_cast<int>(orbit.size()) <= size_cap;
        if (can_add) {
            for (int p : orbit) current.add(p);
            dfs(depth + 1);
            for (int p : orbit) current.remove(p);
        }
        if (!required[oi]) dfs(depth + 1);
    };
    auto t0 = std::chrono::steady_clock::now();
    dfs(0);
    std::sort(out.found.begin(), out.found.end(),
              [](const PointSet& x, const PointSet& y) { return x.to_indices() < y.to_indices(); });
    out.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

inline std::vector<int> nonzero_squares(const Field& f) {
    std::set<int> sq;
    for (int x = 1; x < f.q(); ++x) sq.insert(f.mul(x, x));
    return {sq.begin(), sq.end()};
}

inline int element_order(const Field& f, int a) {
    int ord = 1, acc = a;
    while (acc != 1) { acc = f.mul(acc, a); ++ord; }
    return ord;
}

} // namespace semioval
