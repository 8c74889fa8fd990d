#pragma once

// Command implementations behind the CLI binary. Each returns a JSON run
// report plus a process exit code: 0 success/verified, 1 verified-false,
// 2 usage error, 3 timeout.

#include <chrono>

#include "analysis.hpp"
#include "model_io.hpp"
#include "report.hpp"
#include "search.hpp"

namespace semioval {

struct CmdOutcome {
    json report;
    int exit_code = 0;
};

namespace detail {

struct PrimePower {
    int p, k;
};

inline PrimePower factor_prime_power(int q) {
    for (int p = 2; p <= q; ++p) {
        if (!is_prime(p) || q % p != 0) continue;
        int k = 0, m = q;
        while (m % p == 0) { m /= p; ++k; }
        if (m != 1) break;
        return {p, k};
    }
    throw gf_error(std::to_string(q) + " is not a prime power");
}

inline long long ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace detail

inline Plane make_plane(int q) {
    auto [p, k] = detail::factor_prime_power(q);
    return Plane(field_make(p, k));
}

inline json pointset_to_json(const PointSet& s) {
    json arr = json::array();
    for (int p : s.to_indices()) {
        const Triple& t = s.plane().point(p).c;
        arr.push_back(std::to_string(t[0]) + ":" + std::to_string(t[1]) + ":" +
                      std::to_string(t[2]));
    }
    return arr;
}

inline json summary_to_json(const SearchSummary& sum, bool include_cases = false) {
    json r;
    r["search"] = sum.name;
    r["total_cases"] = sum.total_cases;
    r["unsat"] = sum.unsat;
    r["sat"] = sum.sat;
    r["timeouts"] = sum.timeouts;
    json wits = json::array();
    for (const auto& cr : sum.results)
        if (cr.witness) wits.push_back(pointset_to_json(*cr.witness));
    r["witnesses"] = wits;
    r["wall_time_ms"] = static_cast<long long>(sum.wall_s * 1000);
    for (const auto& [k, v] : sum.counters) r[k] = v;
    if (include_cases) {
        json cases = json::array();
        for (const auto& cr : sum.results) {
            json c;
            c["id"] = cr.id;
            c["status"] = to_string(cr.status);
            c["decisions"] = cr.stats.decisions;
            c["propagations"] = cr.stats.propagations;
            cases.push_back(c);
        }
        r["cases"] = cases;
    }
    return r;
}

inline int summary_exit_code(const SearchSummary& sum, bool sat_is_failure) {
    if (sum.timeouts > 0) return 3;
    if (sat_is_failure && sum.sat > 0) return 1;
    return 0;
}

inline CmdOutcome cmd_verify(const std::string& file, int q) {
    auto t0 = std::chrono::steady_clock::now();
    Plane pl = make_plane(q);
    PointSet s = load_pointset(pl, file);
    if (s.empty()) throw pointset_error("point set file is empty");

    bool blocking = is_blocking_set(s);
    bool semi = is_semioval(s);
    SecantSpectrum sp = secant_spectrum(s);

    json results;
    results["size"] = s.size();
    results["blocking"] = blocking;
    results["semioval"] = semi;
    results["blocking_semioval"] = blocking && semi;
    results["spectrum"] = sp.x;
    json tmap = json::object();
    if (semi) {
        for (int p : s.to_indices()) {
            auto tl = tangent_lines(p, s);
            tmap[triple_str(pl.point(p).c)] = triple_str(pl.point(tl.front()).c, '[', ']');
        }
    }
    results["tangent_map"] = tmap;

    CmdOutcome out;
    out.report = make_report("verify", {{"file", file}, {"q", q}}, q, results,
                             detail::ms_since(t0), {{"file", hash_file(file)}});
    out.exit_code = (blocking && semi) ? 0 : 1;
    return out;
}

inline CmdOutcome cmd_spectrum(const std::string& file, int q) {
    auto t0 = std::chrono::steady_clock::now();
    Plane pl = make_plane(q);
    PointSet s = load_pointset(pl, file);
    SecantSpectrum sp = secant_spectrum(s);
    json results;
    results["size"] = s.size();
    results["spectrum"] = sp.x;
    CmdOutcome out;
    out.report = make_report("spectrum", {{"file", file}, {"q", q}}, q, results,
                             detail::ms_since(t0), {{"file", hash_file(file)}});
    return out;
}

inline CmdOutcome cmd_bounds(int q) {
    auto t0 = std::chrono::steady_clock::now();
    detail::factor_prime_power(q); // reject non prime powers
    BoundsReport b = bounds_report(q);
    json results;
    if (b.dover) results["dover_bound"] = *b.dover;
    else results["dover_bound"] = nullptr; // 2q <= 47/4: out of the bound's domain
    results["heger_takats_bound"] = b.heger_takats;
    results["minimum_possible_size"] = b.best;
    results["excluded_secants"] = json::array();
    for (int s : b.excluded_secants) results["excluded_secants"].push_back(s);
    results["no_full_line"] = true;
    if (b.no_q_secant) results["no_11_secant_at_25"] = true;
    if (b.ten_secant_unique) results["ten_secant"] = "at most one";
    CmdOutcome out;
    out.report = make_report("bounds", {{"q", q}}, q, results, detail::ms_since(t0));
    return out;
}

inline CmdOutcome cmd_stabilizer(const std::string& file, int q) {
    auto t0 = std::chrono::steady_clock::now();
    Plane pl = make_plane(q);
    PointSet s = load_pointset(pl, file);
    GroupSet g = stabilizer_of_set(s, pl);
    json results;
    results["order"] = g.size();
    json fixed = json::array();
    for (int p : fixed_points(pl, g)) fixed.push_back(triple_str(pl.point(p).c));
    results["fixed_points"] = fixed;
    if (g.size() <= 64) {
        json elems = json::array();
        for (const auto& e : g.elements()) elems.push_back(e.m);
        results["elements"] = elems;
    }
    CmdOutcome out;
    out.report = make_report("stabilizer", {{"file", file}, {"q", q}}, q, results,
                             detail::ms_since(t0), {{"file", hash_file(file)}});
    return out;
}

inline CmdOutcome cmd_orbits(const std::string& scenario) {
    auto t0 = std::chrono::steady_clock::now();
    Plane pl = make_plane(11);
    json results;
    if (scenario == "ten-secant-pairs") {
        TenSecantContext ctx = ten_secant_context(pl);
        results["orbit_count"] = ctx.second_two_secant_options.size();
        json reps = json::array();
        for (int l : ctx.second_two_secant_options)
            reps.push_back(triple_str(pl.point(l).c, '[', ']'));
        results["second_two_secant_options"] = reps;
        results["first_two_secant"] = triple_str(pl.point(ctx.first_two_secant).c, '[', ']');
    } else if (scenario == "i3" || scenario == "i4") {
        SixSecantContext ctx = six_secant_context(pl);
        const auto& orbs = scenario == "i3" ? ctx.orbits_i3 : ctx.orbits_i4;
        results["candidate_points"] = ctx.domain.size();
        results["orbit_count"] = orbs.size();
        json reps = json::array();
        for (const auto& o : orbs) reps.push_back(triple_str(pl.point(o.front()).c));
        results["representatives"] = reps;
    } else {
        throw std::invalid_argument("unknown orbit scenario '" + scenario +
                                    "' (ten-secant-pairs, i3, i4)");
    }
    CmdOutcome out;
    out.report = make_report("orbits", {{"scenario", scenario}}, 11, results, detail::ms_since(t0));
    return out;
}

inline CmdOutcome cmd_export(const std::string& scenario, int q, const std::string& format,
                             const std::string& out_path, int case_index, int size) {
    auto t0 = std::chrono::steady_clock::now();
    Plane pl = make_plane(q);
    ConstraintModel m = build_base_model(pl);
    RunOptions opt;
    if (scenario == "base") {
        if (size > 0) constrain_size(m, size);
    } else if (scenario == "ten-secant-case") {
        auto cases = ten_secant_cases(pl);
        if (case_index < 0 || case_index >= static_cast<int>(cases.size()))
            throw std::invalid_argument("case index out of range");
        m = build_case_model(pl, cases[case_index], opt, ten_secant_context(pl).l10);
    } else if (scenario == "i3-case" || scenario == "i4-case") {
        auto cases = scenario == "i3-case" ? six_secant_i3_cases(pl) : six_secant_i4_cases(pl);
        if (case_index < 0 || case_index >= static_cast<int>(cases.size()))
            throw std::invalid_argument("case index out of range");
        m = build_case_model(pl, cases[case_index], opt);
    } else {
        throw std::invalid_argument("unknown export scenario '" + scenario + "'");
    }
    std::string text = export_model(m, format);
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write " + out_path);
    f << text;
    f.close();

    json results;
    results["format"] = format;
    results["path"] = out_path;
    results["bytes"] = text.size();
    results["content_hash"] = fnv1a_hex(text);
    CmdOutcome out;
    out.report = make_report("export",
                             {{"scenario", scenario},
                              {"q", q},
                              {"format", format},
                              {"out", out_path},
                              {"case", case_index},
                              {"size", size}},
                             q, results, detail::ms_since(t0));
    return out;
}

} // namespace semioval
