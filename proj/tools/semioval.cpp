// semioval: search for and verify blocking semiovals in PG(2,q).

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "semioval/cli.hpp"

namespace {

using namespace semioval;

void emit(const json& report, const std::string& report_path) {
    std::string why;
    if (!validate_report(report, &why)) throw std::logic_error("malformed report: " + why);
    std::string text = report.dump(2) + "\n";
    if (!report_path.empty()) {
        std::ofstream f(report_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot write " + report_path);
        f << text;
    }
    std::cout << text;
}

int default_jobs() {
    if (const char* env = std::getenv("SEMIOVAL_JOBS")) {
        int j = std::atoi(env);
        if (j > 0) return j;
    }
    return 1;
}

bool parse_range(const std::string& text, int& from, int& to) {
    auto dots = text.find("..");
    if (dots == std::string::npos) return false;
    try {
        from = std::stoi(text.substr(0, dots));
        to = std::stoi(text.substr(dots + 2));
    } catch (const std::exception&) {
        return false;
    }
    return from >= 0 && to >= from;
}

json diag_result_json(const DiagSearchResult& r) {
    json out;
    out["group_order"] = r.group_order;
    out["orbit_count"] = r.orbit_count;
    out["unions_checked"] = r.unions_checked;
    json found = json::array();
    for (const auto& s : r.found) {
        json fs;
        fs["size"] = s.size();
        fs["points"] = pointset_to_json(s);
        found.push_back(fs);
    }
    out["found"] = found;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"blocking semiovals in PG(2,q): verification, bounds and case searches"};
    app.require_subcommand(1);

    std::string file, report_path, scenario, format = "opb", out_path, engine = "direct";
    std::string cases_range, structure = "all";
    int q = 11, case_index = 0, size = 0, n_max = 0, a = 0, b = 0, cap = 0;
    int jobs = default_jobs();
    int size_min = -1, size_max = -1;
    double time_limit = 600;
    bool no_strengthen = false, all_square_pairs = false, analogous_only = false;
    bool include_cases = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--report", report_path, "also write the JSON report to this file");
    };

    auto* verify = app.add_subcommand("verify", "verify a point-set file");
    verify->add_option("--file", file, "point-set file (x:y:z per line)")->required();
    verify->add_option("--q", q, "plane order");
    add_common(verify);

    auto* spectrum = app.add_subcommand("spectrum", "secant spectrum of a point-set file");
    spectrum->add_option("--file", file)->required();
    spectrum->add_option("--q", q);
    add_common(spectrum);

    auto* bounds = app.add_subcommand("bounds", "lower bounds and excluded secant sizes");
    bounds->add_option("--q", q)->required();
    add_common(bounds);

    auto* stab = app.add_subcommand("stabilizer", "PGL(3,q) stabilizer of a point set");
    stab->add_option("--file", file)->required();
    stab->add_option("--q", q);
    add_common(stab);

    auto* orbits = app.add_subcommand("orbits", "orbit counts behind the case searches");
    orbits->add_option("--scenario", scenario, "ten-secant-pairs | i3 | i4")->required();
    add_common(orbits);

    auto* exp = app.add_subcommand("export", "export a model as OPB or DIMACS CNF");
    exp->add_option("--scenario", scenario, "base | ten-secant-case | i3-case | i4-case")
        ->required();
    exp->add_option("--q", q);
    exp->add_option("--format", format, "opb | dimacs");
    exp->add_option("--out", out_path)->required();
    exp->add_option("--case", case_index, "case index for case scenarios");
    exp->add_option("--size", size, "size constraint for the base scenario");
    add_common(exp);

    auto* search = app.add_subcommand("search", "run one of the searches");
    search->require_subcommand(1);
    auto add_search_common = [&](CLI::App* cmd) {
        cmd->add_option("--jobs", jobs, "worker threads (env SEMIOVAL_JOBS)");
        cmd->add_option("--time-limit-per-case", time_limit, "seconds per case");
        cmd->add_option("--cases", cases_range, "restrict to case range i..j");
        cmd->add_flag("--no-strengthen", no_strengthen,
                      "drop the derived <=6 secant caps from case models");
        cmd->add_flag("--include-cases", include_cases, "per-case detail in the report");
        add_common(cmd);
    };
    auto* ten = search->add_subcommand("ten-secant", "the 10-secant case of size 25");
    ten->add_option("--engine", engine, "direct | cp");
    ten->add_option("--size-min", size_min, "relax the size window (cp, whole-branch model)");
    ten->add_option("--size-max", size_max);
    add_search_common(ten);
    auto* i3 = search->add_subcommand("six-secant-i3", "6-secant case, three I-points in S");
    add_search_common(i3);
    auto* i4 = search->add_subcommand("six-secant-i4", "6-secant case, all four I-points in S");
    add_search_common(i4);
    auto* minc = search->add_subcommand("min", "minimum blocking semioval size");
    minc->add_option("--q", q)->required();
    minc->add_option("--n-max", n_max, "largest size to try")->required();
    minc->add_option("--time-limit-per-case", time_limit, "seconds per size");
    add_common(minc);
    auto* diag = search->add_subcommand("diag", "point sets invariant under diag(1,a,b)");
    diag->add_option("--q", q)->required();
    diag->add_option("--a", a);
    diag->add_option("--b", b);
    diag->add_option("--cap", cap, "size cap (default 2q+4)");
    diag->add_option("--structure", structure, "all | triangle");
    diag->add_flag("--all-square-pairs", all_square_pairs,
                   "iterate every pair of nonzero squares as (a,b)");
    diag->add_flag("--analogous-only", analogous_only,
                   "with --all-square-pairs: only pairs of order (q-1)/2");
    add_common(diag);

    CLI11_PARSE(app, argc, argv);

    try {
        RunOptions opt;
        opt.jobs = jobs;
        opt.time_limit_per_case_s = time_limit;
        opt.strengthen = !no_strengthen;
        if (!cases_range.empty() && !parse_range(cases_range, opt.case_from, opt.case_to))
            throw std::invalid_argument("bad --cases range (want i..j)");

        if (verify->parsed()) {
            auto out = cmd_verify(file, q);
            emit(out.report, report_path);
            return out.exit_code;
        }
        if (spectrum->parsed()) {
            auto out = cmd_spectrum(file, q);
            emit(out.report, report_path);
            return out.exit_code;
        }
        if (bounds->parsed()) {
            auto out = cmd_bounds(q);
            emit(out.report, report_path);
            return out.exit_code;
        }
        if (stab->parsed()) {
            auto out = cmd_stabilizer(file, q);
            emit(out.report, report_path);
            return out.exit_code;
        }
        if (orbits->parsed()) {
            auto out = cmd_orbits(scenario);
            emit(out.report, report_path);
            return out.exit_code;
        }
        if (exp->parsed()) {
            auto out = cmd_export(scenario, q, format, out_path, case_index, size);
            emit(out.report, report_path);
            return out.exit_code;
        }

        auto t0 = std::chrono::steady_clock::now();
        if (ten->parsed()) {
            Plane pl = make_plane(11);
            if (size_min >= 0 || size_max >= 0) {
                if (size_min < 0) size_min = 25;
                if (size_max < 0) size_max = size_min;
                auto res = ten_secant_relaxed(pl, size_min, size_max, time_limit, !no_strengthen);
                json results;
                results["status"] = to_string(res.status);
                if (res.witness) {
                    results["witness_size"] = res.witness->size();
                    results["witness"] = pointset_to_json(*res.witness);
                }
                emit(make_report("search.ten-secant-relaxed",
                                 {{"size_min", size_min}, {"size_max", size_max}}, 11, results,
                                 detail::ms_since(t0)),
                     report_path);
                return res.status == SolveStatus::Timeout ? 3 : 0;
            }
            auto sum = run_ten_secant(
                pl, engine == "cp" ? TenSecantEngine::Cp : TenSecantEngine::Direct, opt);
            emit(make_report("search.ten-secant", {{"engine", engine}}, 11,
                             summary_to_json(sum, include_cases), detail::ms_since(t0)),
                 report_path);
            return summary_exit_code(sum, /*sat_is_failure=*/true);
        }
        if (i3->parsed() || i4->parsed()) {
            Plane pl = make_plane(11);
            auto sum = run_six_secant(pl, i3->parsed() ? SixSecantBranch::I3 : SixSecantBranch::I4,
                                      opt);
            emit(make_report(std::string("search.") + (i3->parsed() ? "six-secant-i3" : "six-secant-i4"),
                             json::object(), 11, summary_to_json(sum, include_cases),
                             detail::ms_since(t0)),
                 report_path);
            return summary_exit_code(sum, /*sat_is_failure=*/true);
        }
        if (minc->parsed()) {
            Plane pl = make_plane(q);
            auto res = min_blocking_semioval(pl, n_max, time_limit);
            json results;
            results["n_min"] = res.n_min;
            json per = json::array();
            for (auto [n, st] : res.per_size)
                per.push_back({{"size", n}, {"status", to_string(st)}});
            results["per_size"] = per;
            if (res.witness) results["witness"] = pointset_to_json(*res.witness);
            emit(make_report("search.min", {{"q", q}, {"n_max", n_max}}, q, results,
                             detail::ms_since(t0)),
                 report_path);
            if (!res.per_size.empty() && res.per_size.back().second == SolveStatus::Timeout)
                return 3;
            return res.n_min > 0 ? 0 : 1;
        }
        if (diag->parsed()) {
            Plane pl = make_plane(q);
            if (cap <= 0) cap = 2 * q + 4;
            DiagStructure ds = structure == "triangle" ? DiagStructure::Triangle
                                                       : DiagStructure::All;
            json results;
            if (all_square_pairs) {
                auto squares = nonzero_squares(pl.field());
                json pairs = json::array();
                long long found_total = 0;
                for (int aa : squares) {
                    for (int bb : squares) {
                        if (analogous_only &&
                            (element_order(pl.field(), aa) != (q - 1) / 2 ||
                             element_order(pl.field(), bb) != (q - 1) / 2))
                            continue;
                        json entry;
                        entry["a"] = aa;
                        entry["b"] = bb;
                        try {
                            auto r = diagonal_orbit_search(pl, aa, bb, cap, ds);
                            entry["found"] = r.found.size();
                            entry["group_order"] = r.group_order;
                            found_total += r.found.size();
                        } catch (const search_error& e) {
                            entry["skipped"] = e.what();
                        }
                        pairs.push_back(entry);
                    }
                }
                results["pairs"] = pairs;
                results["found_total"] = found_total;
            } else {
                if (a <= 0 || b <= 0) throw std::invalid_argument("need --a and --b (or --all-square-pairs)");
                results = diag_result_json(diagonal_orbit_search(pl, a, b, cap, ds));
            }
            emit(make_report("search.diag",
                             {{"q", q}, {"a", a}, {"b", b}, {"cap", cap}, {"structure", structure},
                              {"all_square_pairs", all_square_pairs}},
                             q, results, detail::ms_since(t0)),
                 report_path);
            return 0;
        }
        throw std::invalid_argument("no command");
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pointset_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gf_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const plane_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
