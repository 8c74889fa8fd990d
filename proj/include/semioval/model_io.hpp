#pragma once

// Portable exports of a ConstraintModel.
//
// OPB: standard pseudo-Boolean decision format. Variable x(i+1) is point i,
// x(n+i+1) is the tangency of line i (n = q^2+q+1). Guards are reified with
// a big-M term of M = q+1 on the guard literal.
//
// DIMACS: CNF with the same base numbering; cardinality sums use a
// bidirectional sequential unary counter, auxiliary variables numbered
// after the base block. Bound clauses carry the guard literal.
//
// Emission is deterministic, so repeated exports of the same model are
// byte-identical. import_opb reads back exactly the constraint shapes this
// emitter produces.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "model.hpp"

namespace semioval {

struct export_error : std::runtime_error {
    explicit export_error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

struct OpbTerm {
    long long coef;
    int var;     // 1-based
    bool negated;
};

struct OpbConstraint {
    std::vector<OpbTerm> terms;
    std::string rel; // ">=" or "="
    long long rhs;
};

inline std::string opb_line(const OpbConstraint& c) {
    std::ostringstream out;
    for (const auto& t : c.terms) {
        out << (t.coef >= 0 ? "+" : "") << t.coef << " " << (t.negated ? "~x" : "x") << t.var << " ";
    }
    out << c.rel << " " << c.rhs << " ;";
    return out.str();
}

} // namespace detail

inline std::string emit_opb(const ConstraintModel& m) {
    const Plane& pl = *m.plane;
    const int n = pl.size();
    const long long bigm = pl.q() + 1;

    std::vector<detail::OpbConstraint> cons;
    auto sum_terms = [&](const std::vector<int>& vars, int offset) {
        std::vector<detail::OpbTerm> ts;
        ts.reserve(vars.size());
        for (int v : vars) ts.push_back({1, v + offset + 1, false});
        return ts;
    };

    for (int l = 0; l < n; ++l) {
        const auto& pts = pl.points_on_line(l);
        int g = n + l + 1;
        // tangent -> sum == 1, split into >= 1 and <= 1 with big-M on ~g
        detail::OpbConstraint ge1{sum_terms(pts, 0), ">=", 1};
        ge1.terms.push_back({bigm, g, true});
        cons.push_back(ge1);
        detail::OpbConstraint le1;
        for (int p : pts) le1.terms.push_back({-1, p + 1, false});
        le1.terms.push_back({bigm, g, true});
        le1.rel = ">=";
        le1.rhs = -1;
        cons.push_back(le1);
        // non-tangent -> sum >= 2, big-M on g
        detail::OpbConstraint ge2{sum_terms(pts, 0), ">=", 2};
        ge2.terms.push_back({bigm, g, false});
        cons.push_back(ge2);
    }
    for (int p = 0; p < n; ++p) {
        const auto& lns = pl.lines_through_point(p);
        detail::OpbConstraint ge1{sum_terms(lns, n), ">=", 1};
        ge1.terms.push_back({bigm, p + 1, true});
        cons.push_back(ge1);
        detail::OpbConstraint le1;
        for (int l : lns) le1.terms.push_back({-1, n + l + 1, false});
        le1.terms.push_back({bigm, p + 1, true});
        le1.rel = ">=";
        le1.rhs = -1;
        cons.push_back(le1);
    }

    std::vector<int> all_points(n), all_lines(n);
    for (int i = 0; i < n; ++i) { all_points[i] = i; all_lines[i] = i; }
    if (m.size_min >= 0 && m.size_min == m.size_max) {
        cons.push_back({sum_terms(all_points, 0), "=", m.size_min});
        if (m.tangent_count_cut) cons.push_back({sum_terms(all_lines, n), "=", m.size_min});
    } else {
        if (m.size_min >= 0) cons.push_back({sum_terms(all_points, 0), ">=", m.size_min});
        if (m.size_max >= 0) {
            detail::OpbConstraint c;
            for (int p : all_points) c.terms.push_back({1, p + 1, true});
            c.rel = ">=";
            c.rhs = n - m.size_max;
            cons.push_back(c);
        }
    }

    for (int l = 0; l < n; ++l) {
        if (m.line_exact[l] >= 0)
            cons.push_back({sum_terms(pl.points_on_line(l), 0), "=", m.line_exact[l]});
        if (m.line_max[l] < pl.q() + 1) {
            detail::OpbConstraint c;
            for (int p : pl.points_on_line(l)) c.terms.push_back({1, p + 1, true});
            c.rel = ">=";
            c.rhs = pl.q() + 1 - m.line_max[l];
            cons.push_back(c);
        }
    }
    for (const auto& ec : m.extra_exact)
        cons.push_back({sum_terms(ec.points, 0), "=", ec.k});
    for (int p = 0; p < n; ++p)
        if (m.point_force[p] >= 0)
            cons.push_back({{{1, p + 1, false}}, "=", m.point_force[p]});
    for (int l = 0; l < n; ++l)
        if (m.tangent_force[l] >= 0 && m.line_exact[l] < 0)
            cons.push_back({{{1, n + l + 1, false}}, "=", m.tangent_force[l]});

    std::ostringstream out;
    out << "* #variable= " << 2 * n << " #constraint= " << cons.size() << "\n";
    out << "* blocking semioval model, PG(2," << pl.q() << ")\n";
    out << "* x1..x" << n << " : point variables, x" << n + 1 << "..x" << 2 * n
        << " : line tangency variables\n";
    for (int p = 0; p < n; ++p)
        out << "* var " << p + 1 << " = point " << triple_str(pl.point(p).c) << "\n";
    for (int l = 0; l < n; ++l)
        out << "* var " << n + l + 1 << " = tangent " << triple_str(pl.point(l).c, '[', ']') << "\n";
    for (const auto& c : cons) out << detail::opb_line(c) << "\n";
    return out.str();
}

namespace detail {

// bidirectional sequential unary counter: returns literals s[j-1] (1-based
// count j) meaning "at least j of lits are true", valid in both directions
class CnfBuilder {
public:
    explicit CnfBuilder(int base_vars) : next_var_(base_vars + 1) {}

    int new_var() { return next_var_++; }
    void clause(std::vector<int> lits) { clauses_.push_back(std::move(lits)); }

    std::vector<int> counter(const std::vector<int>& lits, int kmax) {
        const int nn = static_cast<int>(lits.size());
        kmax = std::min(kmax, nn);
        std::vector<std::vector<int>> s(nn + 1, std::vector<int>(kmax + 1, 0));
        for (int i = 1; i <= nn; ++i)
            for (int j = 1; j <= std::min(i, kmax); ++j) s[i][j] = new_var();
        for (int i = 1; i <= nn; ++i) {
            int x = lits[i - 1];
            for (int j = 1; j <= std::min(i, kmax); ++j) {
                int sij = s[i][j];
                if (j == 1) {
                    clause({-x, sij});
                    if (i > 1) {
                        clause({-s[i - 1][1], sij});
                        clause({-sij, s[i - 1][1], x});
                    } else {
                        clause({-sij, x});
                    }
                } else if (j <= i - 1) {
                    clause({-s[i - 1][j], sij});
                    clause({-s[i - 1][j - 1], -x, sij});
                    clause({-sij, s[i - 1][j], x});
                    clause({-sij, s[i - 1][j], s[i - 1][j - 1]});
                } else { // j == i: all of the first i must be true
                    clause({-s[i - 1][j - 1], -x, sij});
                    clause({-sij, x});
                    clause({-sij, s[i - 1][j - 1]});
                }
            }
        }
        std::vector<int> out(kmax);
        for (int j = 1; j <= kmax; ++j) out[j - 1] = s[nn][j];
        return out;
    }

    // "sum >= j" literal, or constants when out of range
    static int at_least(const std::vector<int>& c, int j) {
        return j <= 0 ? 0 : (j > static_cast<int>(c.size()) ? -1 : c[j - 1]);
        // 0 = true, -1 = false (callers special-case)
    }

    int var_count() const { return next_var_ - 1; }
    const std::vector<std::vector<int>>& clauses() const { return clauses_; }

private:
    int next_var_;
    std::vector<std::vector<int>> clauses_;
};

} // namespace detail

inline std::string emit_dimacs(const ConstraintModel& m) {
    const Plane& pl = *m.plane;
    const int n = pl.size();
    detail::CnfBuilder cnf(2 * n);

    auto pvar = [&](int p) { return p + 1; };
    auto tvar = [&](int l) { return n + l + 1; };

    // guarded bound helpers; guard = 0 means unconditional
    auto add_ge = [&](const std::vector<int>& counts, int k, int guard) {
        if (k <= 0) return;
        if (k > static_cast<int>(counts.size())) {
            if (guard) cnf.clause({-guard});
            else cnf.clause({});
            return;
        }
        std::vector<int> cl{counts[k - 1]};
        if (guard) cl.insert(cl.begin(), -guard);
        cnf.clause(cl);
    };
    auto add_le = [&](const std::vector<int>& counts, int k, int guard) {
        if (k >= static_cast<int>(counts.size())) return;
        std::vector<int> cl{-counts[k]};
        if (guard) cl.insert(cl.begin(), -guard);
        cnf.clause(cl);
    };

    for (int l = 0; l < n; ++l) {
        std::vector<int> lits;
        for (int p : pl.points_on_line(l)) lits.push_back(pvar(p));
        int kmax = 2;
        if (m.line_exact[l] >= 0) kmax = std::max(kmax, m.line_exact[l] + 1);
        if (m.line_max[l] < pl.q() + 1) kmax = std::max(kmax, m.line_max[l] + 1);
        kmax = std::min(kmax, static_cast<int>(lits.size()));
        auto counts = cnf.counter(lits, kmax);
        add_ge(counts, 1, tvar(l));  // tangent -> >= 1
        add_le(counts, 1, tvar(l));  // tangent -> <= 1
        add_ge(counts, 2, -tvar(l)); // non-tangent -> >= 2
        if (m.line_exact[l] >= 0) {
            add_ge(counts, m.line_exact[l], 0);
            add_le(counts, m.line_exact[l], 0);
        }
        if (m.line_max[l] < pl.q() + 1) add_le(counts, m.line_max[l], 0);
    }
    for (int p = 0; p < n; ++p) {
        std::vector<int> lits;
        for (int l : pl.lines_through_point(p)) lits.push_back(tvar(l));
        auto counts = cnf.counter(lits, 2);
        add_ge(counts, 1, pvar(p));
        add_le(counts, 1, pvar(p));
    }
    if (m.size_constrained()) {
        std::vector<int> lits(n);
        for (int p = 0; p < n; ++p) lits[p] = pvar(p);
        int hi = m.size_max >= 0 ? m.size_max : n;
        int lo = m.size_min >= 0 ? m.size_min : 0;
        auto counts = cnf.counter(lits, std::min(n, hi + 1));
        add_ge(counts, lo, 0);
        add_le(counts, hi, 0);
        if (m.tangent_count_cut) {
            std::vector<int> tl(n);
            for (int l = 0; l < n; ++l) tl[l] = tvar(l);
            auto tcounts = cnf.counter(tl, std::min(n, hi + 1));
            add_ge(tcounts, lo, 0);
            add_le(tcounts, hi, 0);
        }
    }
    for (const auto& ec : m.extra_exact) {
        std::vector<int> lits;
        for (int p : ec.points) lits.push_back(pvar(p));
        auto counts = cnf.counter(lits, std::min<int>(lits.size(), ec.k + 1));
        add_ge(counts, ec.k, 0);
        add_le(counts, ec.k, 0);
    }
    for (int p = 0; p < n; ++p)
        if (m.point_force[p] >= 0) cnf.clause({m.point_force[p] ? pvar(p) : -pvar(p)});
    for (int l = 0; l < n; ++l)
        if (m.tangent_force[l] >= 0) cnf.clause({m.tangent_force[l] ? tvar(l) : -tvar(l)});

    std::ostringstream out;
    for (int p = 0; p < n; ++p)
        out << "c var " << pvar(p) << " = point " << triple_str(pl.point(p).c) << "\n";
    for (int l = 0; l < n; ++l)
        out << "c var " << tvar(l) << " = tangent " << triple_str(pl.point(l).c, '[', ']') << "\n";
    out << "c auxiliary counter variables start at " << 2 * n + 1 << "\n";
    out << "p cnf " << cnf.var_count() << " " << cnf.clauses().size() << "\n";
    for (const auto& cl : cnf.clauses()) {
        for (int lit : cl) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

inline std::string export_model(const ConstraintModel& m, const std::string& format) {
    if (format == "opb") return emit_opb(m);
    if (format == "dimacs") return emit_dimacs(m);
    throw export_error("unsupported format '" + format + "' (use opb or dimacs)");
}

// Reads back the OPB shapes produced by emit_opb into a fresh model over an
// existing plane. Only those shapes are recognized.
inline ConstraintModel import_opb(const Plane& pl, const std::string& text) {
    const int n = pl.size();
    ConstraintModel m = build_base_model(pl);
    m.tangent_count_cut = false; // restored below if the export carried it

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '*') continue;
        std::istringstream ls(line);
        std::vector<detail::OpbTerm> terms;
        std::string tok, rel;
        long long rhs = 0;
        while (ls >> tok) {
            if (tok == ">=" || tok == "=") {
                rel = tok;
                ls >> rhs;
                break;
            }
            long long coef = std::stoll(tok);
            std::string v;
            ls >> v;
            bool negated = !v.empty() && v[0] == '~';
            int var = std::stoi(v.substr(negated ? 2 : 1));
            terms.push_back({coef, var, negated});
        }
        if (terms.empty()) throw export_error("bad OPB line: " + line);

        bool has_bigm = false;
        for (const auto& t : terms)
            if (std::llabs(t.coef) != 1) has_bigm = true;
        if (has_bigm) continue; // the three base families; plane already implies them

        if (rel == "=" && terms.size() == 1) {
            int var = terms[0].var;
            if (var <= n) force_point(m, var - 1, rhs == 1);
            else force_tangent(m, var - n - 1, rhs == 1);
            continue;
        }
        // unit-coefficient cardinality over homogeneous vars
        bool all_pos = true, all_neg_lits = true, points_only = true, lines_only = true;
        for (const auto& t : terms) {
            if (t.coef != 1) all_pos = false;
            if (!t.negated) all_neg_lits = false;
            if (t.var > n) points_only = false;
            else lines_only = false;
        }
        if (rel == "=" && all_pos && !all_neg_lits) {
            if (points_only && static_cast<int>(terms.size()) == n) { constrain_size(m, static_cast<int>(rhs)); continue; }
            if (lines_only && static_cast<int>(terms.size()) == n) { m.tangent_count_cut = true; continue; }
            if (points_only) {
                // a whole line's point set is an exact secant; any other
                // point set is a plain cardinality
                std::vector<int> pts;
                for (const auto& t : terms) pts.push_back(t.var - 1);
                std::sort(pts.begin(), pts.end());
                int ln = pl.join(pts[0], pts[1]);
                if (pl.points_on_line(ln) == pts) force_secant(m, ln, static_cast<int>(rhs));
                else add_exact_count(m, pts, static_cast<int>(rhs));
                continue;
            }
        }
        if (rel == ">=" && all_neg_lits && points_only) {
            if (static_cast<int>(terms.size()) == n) {
                // size upper bound window form
                int hi = n - static_cast<int>(rhs);
                int lo = m.size_min >= 0 ? m.size_min : 0;
                m.size_min = -1; m.size_max = -1;
                constrain_size_window(m, lo, hi);
                continue;
            }
            int first = terms[0].var - 1, second = terms[1].var - 1;
            limit_line_max(m, pl.join(first, second), static_cast<int>(terms.size() - rhs));
            continue;
        }
        if (rel == ">=" && all_pos && points_only && static_cast<int>(terms.size()) == n) {
            int hi = m.size_max >= 0 ? m.size_max : n;
            m.size_min = -1; m.size_max = -1;
            constrain_size_window(m, static_cast<int>(rhs), hi);
            continue;
        }
        throw export_error("unrecognized OPB constraint: " + line);
    }
    return m;
}

} // namespace semioval
