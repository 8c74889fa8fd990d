#pragma once

// Point-set analysis: secant spectrum, blocking-set / semioval predicates,
// the size-25 spectrum identities for PG(2,11), and the lower-bound and
// secant-size-exclusion formulas for blocking semiovals.

#include <optional>
#include <set>
#include <vector>

#include "pointset.hpp"

namespace semioval {

struct analysis_error : std::runtime_error {
    explicit analysis_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SecantSpectrum {
    // x[i] = number of lines meeting the set in exactly i points, 0 <= i <= q+1
    std::vector<long long> x;
};

inline SecantSpectrum secant_spectrum(const PointSet& s) {
    const Plane& pl = s.plane();
    SecantSpectrum sp;
    sp.x.assign(pl.q() + 2, 0);
    for (int l = 0; l < pl.size(); ++l) ++sp.x[s.count_on_line(l)];
    return sp;
}

// all lines through p meeting s exactly once (p must be in s)
inline std::vector<int> tangent_lines(int p, const PointSet& s) {
    if (!s.contains(p)) throw analysis_error("tangent_lines: point not in set");
    std::vector<int> out;
    for (int l : s.plane().lines_through_point(p))
        if (s.count_on_line(l) == 1) out.push_back(l);
    return out;
}

inline bool is_blocking_set(const PointSet& s) {
    const Plane& pl = s.plane();
    for (int l = 0; l < pl.size(); ++l) {
        int c = s.count_on_line(l);
        if (c == 0 || c == pl.q() + 1) return false;
    }
    return true;
}

inline bool is_semioval(const PointSet& s) {
    if (s.empty()) return false;
    const Plane& pl = s.plane();
    for (int p = 0; p < pl.size(); ++p) {
        if (!s.contains(p)) continue;
        int tangents = 0;
        for (int l : pl.lines_through_point(p)) {
            if (s.count_on_line(l) == 1 && ++tangents > 1) break;
        }
        if (tangents != 1) return false;
    }
    return true;
}

inline bool is_blocking_semioval(const PointSet& s) {
    return is_blocking_set(s) && is_semioval(s);
}

// Residuals of the three secant-count identities that a 25-point blocking
// semioval with no k-secant for k >= 7 must satisfy in PG(2,11):
//   x2 +  x5 + 3*x6 = 123
//   x3 - 3*x5 - 8*x6 = -89
//   x4 + 3*x5 + 6*x6 =  74
// Zero residuals do not imply feasibility (negative x_i still zero out).
struct SpectrumResiduals {
    long long r1, r2, r3;
    bool all_zero() const { return r1 == 0 && r2 == 0 && r3 == 0; }
};

inline SpectrumResiduals spectrum_residual_eqs(const SecantSpectrum& sp, int n, int q) {
    if (q != 11 || n != 25)
        throw analysis_error("spectrum identities are instantiated for q=11, n=25 only");
    if (sp.x.size() != static_cast<size_t>(q + 2))
        throw analysis_error("spectrum has wrong length");
    const auto& x = sp.x;
    return {x[2] + x[5] + 3 * x[6] - 123,
            x[3] - 3 * x[5] - 8 * x[6] + 89,
            x[4] + 3 * x[5] + 6 * x[6] - 74};
}

struct X6Scan {
    long long min_x6;
    long long min_x4;
    long long feasible_count;
};

// Enumerate all nonnegative integer solutions of the three identities
// (x0 = 0, x1 = 25, x_i = 0 for i >= 7 assumed). x5 and x6 determine the
// rest, so the scan is a small double loop.
inline X6Scan scan_x6(int q = 11, int n = 25) {
    if (q != 11 || n != 25) throw analysis_error("x6 scan instantiated for q=11, n=25 only");
    X6Scan out{-1, -1, 0};
    for (long long x6 = 0; 3 * x6 <= 123; ++x6) {
        for (long long x5 = 0; x5 + 3 * x6 <= 123; ++x5) {
            long long x2 = 123 - x5 - 3 * x6;
            long long x3 = -89 + 3 * x5 + 8 * x6;
            long long x4 = 74 - 3 * x5 - 6 * x6;
            if (x2 < 0 || x3 < 0 || x4 < 0) continue;
            ++out.feasible_count;
            if (out.min_x6 < 0 || x6 < out.min_x6) out.min_x6 = x6;
            if (out.min_x4 < 0 || x4 < out.min_x4) out.min_x4 = x4;
        }
    }
    return out;
}

inline long long min_x6(int q = 11, int n = 25) { return scan_x6(q, n).min_x6; }

namespace detail {
inline long long isqrt_floor(long long v) {
    long long r = 0;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}
} // namespace detail

// Smallest integer n with n >= 2q + sqrt(2q - 47/4) - 1/2, i.e. the least n
// with 2n - 4q + 1 >= sqrt(8q - 47). Evaluated in integers (the bound's
// value is (4q - 1 + sqrt(8q - 47)) / 2) so ties like q = 7 come out exact.
inline int lower_bound_dover(int q) {
    long long d = 8LL * q - 47;
    if (d <= 0) throw analysis_error("dover bound needs 2q > 47/4");
    long long s = detail::isqrt_floor(d);
    long long num = 4LL * q - 1 + s;
    if (s * s == d) return static_cast<int>((num + 1) / 2); // exact sqrt: plain ceiling
    return static_cast<int>(num / 2 + 1);                   // irrational: strictly above num/2
}

inline int lower_bound_heger_takats(int q) {
    return static_cast<int>((9LL * q - 12 + 3) / 4); // ceil((9q-12)/4)
}

// Dover's secant-size bound: a blocking semioval in PG(2,q) with a
// (q-k)-secant, 1 <= k < q-1, has at least ceil(q(3k+4)/(k+2) - k) points.
inline int secant_size_bound(int q, int k) {
    if (k < 1 || k >= q - 1) throw analysis_error("secant size bound: k out of range");
    long long num = 1LL * q * (3 * k + 4) - 1LL * k * (k + 2);
    long long den = k + 2;
    return static_cast<int>((num + den - 1) / den);
}

// All secant sizes s in [2, q+1] ruled out for an n-point blocking semioval:
// s = q+1 always (no contained line), s = q for the (q,n) = (11,25) instance
// (no 11-secant there), and s = q-k whenever the secant-size bound exceeds n.
inline std::set<int> excluded_secant_sizes(int q, int n) {
    if (n < q + 1) throw analysis_error("excluded_secant_sizes: n below q+1");
    std::set<int> out;
    out.insert(q + 1);
    if (q == 11 && n == 25) out.insert(q);
    for (int k = 1; k < q - 1; ++k)
        if (secant_size_bound(q, k) > n) out.insert(q - k);
    return out;
}

// sizes excluded purely by the secant-size bound (what a bounds report lists
// alongside the structural no-line / no-q-secant facts)
inline std::set<int> excluded_by_secant_bound(int q, int n) {
    std::set<int> out;
    for (int k = 1; k < q - 1; ++k)
        if (secant_size_bound(q, k) > n) out.insert(q - k);
    return out;
}

struct BoundsReport {
    int q;
    std::optional<int> dover;  // absent when 2q <= 47/4
    int heger_takats;
    int best;                  // max of the applicable bounds
    std::set<int> excluded_secants; // by the secant-size bound, at n = best
    bool no_full_line = true;
    bool no_q_secant;          // the (11,25) fact
    bool ten_secant_unique;    // at most one 10-secant at (11,25)
};

inline BoundsReport bounds_report(int q) {
    BoundsReport r;
    r.q = q;
    if (8 * q - 47 > 0) r.dover = lower_bound_dover(q);
    r.heger_takats = lower_bound_heger_takats(q);
    r.best = std::max(r.dover.value_or(0), r.heger_takats);
    r.excluded_secants = excluded_by_secant_bound(q, r.best);
    r.no_q_secant = (q == 11 && r.best == 25);
    r.ten_secant_unique = (q == 11 && r.best == 25);
    return r;
}

} // namespace semioval
