#pragma once

// Collineations of PG(2,q): elements of PGL(3,q) acting on points and lines,
// frame-based construction (fundamental theorem of projective geometry),
// stabilizer and fixing-subgroup computation, and orbit enumeration.
//
// All groups handled here are small enough to store as explicit element
// lists; there is no generator/Schreier-Sims machinery.

#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_set>
#include <vector>

#include "plane.hpp"
#include "pointset.hpp"

namespace semioval {

struct group_error : std::runtime_error {
    explicit group_error(const std::string& msg) : std::runtime_error(msg) {}
};

// 3x3 invertible matrix over GF(q), row-major, normalized so the first
// nonzero entry is 1; with that normalization projective equality is plain
// array equality.
struct Collineation {
    std::array<int, 9> m{};
    friend bool operator==(const Collineation& a, const Collineation& b) { return a.m == b.m; }
    friend bool operator<(const Collineation& a, const Collineation& b) { return a.m < b.m; }
};

namespace detail {

inline uint64_t pack_matrix(const Collineation& g) {
    uint64_t k = 0;
    for (int v : g.m) k = (k << 5) | static_cast<uint64_t>(v);
    return k; // 9 entries x 5 bits, q <= 32
}

inline int det3(const Field& f, const std::array<int, 9>& m) {
    int a = f.mul(m[0], f.sub(f.mul(m[4], m[8]), f.mul(m[5], m[7])));
    int b = f.mul(m[1], f.sub(f.mul(m[3], m[8]), f.mul(m[5], m[6])));
    int c = f.mul(m[2], f.sub(f.mul(m[3], m[7]), f.mul(m[4], m[6])));
    return f.add(f.sub(a, b), c);
}

} // namespace detail

inline Collineation normalize(const Field& f, std::array<int, 9> m) {
    int lead = 0;
    for (int v : m)
        if (v != 0) { lead = v; break; }
    if (lead == 0) throw group_error("zero matrix");
    int s = f.inv(lead);
    for (auto& v : m) v = f.mul(s, v);
    return Collineation{m};
}

inline Collineation identity_collineation() {
    return Collineation{{1, 0, 0, 0, 1, 0, 0, 0, 1}};
}

inline Collineation diag_collineation(const Field& f, int a, int b, int c) {
    return normalize(f, {a, 0, 0, 0, b, 0, 0, 0, c});
}

inline Collineation compose(const Field& f, const Collineation& g, const Collineation& h) {
    std::array<int, 9> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int acc = 0;
            for (int k = 0; k < 3; ++k)
                acc = f.add(acc, f.mul(g.m[i * 3 + k], h.m[k * 3 + j]));
            r[i * 3 + j] = acc;
        }
    return normalize(f, r);
}

inline Collineation inverse(const Field& f, const Collineation& g) {
    const auto& m = g.m;
    if (detail::det3(f, m) == 0) throw group_error("singular matrix");
    std::array<int, 9> adj{};
    auto co = [&](int r0, int c0, int r1, int c1) {
        return f.sub(f.mul(m[r0 * 3 + c0], m[r1 * 3 + c1]), f.mul(m[r0 * 3 + c1], m[r1 * 3 + c0]));
    };
    adj[0] = co(1, 1, 2, 2); adj[1] = f.neg(co(0, 1, 2, 2)); adj[2] = co(0, 1, 1, 2);
    adj[3] = f.neg(co(1, 0, 2, 2)); adj[4] = co(0, 0, 2, 2); adj[5] = f.neg(co(0, 0, 1, 2));
    adj[6] = co(1, 0, 2, 1); adj[7] = f.neg(co(0, 0, 2, 1)); adj[8] = co(0, 0, 1, 1);
    return normalize(f, adj);
}

inline Triple apply_to_triple(const Field& f, const Collineation& g, const Triple& p) {
    Triple r{};
    for (int i = 0; i < 3; ++i)
        r[i] = f.add(f.mul(g.m[i * 3 + 0], p[0]),
                     f.add(f.mul(g.m[i * 3 + 1], p[1]), f.mul(g.m[i * 3 + 2], p[2])));
    return r;
}

inline int apply_point(const Plane& pl, const Collineation& g, int pt) {
    return pl.index_of(apply_to_triple(pl.field(), g, pl.point(pt).c));
}

// lines transform by the inverse on the right: l' = l g^{-1}
inline int apply_line(const Plane& pl, const Collineation& g, int ln) {
    const Field& f = pl.field();
    Collineation gi = inverse(f, g);
    const Triple& l = pl.point(ln).c;
    Triple r{};
    for (int j = 0; j < 3; ++j)
        r[j] = f.add(f.mul(l[0], gi.m[0 * 3 + j]),
                     f.add(f.mul(l[1], gi.m[1 * 3 + j]), f.mul(l[2], gi.m[2 * 3 + j])));
    return pl.index_of(r);
}

inline ProjPoint apply_point(const Plane& pl, const Collineation& g, const ProjPoint& p) {
    return pl.point(apply_point(pl, g, pl.index_of(p.c)));
}
inline ProjLine apply_line(const Plane& pl, const Collineation& g, const ProjLine& l) {
    return pl.line(apply_line(pl, g, pl.index_of(l.c)));
}

inline bool collinear(const Plane& pl, int a, int b, int c) {
    return pl.incident(c, pl.join(a, b));
}

inline bool general_position(const Plane& pl, const std::array<int, 4>& pts) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (pts[i] == pts[j]) return false;
            for (int k = j + 1; k < 4; ++k)
                if (collinear(pl, pts[i], pts[j], pts[k])) return false;
        }
    return true;
}

// The unique collineation mapping the standard frame
// (1,0,0),(0,1,0),(0,0,1),(1,1,1) to the given quadruple in order.
inline Collineation from_standard_frame(const Plane& pl, const std::array<int, 4>& img) {
    if (!general_position(pl, img)) throw group_error("degenerate frame image");
    const Field& f = pl.field();
    // solve [P1 P2 P3] lambda = P4 by Cramer's rule; columns then scale
    std::array<Triple, 4> p;
    for (int i = 0; i < 4; ++i) p[i] = pl.point(img[i]).c;
    std::array<int, 9> a{p[0][0], p[1][0], p[2][0],
                         p[0][1], p[1][1], p[2][1],
                         p[0][2], p[1][2], p[2][2]};
    int d = detail::det3(f, a);
    if (d == 0) throw group_error("degenerate frame image");
    int dinv = f.inv(d);
    std::array<int, 3> lambda{};
    for (int col = 0; col < 3; ++col) {
        std::array<int, 9> ac = a;
        for (int row = 0; row < 3; ++row) ac[row * 3 + col] = p[3][row];
        lambda[col] = f.mul(detail::det3(f, ac), dinv);
        if (lambda[col] == 0) throw group_error("degenerate frame image");
    }
    std::array<int, 9> m{};
    for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col)
            m[row * 3 + col] = f.mul(lambda[col], p[col][row]);
    return normalize(f, m);
}

// collineation carrying one frame onto another, both in general position
inline Collineation from_frame(const Plane& pl, const std::array<int, 4>& from,
                               const std::array<int, 4>& to) {
    Collineation a = from_standard_frame(pl, from);
    Collineation b = from_standard_frame(pl, to);
    return compose(pl.field(), b, inverse(pl.field(), a));
}

inline Collineation from_frame(const Plane& pl, const std::array<ProjPoint, 4>& img) {
    std::array<int, 4> idx{};
    for (int i = 0; i < 4; ++i) idx[i] = pl.index_of(img[i].c);
    return from_standard_frame(pl, idx);
}

// full point permutation induced by g, indexed by point index
inline std::vector<int> point_perm(const Plane& pl, const Collineation& g) {
    std::vector<int> perm(pl.size());
    for (int p = 0; p < pl.size(); ++p) perm[p] = apply_point(pl, g, p);
    return perm;
}

inline std::vector<int> line_perm(const Plane& pl, const Collineation& g) {
    const Field& f = pl.field();
    Collineation gi = inverse(f, g);
    std::vector<int> perm(pl.size());
    for (int l = 0; l < pl.size(); ++l) {
        const Triple& c = pl.point(l).c;
        Triple r{};
        for (int j = 0; j < 3; ++j)
            r[j] = f.add(f.mul(c[0], gi.m[0 * 3 + j]),
                         f.add(f.mul(c[1], gi.m[1 * 3 + j]), f.mul(c[2], gi.m[2 * 3 + j])));
        perm[l] = pl.index_of(r);
    }
    return perm;
}

class GroupSet {
public:
    GroupSet() = default;
    // `parametrized`: the list is known to be a group by construction and
    // closure verification is skipped (only identity membership is checked)
    GroupSet(const Plane& pl, std::vector<Collineation> elems, bool parametrized = false)
        : elems_(std::move(elems)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        verify(pl, parametrized);
    }

    const std::vector<Collineation>& elements() const { return elems_; }
    size_t size() const { return elems_.size(); }
    bool contains(const Collineation& g) const {
        return std::binary_search(elems_.begin(), elems_.end(), g);
    }

private:
    std::vector<Collineation> elems_;

    void verify(const Plane& pl, bool parametrized) const {
        if (elems_.empty()) throw group_error("empty group");
        if (!contains(identity_collineation())) throw group_error("group misses identity");
        const Field& f = pl.field();
        for (const auto& g : elems_)
            if (!contains(inverse(f, g))) throw group_error("group not closed under inverse");
        if (parametrized || elems_.size() > 5000) return; // asserted-by-construction above this
        for (const auto& g : elems_)
            for (const auto& h : elems_)
                if (!contains(compose(f, g, h))) throw group_error("group not closed");
    }
};

// every element of PGL(3,q); feasible (and permitted) only for small q
inline std::vector<Collineation> enumerate_pgl(const Plane& pl) {
    const Field& f = pl.field();
    const int q = f.q();
    long long order = 1LL * (1LL * q * q * q - 1) * (1LL * q * q * q - q) * (1LL * q * q * q - 1LL * q * q) / (q - 1);
    if (order > 1000000) throw group_error("PGL(3,q) too large to enumerate");
    std::vector<Collineation> out;
    out.reserve(order);
    std::array<int, 9> m{};
    // odometer over q^9 matrices, keeping normalized invertible ones
    long long total = 1;
    for (int i = 0; i < 9; ++i) total *= q;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 8; i >= 0; --i) { m[i] = static_cast<int>(c % q); c /= q; }
        int lead = 0;
        for (int v : m)
            if (v != 0) { lead = v; break; }
        if (lead != 1) continue;
        if (detail::det3(f, m) == 0) continue;
        out.push_back(Collineation{m});
    }
    if (static_cast<long long>(out.size()) != order) throw group_error("PGL enumeration miscount");
    return out;
}

inline bool fixes_set(const Plane& pl, const Collineation& g, const std::vector<int>& pts) {
    std::vector<char> member(pl.size(), 0);
    for (int p : pts) member[p] = 1;
    for (int p : pts)
        if (!member[apply_point(pl, g, p)]) return false;
    return true;
}

// All g in PGL(3,q) with g(S) = S. When S contains a frame, candidates are
// the collineations carrying one fixed frame of S onto each ordered
// general-position quadruple of S; otherwise falls back to filtering the
// whole of PGL(3,q) (small q only).
inline GroupSet stabilizer_of_set(const PointSet& s, const Plane& pl) {
    std::vector<int> pts = s.to_indices();
    std::vector<char> member(pl.size(), 0);
    for (int p : pts) member[p] = 1;

    std::array<int, 4> frame{};
    bool have_frame = false;
    const int n = static_cast<int>(pts.size());
    for (int a = 0; a < n && !have_frame; ++a)
        for (int b = a + 1; b < n && !have_frame; ++b)
            for (int c = b + 1; c < n && !have_frame; ++c) {
                if (collinear(pl, pts[a], pts[b], pts[c])) continue;
                for (int d = c + 1; d < n; ++d) {
                    frame = {pts[a], pts[b], pts[c], pts[d]};
                    if (general_position(pl, frame)) { have_frame = true; break; }
                }
            }

    std::vector<Collineation> found;
    auto keep_if_stabilizing = [&](const Collineation& g) {
        for (int p : pts)
            if (!member[apply_point(pl, g, p)]) return;
        found.push_back(g);
    };

    if (!have_frame) {
        for (const auto& g : enumerate_pgl(pl)) keep_if_stabilizing(g);
        return GroupSet(pl, std::move(found));
    }

    Collineation base_inv = inverse(pl.field(), from_standard_frame(pl, frame));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            for (int c = 0; c < n; ++c) {
                if (c == a || c == b) continue;
                if (collinear(pl, pts[a], pts[b], pts[c])) continue;
                for (int d = 0; d < n; ++d) {
                    if (d == a || d == b || d == c) continue;
                    std::array<int, 4> img{pts[a], pts[b], pts[c], pts[d]};
                    if (!general_position(pl, img)) continue;
                    Collineation g = compose(pl.field(), from_standard_frame(pl, img), base_inv);
                    keep_if_stabilizing(g);
                }
            }
        }
    return GroupSet(pl, std::move(found));
}

// Constraints for subgroup_fixing: points fixed individually, point sets
// fixed setwise, lines fixed setwise.
struct FixSpec {
    std::vector<int> pointwise;
    std::vector<std::vector<int>> setwise_point_sets;
    std::vector<int> setwise_lines;
};

namespace detail {

inline bool satisfies_fixspec(const Plane& pl, const Collineation& g, const FixSpec& spec) {
    for (int p : spec.pointwise)
        if (apply_point(pl, g, p) != p) return false;
    for (const auto& set : spec.setwise_point_sets)
        if (!fixes_set(pl, g, set)) return false;
    for (int l : spec.setwise_lines)
        if (!fixes_set(pl, g, pl.points_on_line(l))) return false;
    return true;
}

// parametrized subgroup fixing two given points individually, conjugated
// from the stabilizer of (1,0,0) and (0,1,0); order (q-1)^2 q^2
inline std::vector<Collineation> fix_two_points_family(const Plane& pl, int p1, int p2) {
    const Field& f = pl.field();
    const int q = f.q();
    // complete (p1, p2) to a frame
    std::array<int, 4> frame{p1, p2, -1, -1};
    for (int c = 0; c < pl.size() && frame[3] < 0; ++c) {
        if (c == p1 || c == p2 || collinear(pl, p1, p2, c)) continue;
        for (int d = c + 1; d < pl.size(); ++d) {
            if (d == p1 || d == p2) continue;
            std::array<int, 4> cand{p1, p2, c, d};
            if (general_position(pl, cand)) { frame = cand; break; }
        }
    }
    if (frame[3] < 0) throw group_error("cannot frame the fixed points");
    Collineation h = from_standard_frame(pl, frame);
    Collineation hi = inverse(f, h);

    std::vector<Collineation> out;
    out.reserve(static_cast<size_t>(q - 1) * (q - 1) * q * q);
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    Collineation base = normalize(f, {a, 0, c, 0, b, d, 0, 0, 1});
                    out.push_back(compose(f, h, compose(f, base, hi)));
                }
    return out;
}

} // namespace detail

// The subgroup of PGL(3,q) satisfying a FixSpec. Uses a frame inside the
// constrained points when one exists (image choices are then finite and
// small); otherwise filters the parametrized two-point stabilizer family or,
// as a last resort, all of PGL(3,q).
inline GroupSet subgroup_fixing(const Plane& pl, const FixSpec& spec) {
    // constrained points with their allowed image lists
    std::vector<int> dom;
    std::vector<std::vector<int>> allowed;
    for (int p : spec.pointwise) { dom.push_back(p); allowed.push_back({p}); }
    for (const auto& set : spec.setwise_point_sets)
        for (int p : set) { dom.push_back(p); allowed.push_back(set); }

    const int m = static_cast<int>(dom.size());
    std::array<int, 4> sel{};
    bool have_frame = false;
    long long combos = 0;
    for (int a = 0; a < m && !have_frame; ++a)
        for (int b = a + 1; b < m && !have_frame; ++b)
            for (int c = b + 1; c < m && !have_frame; ++c)
                for (int d = c + 1; d < m; ++d) {
                    std::array<int, 4> cand{dom[a], dom[b], dom[c], dom[d]};
                    if (!general_position(pl, cand)) continue;
                    sel = {a, b, c, d};
                    combos = 1LL * allowed[a].size() * allowed[b].size() *
                             allowed[c].size() * allowed[d].size();
                    have_frame = true;
                    break;
                }

    std::vector<Collineation> found;
    if (have_frame && combos <= 1000000) {
        std::array<int, 4> frame{dom[sel[0]], dom[sel[1]], dom[sel[2]], dom[sel[3]]};
        Collineation base_inv = inverse(pl.field(), from_standard_frame(pl, frame));
        for (int ia : allowed[sel[0]])
            for (int ib : allowed[sel[1]])
                for (int ic : allowed[sel[2]])
                    for (int id : allowed[sel[3]]) {
                        std::array<int, 4> img{ia, ib, ic, id};
                        if (!general_position(pl, img)) continue;
                        Collineation g = compose(pl.field(), from_standard_frame(pl, img), base_inv);
                        if (detail::satisfies_fixspec(pl, g, spec)) found.push_back(g);
                    }
        return GroupSet(pl, std::move(found));
    }

    if (spec.pointwise.size() >= 2) {
        for (const auto& g : detail::fix_two_points_family(pl, spec.pointwise[0], spec.pointwise[1]))
            if (detail::satisfies_fixspec(pl, g, spec)) found.push_back(g);
        return GroupSet(pl, std::move(found));
    }

    for (const auto& g : enumerate_pgl(pl))
        if (detail::satisfies_fixspec(pl, g, spec)) found.push_back(g);
    return GroupSet(pl, std::move(found));
}

// Orbit partition of `domain` under the permutations `perms` (images by
// element). Each orbit is sorted ascending; orbits are ordered by their
// minimum element, which serves as the canonical representative.
inline std::vector<std::vector<int>> orbits_under(const std::vector<int>& domain,
                                                  const std::vector<std::vector<int>>& perms) {
    std::vector<std::vector<int>> out;
    std::unordered_set<int> seen;
    std::vector<int> sorted_domain(domain);
    std::sort(sorted_domain.begin(), sorted_domain.end());
    for (int start : sorted_domain) {
        if (seen.count(start)) continue;
        std::vector<int> orbit{start};
        seen.insert(start);
        for (size_t i = 0; i < orbit.size(); ++i)
            for (const auto& perm : perms) {
                int img = perm[orbit[i]];
                if (seen.insert(img).second) orbit.push_back(img);
            }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

inline std::vector<std::vector<int>> point_perms(const Plane& pl, const GroupSet& g) {
    std::vector<std::vector<int>> perms;
    perms.reserve(g.size());
    for (const auto& e : g.elements()) perms.push_back(point_perm(pl, e));
    return perms;
}

inline std::vector<std::vector<int>> line_perms(const Plane& pl, const GroupSet& g) {
    std::vector<std::vector<int>> perms;
    perms.reserve(g.size());
    for (const auto& e : g.elements()) perms.push_back(line_perm(pl, e));
    return perms;
}

inline std::vector<std::vector<int>> point_orbits(const Plane& pl, const GroupSet& g,
                                                  const std::vector<int>& domain) {
    return orbits_under(domain, point_perms(pl, g));
}

// orbits of unordered pairs drawn from `domain` under the given permutations
inline std::vector<std::vector<std::pair<int, int>>> pair_orbits(
    const std::vector<int>& domain, const std::vector<std::vector<int>>& perms) {
    std::vector<std::pair<int, int>> all;
    for (size_t i = 0; i < domain.size(); ++i)
        for (size_t j = i + 1; j < domain.size(); ++j)
            all.emplace_back(std::min(domain[i], domain[j]), std::max(domain[i], domain[j]));
    std::sort(all.begin(), all.end());

    std::vector<std::vector<std::pair<int, int>>> out;
    std::set<std::pair<int, int>> seen;
    for (const auto& start : all) {
        if (seen.count(start)) continue;
        std::vector<std::pair<int, int>> orbit{start};
        seen.insert(start);
        for (size_t i = 0; i < orbit.size(); ++i)
            for (const auto& perm : perms) {
                int a = perm[orbit[i].first], b = perm[orbit[i].second];
                auto img = std::make_pair(std::min(a, b), std::max(a, b));
                if (seen.insert(img).second) orbit.push_back(img);
            }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

// points fixed by every element of the group
inline std::vector<int> fixed_points(const Plane& pl, const GroupSet& g) {
    std::vector<int> out;
    for (int p = 0; p < pl.size(); ++p) {
        bool fixed = true;
        for (const auto& e : g.elements())
            if (apply_point(pl, e, p) != p) { fixed = false; break; }
        if (fixed) out.push_back(p);
    }
    return out;
}

} // namespace semioval
