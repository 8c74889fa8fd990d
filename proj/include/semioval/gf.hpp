#pragma once

// Arithmetic in GF(p^k) for small q = p^k <= 32, table-driven.
// Elements are canonical integers in [0,q): the base-p digits of the
// residue polynomial in the polynomial basis (constant digit first).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace semioval {

struct gf_error : std::runtime_error {
    explicit gf_error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Fixed reduction polynomials, ascending coefficients, leading 1 implied.
// Keeping these pinned (rather than searching at runtime) makes element
// encodings, and therefore all point/line indices, stable across builds.
inline std::vector<int> reduction_poly(int p, int k) {
    if (k == 1) return {};
    if (p == 2 && k == 2) return {1, 1};          // x^2 + x + 1
    if (p == 2 && k == 3) return {1, 1, 0};       // x^3 + x + 1
    if (p == 2 && k == 4) return {1, 1, 0, 0};    // x^4 + x + 1
    if (p == 2 && k == 5) return {1, 0, 1, 0, 0}; // x^5 + x^2 + 1
    if (p == 3 && k == 2) return {1, 0};          // x^2 + 1
    if (p == 3 && k == 3) return {1, 2, 0};       // x^3 + 2x + 1
    if (p == 5 && k == 2) return {2, 0};          // x^2 + 2
    throw gf_error("no reduction polynomial on file for GF(" +
                   std::to_string(p) + "^" + std::to_string(k) + ")");
}

} // namespace detail

class Field {
public:
    Field() = default;

    int p() const { return p_; }
    int k() const { return k_; }
    int q() const { return q_; }
    const std::vector<int>& reduction() const { return reduction_; }

    int add(int a, int b) const { return add_t_[a * q_ + b]; }
    int sub(int a, int b) const { return add_t_[a * q_ + neg_t_[b]]; }
    int mul(int a, int b) const { return mul_t_[a * q_ + b]; }
    int neg(int a) const { return neg_t_[a]; }
    int inv(int a) const {
        if (a == 0) throw gf_error("inverse of zero");
        return inv_t_[a];
    }
    int pow(int a, long long e) const {
        int r = 1;
        long long m = e % (q_ - 1);
        if (m < 0) m += q_ - 1;
        for (long long i = 0; i < m; ++i) r = mul(r, a);
        return r;
    }

    bool same(const Field& o) const {
        return p_ == o.p_ && k_ == o.k_ && reduction_ == o.reduction_;
    }

    static Field make(int p, int k);

private:
    int p_ = 0, k_ = 0, q_ = 0;
    std::vector<int> reduction_;
    std::vector<int16_t> add_t_, mul_t_, neg_t_, inv_t_;

    void check_irreducible() const;
    void build_tables();
};

// A field element tagged with its field, for the public surface; hot paths
// work on raw reps against a Field reference.
struct FieldElement {
    int rep = 0;
    const Field* field = nullptr;

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.rep == b.rep && a.field->same(*b.field);
    }
};

namespace detail {
inline void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (!a.field || !b.field || !a.field->same(*b.field))
        throw gf_error("elements from different fields");
}
} // namespace detail

inline FieldElement add(const FieldElement& a, const FieldElement& b) {
    detail::require_same_field(a, b);
    return {a.field->add(a.rep, b.rep), a.field};
}
inline FieldElement sub(const FieldElement& a, const FieldElement& b) {
    detail::require_same_field(a, b);
    return {a.field->sub(a.rep, b.rep), a.field};
}
inline FieldElement mul(const FieldElement& a, const FieldElement& b) {
    detail::require_same_field(a, b);
    return {a.field->mul(a.rep, b.rep), a.field};
}
inline FieldElement neg(const FieldElement& a) { return {a.field->neg(a.rep), a.field}; }
inline FieldElement inv(const FieldElement& a) { return {a.field->inv(a.rep), a.field}; }

inline Field Field::make(int p, int k) {
    if (!detail::is_prime(p)) throw gf_error("characteristic must be prime");
    if (k < 1 || k > 5) throw gf_error("unsupported extension degree");
    long long q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    if (q > 32) throw gf_error("field order above 32 unsupported");

    Field f;
    f.p_ = p;
    f.k_ = k;
    f.q_ = static_cast<int>(q);
    f.reduction_ = detail::reduction_poly(p, k);
    f.check_irreducible();
    f.build_tables();
    return f;
}

inline void Field::check_irreducible() const {
    if (k_ == 1) return;
    // full poly: reduction_ plus leading 1
    std::vector<int> f(reduction_);
    f.push_back(1);
    auto eval = [&](int x) {
        int acc = 0;
        for (int i = k_; i >= 0; --i) acc = (acc * x + f[i]) % p_;
        return acc;
    };
    for (int x = 0; x < p_; ++x)
        if (eval(x) == 0) throw gf_error("reduction polynomial has a root");
    if (k_ <= 3) return;
    // degrees 4 and 5 can still split as 2+2 or 2+3: rule out every monic
    // quadratic divisor by trial division over GF(p)
    for (int c1 = 0; c1 < p_; ++c1) {
        for (int c0 = 0; c0 < p_; ++c0) {
            std::vector<int> r(f);
            for (int d = k_; d >= 2; --d) {
                int lead = r[d] % p_;
                if (lead == 0) continue;
                // r -= lead * x^(d-2) * (x^2 + c1 x + c0)
                r[d] = 0;
                r[d - 1] = ((r[d - 1] - lead * c1) % p_ + p_) % p_;
                r[d - 2] = ((r[d - 2] - lead * c0) % p_ + p_) % p_;
            }
            if (r[0] % p_ == 0 && r[1] % p_ == 0)
                throw gf_error("reduction polynomial has a quadratic factor");
        }
    }
}

inline void Field::build_tables() {
    neg_t_.assign(q_, 0);
    add_t_.assign(q_ * q_, 0);
    mul_t_.assign(q_ * q_, 0);
    inv_t_.assign(q_, 0);

    auto digits = [&](int r) {
        std::vector<int> d(k_);
        for (int i = 0; i < k_; ++i) { d[i] = r % p_; r /= p_; }
        return d;
    };
    auto encode = [&](const std::vector<int>& d) {
        int r = 0;
        for (int i = k_ - 1; i >= 0; --i) r = r * p_ + d[i];
        return r;
    };

    for (int a = 0; a < q_; ++a) {
        auto da = digits(a);
        for (auto& x : da) x = (p_ - x) % p_;
        neg_t_[a] = static_cast<int16_t>(encode(da));
    }
    for (int a = 0; a < q_; ++a) {
        auto da = digits(a);
        for (int b = 0; b < q_; ++b) {
            auto db = digits(b);
            std::vector<int> s(k_);
            for (int i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
            add_t_[a * q_ + b] = static_cast<int16_t>(encode(s));
        }
    }
    for (int a = 0; a < q_; ++a) {
        auto da = digits(a);
        for (int b = 0; b < q_; ++b) {
            auto db = digits(b);
            std::vector<int> prod(2 * k_ - 1, 0);
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < k_; ++j)
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            // reduce by x^k = -reduction_
            for (int d = 2 * k_ - 2; d >= k_; --d) {
                int c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                for (int i = 0; i < k_; ++i)
                    prod[d - k_ + i] = ((prod[d - k_ + i] - c * reduction_[i]) % p_ + p_) % p_;
            }
            prod.resize(k_);
            mul_t_[a * q_ + b] = static_cast<int16_t>(encode(prod));
        }
    }
    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul_t_[a * q_ + b] == 1) { inv_t_[a] = static_cast<int16_t>(b); break; }
    for (int a = 1; a < q_; ++a)
        if (inv_t_[a] == 0) throw gf_error("field table construction failed");
}

inline Field field_make(int p, int k) { return Field::make(p, k); }

} // namespace semioval
