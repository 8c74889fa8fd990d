#include <catch2/catch_amalgamated.hpp>

#include "semioval/gf.hpp"

using namespace semioval;

TEST_CASE("field construction for the supported orders") {
    for (auto [p, k] : {std::pair{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {17, 1},
                        {19, 1}, {23, 1}, {29, 1}, {31, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5},
                        {3, 2}, {3, 3}, {5, 2}}) {
        Field f = field_make(p, k);
        REQUIRE(f.p() == p);
        REQUIRE(f.k() == k);
        int q = 1;
        for (int i = 0; i < k; ++i) q *= p;
        REQUIRE(f.q() == q);
    }
    CHECK(field_make(11, 1).q() == 11);
    CHECK(field_make(2, 1).q() == 2);
    CHECK(field_make(3, 2).q() == 9);
    CHECK(field_make(3, 2).reduction() == std::vector<int>{1, 0}); // x^2 + 1
}

TEST_CASE("field construction rejects bad input") {
    CHECK_THROWS_AS(field_make(4, 1), gf_error);   // not prime
    CHECK_THROWS_AS(field_make(9, 1), gf_error);
    CHECK_THROWS_AS(field_make(7, 2), gf_error);   // 49 > 32
    CHECK_THROWS_AS(field_make(2, 6), gf_error);
}

TEST_CASE("x^2 + 1 has no root mod 3") {
    for (int x = 0; x < 3; ++x) CHECK((x * x + 1) % 3 != 0);
}

TEST_CASE("GF(11) arithmetic") {
    Field f = field_make(11, 1);
    CHECK(f.mul(9, 4) == 3);
    CHECK(f.add(7, 5) == 1);
    CHECK(f.inv(9) == 5);
    CHECK(f.inv(1) == 1);
    CHECK(f.inv(4) == 3);
    CHECK_THROWS_AS(f.inv(0), gf_error);
}

TEST_CASE("GF(9) polynomial reduction: x*x = -1") {
    Field f = field_make(3, 2);
    // x encodes as 3 (digits 0,1); x^2 reduces to -1 = 2
    CHECK(f.mul(3, 3) == 2);
    // independent oracle: multiply digit polynomials and reduce by x^2+1
    auto poly_mul = [&](int a, int b) {
        int a0 = a % 3, a1 = a / 3, b0 = b % 3, b1 = b / 3;
        int c0 = a0 * b0, c1 = a0 * b1 + a1 * b0, c2 = a1 * b1;
        c0 = ((c0 - c2) % 3 + 3) % 3; // x^2 = -1
        c1 %= 3;
        return c0 + 3 * c1;
    };
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) CHECK(f.mul(a, b) == poly_mul(a, b));
}

TEST_CASE("field axioms hold over every supported field") {
    for (auto [p, k] : {std::pair{2, 1}, {3, 1}, {11, 1}, {31, 1}, {2, 2}, {2, 5}, {3, 2},
                        {3, 3}, {5, 2}}) {
        Field f = field_make(p, k);
        const int q = f.q();
        for (int a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            if (a != 0) CHECK(f.pow(a, q - 1) == 1); // multiplicative group order q-1
            for (int b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (int c = 0; c < q; ++c) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("elements from different fields never mix") {
    Field f11 = field_make(11, 1);
    Field f11b = field_make(11, 1);
    Field f13 = field_make(13, 1);
    FieldElement a{3, &f11}, b{5, &f11b}, c{5, &f13};
    CHECK(add(a, b).rep == 8); // same descriptor, distinct instances
    CHECK_THROWS_AS(add(a, c), gf_error);
    CHECK_THROWS_AS(mul(a, c), gf_error);
    CHECK(sub(a, b).rep == 9);
    CHECK(neg(a).rep == 8);
    CHECK(inv(b).rep == 9);
}
