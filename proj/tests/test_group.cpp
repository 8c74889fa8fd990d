#include <catch2/catch_amalgamated.hpp>

#include "semioval/group.hpp"

#include "oracles.hpp"

using namespace semioval;

namespace {
Plane& plane11() {
    static Plane pl(field_make(11, 1));
    return pl;
}
} // namespace

TEST_CASE("point action basics") {
    Plane& pl = plane11();
    Collineation d = diag_collineation(pl.field(), 1, 9, 4);
    CHECK(apply_point(pl, d, pl.point_index(1, 0, 0)) == pl.point_index(1, 0, 0));
    CHECK(apply_point(pl, d, pl.point_index(0, 1, 0)) == pl.point_index(0, 1, 0));
    CHECK(apply_point(pl, d, pl.point_index(0, 0, 1)) == pl.point_index(0, 0, 1));
    CHECK(apply_point(pl, d, pl.point_index(1, 1, 1)) == pl.point_index(1, 9, 4));
    Collineation id = identity_collineation();
    for (int p = 0; p < pl.size(); ++p) CHECK(apply_point(pl, id, p) == p);
}

TEST_CASE("line action preserves incidence") {
    Plane& pl = plane11();
    Collineation d = diag_collineation(pl.field(), 1, 9, 4);
    CHECK(apply_line(pl, identity_collineation(), pl.line_index(0, 0, 1)) ==
          pl.line_index(0, 0, 1));
    CHECK(apply_line(pl, d, pl.line_index(0, 0, 1)) == pl.line_index(0, 0, 1));
    // exhaustive incidence preservation for a small sample of g
    std::vector<Collineation> sample{
        d, compose(pl.field(), d, d),
        from_standard_frame(pl, {pl.point_index(1, 1, 0), pl.point_index(0, 1, 5),
                                 pl.point_index(1, 0, 3), pl.point_index(1, 7, 2)})};
    for (const auto& g : sample) {
        auto pperm = point_perm(pl, g);
        auto lperm = line_perm(pl, g);
        for (int l = 0; l < pl.size(); ++l)
            for (int p : pl.points_on_line(l)) REQUIRE(pl.incident(pperm[p], lperm[l]));
    }
}

TEST_CASE("action is a homomorphism") {
    Plane& pl = plane11();
    std::vector<Collineation> gs{
        diag_collineation(pl.field(), 1, 9, 4),
        from_standard_frame(pl, {pl.point_index(0, 1, 0), pl.point_index(1, 0, 0),
                                 pl.point_index(1, 1, 1), pl.point_index(1, 2, 3)}),
        from_standard_frame(pl, {pl.point_index(1, 4, 0), pl.point_index(0, 1, 2),
                                 pl.point_index(1, 0, 7), pl.point_index(1, 2, 6)})};
    for (const auto& g : gs)
        for (const auto& h : gs) {
            Collineation gh = compose(pl.field(), g, h);
            for (int p = 0; p < pl.size(); p += 7)
                CHECK(apply_point(pl, gh, p) == apply_point(pl, g, apply_point(pl, h, p)));
        }
}

TEST_CASE("from_frame") {
    Plane& pl = plane11();
    std::array<int, 4> std_frame{pl.point_index(1, 0, 0), pl.point_index(0, 1, 0),
                                 pl.point_index(0, 0, 1), pl.point_index(1, 1, 1)};
    CHECK(from_standard_frame(pl, std_frame) == identity_collineation());
    CHECK(from_standard_frame(pl, {pl.point_index(1, 0, 0), pl.point_index(0, 1, 0),
                                   pl.point_index(0, 0, 1), pl.point_index(1, 9, 4)}) ==
          diag_collineation(pl.field(), 1, 9, 4));
    // round trip on an arbitrary valid quadruple
    std::array<int, 4> img{pl.point_index(1, 4, 0), pl.point_index(0, 1, 2),
                           pl.point_index(1, 0, 7), pl.point_index(1, 3, 1)};
    REQUIRE(general_position(pl, img));
    Collineation g = from_standard_frame(pl, img);
    for (int i = 0; i < 4; ++i) CHECK(apply_point(pl, g, std_frame[i]) == img[i]);
    // degenerate quadruple: three collinear points
    CHECK_THROWS_AS(from_standard_frame(pl, {pl.point_index(1, 0, 0), pl.point_index(0, 1, 0),
                                             pl.point_index(1, 1, 0), pl.point_index(1, 1, 1)}),
                    group_error);
}

TEST_CASE("inverse and composition") {
    Plane& pl = plane11();
    Collineation g = from_standard_frame(pl, {pl.point_index(1, 5, 2), pl.point_index(0, 1, 3),
                                              pl.point_index(1, 0, 1), pl.point_index(1, 2, 2)});
    CHECK(compose(pl.field(), g, inverse(pl.field(), g)) == identity_collineation());
}

TEST_CASE("subgroup fixing two points has order 12100") {
    Plane& pl = plane11();
    GroupSet g = subgroup_fixing(
        pl, FixSpec{{pl.point_index(1, 0, 0), pl.point_index(0, 1, 0)}, {}, {}});
    CHECK(g.size() == 12100); // (q-1)^2 q^2
    // full closure check of the parametrized family
    std::set<Collineation> members(g.elements().begin(), g.elements().end());
    int stride = 0;
    for (const auto& x : g.elements()) {
        if (++stride % 97 != 0) continue; // sampled pairs; full product is 146M compositions
        for (const auto& y : g.elements())
            REQUIRE(members.count(compose(pl.field(), x, y)) == 1);
    }
    for (const auto& x : g.elements()) REQUIRE(members.count(inverse(pl.field(), x)) == 1);
}

TEST_CASE("adding a setwise line cuts the two-point stabilizer to 1100") {
    Plane& pl = plane11();
    GroupSet g = subgroup_fixing(pl, FixSpec{{pl.point_index(1, 0, 0), pl.point_index(0, 1, 0)},
                                             {},
                                             {pl.line_index(0, 1, 0)}});
    CHECK(g.size() == 1100);
    for (const auto& e : g.elements())
        REQUIRE(fixes_set(pl, e, pl.points_on_line(pl.line_index(0, 1, 0))));
}

TEST_CASE("the order-2 configuration stabilizer") {
    Plane& pl = plane11();
    GroupSet g = subgroup_fixing(
        pl, FixSpec{{pl.point_index(1, 0, 0), pl.point_index(1, 1, 1)},
                    {{pl.point_index(0, 1, 0), pl.point_index(0, 0, 1)}},
                    {}});
    CHECK(g.size() == 2);
}

TEST_CASE("fixing a full frame pointwise is trivial") {
    Plane& pl = plane11();
    GroupSet g = subgroup_fixing(
        pl, FixSpec{{pl.point_index(1, 0, 0), pl.point_index(0, 1, 0), pl.point_index(0, 0, 1),
                     pl.point_index(1, 1, 1)},
                    {},
                    {}});
    CHECK(g.size() == 1);
}

TEST_CASE("the order-8 configuration stabilizer") {
    Plane& pl = plane11();
    std::vector<int> qr{pl.point_index(1, 1, 0), pl.point_index(1, 0, 1)};
    std::vector<int> frame{pl.point_index(1, 0, 0), pl.point_index(0, 1, 0),
                           pl.point_index(0, 0, 1), pl.point_index(1, 1, 1)};
    GroupSet g = subgroup_fixing(pl, FixSpec{{}, {qr, frame}, {}});
    CHECK(g.size() == 8);
    for (const auto& e : g.elements()) {
        CHECK(fixes_set(pl, e, qr));
        CHECK(fixes_set(pl, e, frame));
    }
}

TEST_CASE("stabilizer of the full plane is PGL(3,2)") {
    Plane pl(field_make(2, 1));
    PointSet all(pl);
    for (int p = 0; p < pl.size(); ++p) all.add(p);
    GroupSet g = stabilizer_of_set(all, pl);
    CHECK(g.size() == 168);
}

TEST_CASE("stabilizer of a line's point set, q=3") {
    Plane pl(field_make(3, 1));
    PointSet s(pl);
    for (int p : pl.points_on_line(0)) s.add(p);
    GroupSet g = stabilizer_of_set(s, pl); // no frame inside: full PGL filter
    for (const auto& e : g.elements()) REQUIRE(fixes_set(pl, e, pl.points_on_line(0)));
    // closure comes with GroupSet construction; order sanity only
    CHECK(g.size() > 1);
    CHECK(5616 % g.size() == 0);
}

TEST_CASE("orbit partitions") {
    Plane& pl = plane11();
    Collineation d = diag_collineation(pl.field(), 1, 9, 4);
    std::vector<Collineation> elems{identity_collineation()};
    Collineation acc = d;
    while (!(acc == identity_collineation())) {
        elems.push_back(acc);
        acc = compose(pl.field(), acc, d);
    }
    GroupSet g(pl, elems);
    CHECK(g.size() == 5);
    std::vector<int> all(pl.size());
    for (int i = 0; i < pl.size(); ++i) all[i] = i;
    auto orbs = point_orbits(pl, g, all);
    CHECK(orbs.size() == 29); // 3 fixed points + 26 five-point orbits
    // partition: disjoint and covering
    std::vector<int> seen(pl.size(), 0);
    for (const auto& o : orbs) {
        CHECK((o.size() == 1 || o.size() == 5));
        for (int p : o) seen[p]++;
    }
    for (int p = 0; p < pl.size(); ++p) REQUIRE(seen[p] == 1);
    // orbit of a fixed point under its stabilizer is a singleton
    auto fixed = fixed_points(pl, g);
    CHECK(fixed == std::vector<int>{pl.point_index(0, 0, 1), pl.point_index(0, 1, 0),
                                    pl.point_index(1, 0, 0)});
    // G-invariance: applying any element maps each orbit onto itself
    auto perms = point_perms(pl, g);
    for (const auto& o : orbs)
        for (const auto& perm : perms)
            for (int p : o)
                REQUIRE(std::binary_search(o.begin(), o.end(), perm[p]));
}
