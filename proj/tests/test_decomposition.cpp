#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace padicdyn;

TEST_CASE("x^2+x decomposition (module example, max_level 12)") {
    IntPoly f = parse_poly("0,1,1", 2);
    Decomposition dec = minimal_decomposition(f, 12);
    REQUIRE(dec.A.size() == 1);
    CHECK(dec.A[0].period == 1);
    CHECK(dec.A[0].points == std::vector<Int>{0});
    CHECK(dec.A[0].nature == OrbitNature::Indifferent);

    // B contains 2+4Z_2 and the families 2^{n-1}+t2^n+2^{2n-2}Z_2, n = 3..6.
    auto has_ball = [&](const Int& center, unsigned level) {
        for (const auto& comp : dec.B)
            if (comp.balls.size() == 1 && comp.balls[0] == Ball(center, level, 2)) return true;
        return false;
    };
    CHECK(has_ball(2, 2));
    for (unsigned n = 3; n <= 6; ++n)
        for (Int t = 0; t < ppow(Int(2), n - 2); ++t)
            CHECK(has_ball(ppow(Int(2), n - 1) + t * ppow(Int(2), n), 2 * n - 2));

    // C contains 1+2Z_2 (as the two level-2 odd balls).
    bool c1 = false, c3 = false;
    for (const auto& ca : dec.C) {
        if (ca.ball == Ball(1, 2, 2)) c1 = true;
        if (ca.ball == Ball(3, 2, 2)) c3 = true;
    }
    CHECK(c1);
    CHECK(c3);
    CHECK(verify_partition(dec).empty());
}

TEST_CASE("x^2-4: two attracting fixed points with the stated basins") {
    IntPoly f = parse_poly("-4,0,1", 2);
    Decomposition dec = minimal_decomposition(f, 10);
    REQUIRE(dec.A.size() == 2);
    CHECK(dec.B.empty());
    for (const auto& orb : dec.A) {
        CHECK(orb.period == 1);
        CHECK(orb.nature == OrbitNature::Attracting);
    }
    CHECK(mod_floor(dec.A[0].points[0], 4) == 0);
    CHECK(mod_floor(dec.A[1].points[0], 4) == 1);
    CHECK(verify_partition(dec).empty());
}

TEST_CASE("x^2+x-3: unique minimal component 1+2Z_2") {
    IntPoly f = parse_poly("-3,1,1", 2);
    Decomposition dec = minimal_decomposition(f, 10);
    CHECK(dec.A.empty());
    REQUIRE(dec.B.size() == 1);
    REQUIRE(dec.B[0].merged_form.size() == 1);
    CHECK(dec.B[0].merged_form[0] == Ball(1, 1, 2));
    CHECK(dec.undecided.empty());
    CHECK(verify_partition(dec).empty());
}

TEST_CASE("possible_periods") {
    CHECK(possible_periods(2) == std::vector<std::uint64_t>{1, 2, 4});
    CHECK(possible_periods(3) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 9});
    CHECK(possible_periods(5) ==
          std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20});
    CHECK_THROWS_AS(possible_periods(6), precondition_error);
}

TEST_CASE("period-4 precondition at p = 2") {
    CHECK_FALSE(period4_precondition_p2(parse_poly("0,1,1", 2)));  // f_1: 0,1 -> 0
    CHECK(period4_precondition_p2(parse_poly("1,0,0,1", 2)));      // x^3+1 swaps
    CHECK(period4_precondition_p2(parse_poly("0,0,1", 2)));        // x^2 fixes both
    CHECK_THROWS_AS(period4_precondition_p2(parse_poly("0,1,1", 3)), precondition_error);
}

TEST_CASE("structure sequences") {
    IntPoly f = parse_poly("0,1,1", 2);
    Decomposition dec = minimal_decomposition(f, 10);
    const MinimalComponent* comp = nullptr;
    for (const auto& c : dec.B)
        if (c.balls.size() == 1 && c.balls[0] == Ball(2, 2, 2)) comp = &c;
    REQUIRE(comp);
    CHECK(structure_sequence(*comp, 2, 5) == std::vector<Int>{1, 1, 2, 4, 8});
    CHECK(comp->k == 1);
    CHECK(comp->d == 1);
    CHECK(comp->growth_start == 2);

    IntPoly g = parse_poly("-3,1,1", 2);
    Decomposition dg = minimal_decomposition(g, 10);
    REQUIRE(dg.B.size() == 1);
    CHECK(structure_sequence(dg.B[0], 2, 4) == std::vector<Int>{1, 2, 4, 8});
    CHECK(dg.B[0].growth_start == 1);

    // Shape validator: k = 2 with immediate growth.
    StructureShape shape = validate_structure_shape({2, 4, 8, 16}, 2);
    CHECK(shape.k == 2);
    CHECK(shape.d == 1);
    CHECK(shape.growth_start == 1);
    // d-jump then growth at p = 5.
    StructureShape s5 = validate_structure_shape({1, 4, 4, 20, 100}, 5);
    CHECK(s5.k == 1);
    CHECK(s5.d == 4);
    // Violations raise integrity errors.
    CHECK_THROWS_AS(validate_structure_shape({1, 3, 3, 3}, 5), integrity_error);   // no tail
    CHECK_THROWS_AS(validate_structure_shape({1, 2, 4, 4, 8}, 2), integrity_error);  // two flats after growth
}

TEST_CASE("components_near_orbit (x^2+x, fixed point 0)") {
    IntPoly f = parse_poly("0,1,1", 2);
    Decomposition dec = minimal_decomposition(f, 14);
    REQUIRE(dec.A.size() == 1);
    SECTION("n = 4: component centered at 16, level 8") {
        auto comp = components_near_orbit(dec, dec.A[0], 4);
        REQUIRE(comp);
        CHECK(comp->balls[0] == Ball(16, 8, 2));
    }
    SECTION("n = 2: component centered at 4, level 4") {
        auto comp = components_near_orbit(dec, dec.A[0], 2);
        REQUIRE(comp);
        CHECK(comp->balls[0] == Ball(4, 4, 2));
    }
    SECTION("attracting orbits are rejected") {
        IntPoly g = parse_poly("-4,0,1", 2);
        Decomposition dg = minimal_decomposition(g, 10);
        CHECK_THROWS_AS(components_near_orbit(dg, dg.A[0], 3), precondition_error);
    }
}

TEST_CASE("partition and invariance on a random suite") {
    std::mt19937_64 rng(55);
    int done = 0;
    while (done < 18) {
        Int p(std::vector<int>{2, 3, 5}[rng() % 3]);
        IntPoly f = testing::random_poly(rng, p, 2 + static_cast<int>(rng() % 3));
        unsigned max_level = p == 5 ? 6 : 8;
        Decomposition dec = minimal_decomposition(f, max_level);
        INFO(format_poly(f) << " over p=" << p.str());
        CHECK(verify_partition(dec).empty());
        // Invariance: each component maps into itself at max_level.
        Int pmax = ppow(p, max_level);
        for (const auto& comp : dec.B) {
            for (const Ball& b : comp.balls) {
                Int y = eval_int_mod(f, b.center, pmax);
                bool inside = false;
                for (const Ball& b2 : comp.balls)
                    if (ball_contains(b2, y, p)) inside = true;
                CHECK(inside);
            }
        }
        // Period admissibility.
        auto allowed = possible_periods(p);
        for (const auto& orb : dec.A)
            CHECK(std::binary_search(allowed.begin(), allowed.end(), orb.period));
        ++done;
    }
}

TEST_CASE("basin targets are correct under iteration") {
    IntPoly f = parse_poly("0,1,1", 2);
    Decomposition dec = minimal_decomposition(f, 10);
    Int pmax = ppow(Int(2), 10);
    for (const auto& ca : dec.C) {
        REQUIRE(ca.kind != TargetKind::Unresolved);
        Int y = ca.ball.center;
        bool landed = false;
        for (unsigned s = 0; s <= 10 * 2 && !landed; ++s) {
            if (ca.kind == TargetKind::Component) {
                for (const Ball& b : dec.B[ca.index].balls)
                    if (ball_contains(b, y, 2)) landed = true;
            } else if (ca.kind == TargetKind::Orbit) {
                for (const Ball& b : dec.A[ca.index].region)
                    if (ball_contains(b, y, 2)) landed = true;
            } else {
                landed = true;  // undecided region: nothing to verify
            }
            y = eval_int_mod(f, y, pmax);
        }
        CHECK(landed);
    }
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(minimal_decomposition(parse_poly("1,1", 2), 8), precondition_error);
    CHECK_THROWS_AS(minimal_decomposition(parse_poly("0,1,1", 2), 1), precondition_error);
    CHECK_THROWS_AS(minimal_decomposition(parse_poly("0,1,1", 2), Int(3), 8), precondition_error);
    IntPoly truncated({1, 1, 1}, 2, 6);
    CHECK_THROWS_AS(minimal_decomposition(truncated, 8), precision_error);
}
