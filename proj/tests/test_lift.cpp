#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace padicdyn;

namespace {
Cycle cyc(const IntPoly& f, unsigned n, std::initializer_list<int> pts) {
    Cycle c;
    c.level = n;
    for (int x : pts) c.points.push_back(mod_floor(Int(x), ppow(f.prime, n)));
    c.canonicalize();
    return c;
}
}  // namespace

TEST_CASE("lift_cycle examples") {
    IntPoly xsq_x = parse_poly("0,1,1", 2);
    SECTION("(0) at level 1 lifts to (0), (2)") {
        LiftResult lr = lift_cycle(xsq_x, cyc(xsq_x, 1, {0}));
        REQUIRE(lr.cycles.size() == 2);
        CHECK(lr.cycles[0].points == std::vector<Int>{0});
        CHECK(lr.cycles[1].points == std::vector<Int>{2});
        CHECK(lr.tail_residues.empty());
    }
    SECTION("(2) at level 2 lifts to the 2-cycle (2,6)") {
        LiftResult lr = lift_cycle(xsq_x, cyc(xsq_x, 2, {2}));
        REQUIRE(lr.cycles.size() == 1);
        CHECK(lr.cycles[0].points == std::vector<Int>{2, 6});
    }
    SECTION("grows-tails lift: one 1-cycle plus a tail") {
        IntPoly xsq_m4 = parse_poly("-4,0,1", 2);
        LiftResult lr = lift_cycle(xsq_m4, cyc(xsq_m4, 2, {0}));
        REQUIRE(lr.cycles.size() == 1);
        CHECK(lr.cycles[0].length() == 1);
        CHECK(lr.tail_residues.size() == 1);
    }
}

TEST_CASE("predict_fate examples") {
    IntPoly xsq_x = parse_poly("0,1,1", 2);
    SECTION("x^2+x, (2^{n-1}) at level n: splits n-3 more times then minimal") {
        for (unsigned n : {3u, 4u, 5u}) {
            Cycle c;
            c.level = n;
            c.points = {ppow(Int(2), n - 1)};
            Fate fate = predict_fate(xsq_x, c, 14);
            CHECK(fate.kind == FateKind::MinimalForever);
            CHECK(fate.growth_start == 2 * n - 2);
            CHECK(fate.component_count == to_u64(ppow(Int(2), n - 2)));
            CHECK(fate.materialized);
        }
    }
    SECTION("x^2+x, (0): splits forever, fixed point 0") {
        Fate fate = predict_fate(xsq_x, cyc(xsq_x, 2, {0}), 10);
        CHECK(fate.kind == FateKind::SplitsForever);
        CHECK(fate.orbit_period == 1);
    }
    SECTION("x^2-1, (0,3): attracting orbit of period 2") {
        IntPoly f = parse_poly("-1,0,1", 2);
        Fate fate = predict_fate(f, cyc(f, 2, {0, 3}), 10);
        CHECK(fate.kind == FateKind::AttractingOrbit);
        CHECK(fate.orbit_period == 2);
    }
}

TEST_CASE("build_lift_tree: chain of (0) nodes with sibling subtrees") {
    IntPoly xsq_x = parse_poly("0,1,1", 2);
    LiftNode root = build_lift_tree(xsq_x, cyc(xsq_x, 2, {0}), 6);
    const LiftNode* cur = &root;
    for (unsigned level = 2; level < 6; ++level) {
        REQUIRE(cur->cycle.points == std::vector<Int>{0});
        REQUIRE(cur->children.size() == 2);
        CHECK(cur->children[1].cycle.points.front() == ppow(Int(2), level));
        REQUIRE(cur->fate);
        CHECK(cur->fate->kind == FateKind::SplitsForever);
        cur = &cur->children[0];
    }
    CHECK(cur->cycle.level == 6);
}

TEST_CASE("build_lift_tree: all-grow tree is a single branch of doubling lengths") {
    IntPoly f = parse_poly("-3,1,1", 2);  // x^2+x-3
    LiftNode root = build_lift_tree(f, cyc(f, 2, {1, 3}), 8);
    const LiftNode* cur = &root;
    std::uint64_t expect = 2;
    for (unsigned level = 2; level <= 8; ++level) {
        CHECK(cur->cycle.length() == expect);
        REQUIRE(cur->fate);
        CHECK(cur->fate->kind == FateKind::MinimalForever);
        if (level < 8) {
            REQUIRE(cur->children.size() == 1);
            cur = &cur->children.front();
            expect *= 2;
        }
    }
}

TEST_CASE("build_lift_tree: grows-tails root is a single leaf") {
    IntPoly f = parse_poly("-4,0,1", 2);
    LiftNode root = build_lift_tree(f, cyc(f, 2, {0}), 8);
    CHECK(root.children.empty());
    REQUIRE(root.fate);
    CHECK(root.fate->kind == FateKind::AttractingOrbit);
}

TEST_CASE("lift-type propagation along tree edges") {
    std::mt19937_64 rng(41);
    auto is_tails = [](const Behavior& b) {
        if (std::holds_alternative<BehaviorTwo>(b))
            return std::get<BehaviorTwo>(b) == BehaviorTwo::GrowsTails;
        return std::get<BehaviorOdd>(b).kind == OddKind::GrowsTails;
    };
    auto grow_or_split = [&](const Behavior& b) {
        if (std::holds_alternative<BehaviorTwo>(b))
            return std::get<BehaviorTwo>(b) != BehaviorTwo::GrowsTails;
        auto k = std::get<BehaviorOdd>(b).kind;
        return k == OddKind::Grows || k == OddKind::Splits;
    };
    for (Int p : {Int(2), Int(3), Int(5)}) {
        for (int i = 0; i < 15; ++i) {
            auto [f, c] = testing::random_cycle(rng, p, 2);
            LiftNode root = build_lift_tree(f, c, 5);
            // Walk edges: grows-tails children stay grows-tails; grow/split
            // parents have grow/split children; a partial split's same-length
            // child partially splits.
            struct Walk {
                static void go(const LiftNode& n, decltype(is_tails)& tails,
                               decltype(grow_or_split)& gs) {
                    for (const LiftNode& ch : n.children) {
                        if (tails(n.behavior)) CHECK(tails(ch.behavior));
                        if (std::holds_alternative<BehaviorOdd>(n.behavior)) {
                            auto nb = std::get<BehaviorOdd>(n.behavior);
                            if (nb.kind == OddKind::PartiallySplits &&
                                ch.cycle.length() == n.cycle.length()) {
                                auto cb = std::get<BehaviorOdd>(ch.behavior);
                                bool ok = cb.kind == OddKind::PartiallySplits ||
                                          ch.data.exact_periodic;
                                CHECK(ok);
                            }
                            if (nb.kind == OddKind::PartiallySplits &&
                                ch.cycle.length() != n.cycle.length())
                                CHECK(gs(ch.behavior));
                            if (nb.kind == OddKind::Grows || nb.kind == OddKind::Splits)
                                CHECK(gs(ch.behavior));
                        } else {
                            auto nb = std::get<BehaviorTwo>(n.behavior);
                            bool n_grows = nb == BehaviorTwo::StronglyGrows ||
                                           nb == BehaviorTwo::WeaklyGrows;
                            if (n_grows && n.cycle.level >= 2) {
                                // Children of growing cycles have a = 1 (mod 4).
                                CHECK(mod_floor(ch.data.a_mod, 4) == 1);
                            }
                        }
                        go(ch, tails, gs);
                    }
                }
            };
            Walk::go(root, is_tails, grow_or_split);
        }
    }
}

TEST_CASE("case-1 bookkeeping: B decrements by one per split level") {
    IntPoly f = parse_poly("0,1,1", 2);
    Cycle c;
    c.level = 5;
    c.points = {Int(16)};
    LiftNode root = build_lift_tree(f, c, 12);  // B = 3: splits at 5,6,7, grows at 8
    struct Walk {
        static void go(const LiftNode& n) {
            for (const LiftNode& ch : n.children) {
                bool both_split = n.data.B.is_finite() && ch.data.B.is_finite() &&
                                  ch.cycle.length() == n.cycle.length();
                if (both_split && ch.cycle.level <= 8)
                    CHECK(ch.data.B.value() + 1 == n.data.B.value());
                go(ch);
            }
        }
    };
    Walk::go(root);
    REQUIRE(root.fate);
    CHECK(root.fate->growth_start == 8);
    CHECK(root.fate->component_count == 8);
}

TEST_CASE("fate soundness: minimal components pass the brute-force oracle") {
    std::mt19937_64 rng(42);
    for (Int p : {Int(2), Int(3)}) {
        for (int i = 0; i < 8; ++i) {
            auto [f, c] = testing::random_cycle(rng, p, 2);
            AnalyzeReport rep = analyze_cycle(f, c, 7);
            for (const MinimalComponent& comp : rep.components) {
                INFO(format_poly(f) << " component at level " << comp.level());
                CHECK(is_minimal_bruteforce(f, comp, comp.level() + 6));
            }
        }
    }
}

TEST_CASE("undecided is reported when the budget is hit, never a guess") {
    // Tangent case: 9x^2-5x+1 has an indifferent fixed point at 1/3 with
    // multiplier exactly 1; the case-3 recursion can never resolve it.
    IntPoly f = parse_poly("1,-5,9", 2);
    Decomposition dec = minimal_decomposition(f, 8);
    CHECK_FALSE(dec.undecided.empty());
    bool found = false;
    Int one_third = 171;  // 3*171 = 1 (mod 2^8)
    for (const auto& u : dec.undecided)
        if (ball_contains(u.ball, one_third, 2)) found = true;
    CHECK(found);
}
