// Acceptance suite: one pass/fail line per criterion, exact comparisons.

#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "fixture_catalog.hpp"
#include "lemma_suites.hpp"
#include "padicdyn/padicdyn.hpp"

using namespace padicdyn;
using padicdyn::testing::fixture_catalog;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::cout << "CRITERION " << criterion << ": " << (pass ? "PASS" : "FAIL") << " — " << detail
              << "\n"
              << std::flush;
    if (!pass) ++failures;
}

std::vector<const MinimalComponent*> g_components;  // collected for criterion 9

void collect(const Decomposition& dec) {
    for (const auto& c : dec.B) g_components.push_back(&c);
}

std::vector<Decomposition> g_kept;  // keeps collected components alive

const Decomposition& run_and_keep(const IntPoly& f, unsigned max_level) {
    g_kept.push_back(minimal_decomposition(f, max_level));
    collect(g_kept.back());
    return g_kept.back();
}

// --- criterion 1 -----------------------------------------------------------

void criterion1() {
    IntPoly f = parse_poly("0,1,1", 2);
    const Decomposition& dec = run_and_keep(f, 14);
    std::ostringstream why;
    bool ok = true;

    std::set<std::pair<Int, unsigned>> expected;
    for (unsigned n = 2; n <= 7; ++n)
        for (Int t = 0; t < ppow(Int(2), n - 2); ++t)
            expected.insert({ppow(Int(2), n - 1) + t * ppow(Int(2), n), 2 * n - 2});
    std::set<std::pair<Int, unsigned>> got;
    for (const auto& comp : dec.B) {
        if (comp.balls.size() != 1) ok = false;
        got.insert({comp.balls[0].center, comp.balls[0].level});
    }
    if (got != expected) {
        ok = false;
        why << "component set differs; ";
    }
    if (!(dec.A.size() == 1 && dec.A[0].period == 1 && dec.A[0].points == std::vector<Int>{0} &&
          dec.A[0].nature == OrbitNature::Indifferent)) {
        ok = false;
        why << "A is not the indifferent fixed point 0; ";
    }
    bool c1 = false, c3 = false;
    for (const auto& ca : dec.C) {
        if (ca.ball == Ball(1, 2, 2)) c1 = true;
        if (ca.ball == Ball(3, 2, 2)) c3 = true;
    }
    if (!(c1 && c3)) {
        ok = false;
        why << "C does not contain 1+2Z_2; ";
    }
    why << "x^2+x at max_level 14: B = the 63 components of the n=2..7 families exactly";
    report(1, ok, why.str());
}

// --- criterion 2 -----------------------------------------------------------

void criterion2() {
    bool ok = true;
    std::ostringstream why;
    struct Case {
        long lambda;
        bool fixed_points;  // else one 2-orbit
        long loc0, loc1;    // stated classes mod 4
        bool whole_space;   // basin = all of Z_2
    };
    for (Case cs : {Case{4, true, 0, 1, false}, Case{1, false, 0, 3, true},
                    Case{2, true, 2, 3, false}, Case{3, false, 1, 2, true}}) {
        IntPoly f({Int(-cs.lambda), 0, 1}, 2);
        const Decomposition& dec = run_and_keep(f, 10);
        BasinReport basins = basin_bruteforce(f, 2, 8);
        Int p256 = ppow(Int(2), 8);
        if (cs.fixed_points) {
            if (dec.A.size() != 2 || dec.A[0].period != 1 || dec.A[1].period != 1 ||
                dec.A[0].nature != OrbitNature::Attracting ||
                dec.A[1].nature != OrbitNature::Attracting ||
                mod_floor(dec.A[0].points[0], 4) != cs.loc0 ||
                mod_floor(dec.A[1].points[0], 4) != cs.loc1) {
                ok = false;
                why << "lambda=" << cs.lambda << ": orbit structure; ";
                continue;
            }
            // Basin of the first point = 2Z_2, of the second = 1+2Z_2, exactly.
            std::uint64_t even_cycle = basins.eventual_cycle[to_u64(mod_floor(dec.A[0].points[0], p256))];
            std::uint64_t odd_cycle = basins.eventual_cycle[to_u64(mod_floor(dec.A[1].points[0], p256))];
            for (std::uint64_t r = 0; r < 256; ++r) {
                std::uint64_t want = (r % 2 == 0) ? even_cycle : odd_cycle;
                if (basins.eventual_cycle[r] != want) {
                    ok = false;
                    why << "lambda=" << cs.lambda << ": basin of residue " << r << "; ";
                    break;
                }
            }
        } else {
            if (dec.A.size() != 1 || dec.A[0].period != 2 ||
                dec.A[0].nature != OrbitNature::Attracting) {
                ok = false;
                why << "lambda=" << cs.lambda << ": expected a single attracting 2-orbit; ";
                continue;
            }
            std::set<Int> classes{mod_floor(dec.A[0].points[0], 4), mod_floor(dec.A[0].points[1], 4)};
            if (classes != std::set<Int>{Int(cs.loc0), Int(cs.loc1)}) {
                ok = false;
                why << "lambda=" << cs.lambda << ": orbit classes mod 4; ";
            }
            std::uint64_t cyc = basins.eventual_cycle[to_u64(mod_floor(dec.A[0].points[0], p256))];
            for (std::uint64_t r = 0; r < 256; ++r)
                if (basins.eventual_cycle[r] != cyc) {
                    ok = false;
                    why << "lambda=" << cs.lambda << ": not globally attracting; ";
                    break;
                }
        }
    }
    why << "x^2-lambda for lambda in {4,1,2,3}: orbit classes mod 4 and exact basins at level 8";
    report(2, ok, why.str());
}

// --- criterion 3 -----------------------------------------------------------

void criterion3() {
    IntPoly f = parse_poly("-3,1,1", 2);
    const Decomposition& dec = run_and_keep(f, 12);
    bool ok = dec.B.size() == 1 && dec.B[0].merged_form.size() == 1 &&
              dec.B[0].merged_form[0] == Ball(1, 1, 2) && dec.A.empty();
    for (unsigned n = 1; n <= 10; ++n)
        if (!transitive_mod(f, {Ball(1, 1, 2)}, n)) ok = false;
    report(3, ok, "x^2+x-3: B = {1+2Z_2} and transitivity holds for n = 1..10");
}

// --- criteria 4 and 5: fixture spot checks ----------------------------------

bool spot(QuadFamily fam, long param, unsigned max_level, std::ostringstream& why) {
    QuadFixture fx = make_fixture(fam, param);
    FixtureReport rep = verify_against_engine(fx, max_level);
    if (!rep.match) {
        why << family_name(fam) << " param " << param << ": " << rep.mismatches.size()
            << " mismatch(es); ";
        return false;
    }
    Decomposition dec = minimal_decomposition(fx.poly, max_level);
    collect(dec);
    g_kept.push_back(std::move(dec));
    return true;
}

void criterion4() {
    bool ok = true;
    std::ostringstream why;
    // Theorem: x^2+(1-4m)x with m=2, families up to level 10 and beyond.
    ok &= spot(QuadFamily::XSqPlus1m4mX, 2, 12, why);
    {
        // Explicit E_1/E_2/E_3 members with component level <= 10.
        Decomposition dec = closed_form(make_fixture(QuadFamily::XSqPlus1m4mX, 2), 12);
        std::set<std::pair<Int, unsigned>> got;
        for (const auto& c : dec.B) got.insert({c.balls[0].center, c.balls[0].level});
        auto need = [&](long center, unsigned level) {
            if (!got.count({Int(center), level})) {
                ok = false;
                why << "missing 6.3 member " << center << "@" << level << "; ";
            }
        };
        need(2, 2);                    // E_1, n=2, I-[0]
        need(4, 4);                    // E_1, n=3, I-[1] (t=0)
        need(12, 4);                   // E_1, n=3, I-[1] (t=1)
        for (long t = 0; t < 4; ++t) {
            need(16 + 32 * t, 7);  // E_2, n=5, I-[2]
            need(24 + 32 * t, 7);  // E_3, n=5, I-[2] (4m + 2^4 = 24)
        }
    }
    ok &= spot(QuadFamily::XSqPlusNeg1m4mX_odd, 2, 12, why);   // m=2, v odd
    ok &= spot(QuadFamily::XSqPlusNeg1m4mX_even, 4, 12, why);  // subcase (2)
    ok &= spot(QuadFamily::XSqPlusNeg1m4mX_even, 20, 13, why); // subcase (3)
    {
        // The 2-periodic orbit of m=20 sits in 4+16Z_2 and 12+16Z_2.
        IntPoly f = parse_poly("0,-81,1", 2);
        Decomposition dec = minimal_decomposition(f, 13);
        bool orbit_ok = false;
        for (const auto& orb : dec.A)
            if (orb.period == 2) {
                std::set<Int> cls{mod_floor(orb.points[0], 16), mod_floor(orb.points[1], 16)};
                orbit_ok = cls == std::set<Int>{Int(4), Int(12)} &&
                           orb.nature == OrbitNature::Indifferent;
            }
        if (!orbit_ok) {
            ok = false;
            why << "m=20 2-orbit not in 4+16Z_2 / 12+16Z_2; ";
        }
    }
    why << "Theorems for m=2 (both sign families), m=4 and m=20: exact component-set equality";
    report(4, ok, why.str());
}

void criterion5() {
    bool ok = true;
    std::ostringstream why;
    // d=12: exactly three components 4Z_2, 2+8Z_2, 6+8Z_2.
    {
        IntPoly f = parse_poly("-12,1,1", 2);
        const Decomposition& dec = run_and_keep(f, 12);
        std::set<std::pair<Int, unsigned>> got;
        for (const auto& c : dec.B) got.insert({c.balls[0].center, c.balls[0].level});
        std::set<std::pair<Int, unsigned>> want{{Int(0), 2u}, {Int(2), 3u}, {Int(6), 3u}};
        if (got != want || dec.B.size() != 3) {
            ok = false;
            why << "d=12 components; ";
        }
    }
    ok &= spot(QuadFamily::XSqPlusXMinusD_mod0, 12, 12, why);
    ok &= spot(QuadFamily::XSqPlusXMinusD_mod0, 8, 12, why);  // v_2(d) odd
    // One instance per printed (a,b,c) row of the d = 1 (mod 4) theorem.
    ok &= spot(QuadFamily::XSqPlusXMinusD_mod1, 101, 13, why);  // row 1: a=1,b=25,c=9
    ok &= spot(QuadFamily::XSqPlusXMinusD_mod1, 37, 13, why);   // row 2: a=1,b=9,c=25
    ok &= spot(QuadFamily::XSqPlusXMinusD_mod1, 69, 13, why);   // row 3: a=9,b=1,c=17
    ok &= spot(QuadFamily::XSqPlusXMinusD_mod1, 5, 13, why);    // row 4: a=9,b=17,c=1
    why << "d=12 exact triple; d=8 families; one instance per d=1(4) row with printed centers";
    report(5, ok, why.str());
}

// --- criterion 6: falsification suite ---------------------------------------

void criterion6() {
    bool ok = true;
    std::ostringstream why;
    std::mt19937_64 rng(20260810);
    std::uniform_int_distribution<int> coeff(-64, 64);

    auto random_poly = [&](const Int& p, int deg_lo, int deg_hi) {
        std::uniform_int_distribution<int> deg(deg_lo, deg_hi);
        int degree = deg(rng);
        std::vector<Int> cs;
        for (int i = 0; i < degree; ++i) cs.emplace_back(coeff(rng));
        int lead = coeff(rng);
        if (lead == 0) lead = 1;
        cs.emplace_back(lead);
        return IntPoly(std::move(cs), p);
    };

    struct Row {
        int prime;
        int count;
        unsigned level;
        int deg_lo, deg_hi;
    };
    int quad_period4 = 0;
    int permutation_violations = 0;
    for (Row row : {Row{2, 1000, 10, 2, 5}, Row{3, 300, 6, 2, 5}, Row{5, 100, 4, 2, 5}}) {
        Int p(row.prime);
        auto allowed = possible_periods(p);
        std::uint64_t k_max = allowed.back();
        for (int i = 0; i < row.count; ++i) {
            IntPoly f = random_poly(p, row.deg_lo, row.deg_hi);
            auto pts = periodic_points_bruteforce(f, p, row.level, k_max);
            std::set<std::uint64_t> periods;
            for (auto& [r, k] : pts) periods.insert(k);
            for (std::uint64_t k : periods)
                if (!std::binary_search(allowed.begin(), allowed.end(), k)) {
                    ok = false;
                    why << "p=" << row.prime << " poly " << format_poly(f) << " period " << k
                        << " not admissible; ";
                }
            if (row.prime == 2) {
                bool has4 = periods.count(4) != 0;
                if (has4 && f.degree() == 2) ++quad_period4;
                if (has4 && !period4_precondition_p2(f)) ++permutation_violations;
            }
        }
    }
    // No section-6 fixture produces a period-4 orbit either.
    for (const auto& e : fixture_catalog()) {
        QuadFixture fx = make_fixture(e.family, e.param);
        Decomposition dec = minimal_decomposition(fx.poly, 10);
        for (const auto& orb : dec.A)
            if (orb.period == 4) ++quad_period4;
    }
    if (quad_period4) {
        ok = false;
        why << quad_period4 << " quadratic period-4 orbit(s); ";
    }
    if (permutation_violations) {
        ok = false;
        why << permutation_violations << " period-4 orbit(s) without f_1 a permutation; ";
    }
    why << "1000/300/100 random polynomials at p=2/3/5: all persistent periods admissible; "
           "no quadratic period-4; period-4 implies f_1 is a permutation";
    report(6, ok, why.str());
}

// --- criterion 7: lemma property suites --------------------------------------

void criterion7() {
    int violations = 0;
    for (Int p : {Int(2), Int(3), Int(5)}) {
        violations += padicdyn::testing::lemma_invariance_suite(p, 200, 101 + to_u64(p));
        violations += padicdyn::testing::lemma_lift_recurrence_suite(p, 200, 202 + to_u64(p));
    }
    violations += padicdyn::testing::lemma_parity_derivative_suite(200, 303);
    report(7, violations == 0,
           "invariance lemmas (i)-(iv), mod-p^2n linearization, lift recurrences at 200 "
           "instances per p in {2,3,5}; derivative parity lemma at 200: " +
               std::to_string(violations) + " violation(s)");
}

// --- criterion 8: oracle cross-validation ------------------------------------

void criterion8() {
    bool ok = true;
    std::ostringstream why;
    std::mt19937_64 rng(8088);
    std::uniform_int_distribution<int> coeff(-40, 40);
    std::uniform_int_distribution<int> deg(2, 4);
    const unsigned max_level = 8;
    int mismatches = 0;
    for (int i = 0; i < 50; ++i) {
        Int p(std::vector<int>{2, 3, 5}[i % 3]);
        std::vector<Int> cs;
        int degree = deg(rng);
        for (int j = 0; j < degree; ++j) cs.emplace_back(coeff(rng));
        int lead = coeff(rng);
        if (lead == 0) lead = 1;
        cs.emplace_back(lead);
        IntPoly f(std::move(cs), p);

        const Decomposition& dec = run_and_keep(f, max_level);
        if (!verify_partition(dec).empty()) {
            ++mismatches;
            why << format_poly(f) << " p=" << p.str() << ": partition; ";
            continue;
        }
        for (const auto& comp : dec.B)
            if (!is_minimal_bruteforce(f, comp, comp.level() + 6)) {
                ++mismatches;
                why << format_poly(f) << ": component at level " << comp.level() << "; ";
            }
        unsigned oracle_level = std::min<unsigned>(max_level, 8);
        BasinReport basins = basin_bruteforce(f, p, oracle_level);
        Int pl = ppow(p, oracle_level);
        auto pts = periodic_points_bruteforce(f, p, oracle_level, possible_periods(p).back());
        for (const auto& orb : dec.A) {
            if (orb.nature == OrbitNature::Attracting) {
                // The orbit's region is attracted to the cycle of its points.
                std::uint64_t cyc = basins.eventual_cycle[to_u64(mod_floor(orb.points[0], pl))];
                if (basins.cycle_lengths[cyc] != orb.period) {
                    ++mismatches;
                    why << format_poly(f) << ": attracting period; ";
                }
                for (const Ball& b : orb.region)
                    for (const Int& r : ball_residues(b, p, oracle_level))
                        if (basins.eventual_cycle[to_u64(r)] != cyc) {
                            ++mismatches;
                            why << format_poly(f) << ": basin of " << r.str() << "; ";
                        }
            } else {
                for (const Int& x : orb.points) {
                    bool found = false;
                    for (auto& [r, k] : pts)
                        if (r == mod_floor(x, pl) && k == orb.period) found = true;
                    if (!found) {
                        ++mismatches;
                        why << format_poly(f) << ": indifferent point " << x.str()
                            << " not a brute-force shadow; ";
                    }
                }
            }
        }
    }
    why << "50 random polynomials (deg 2-4, p in {2,3,5}, max_level 8): " << mismatches
        << " mismatch(es)";
    report(8, mismatches == 0 && ok, why.str());
}

// --- criterion 9: structure sequences ----------------------------------------

void criterion9() {
    bool ok = true;
    std::size_t checked = 0;
    std::ostringstream why;
    for (const MinimalComponent* comp : g_components) {
        ++checked;
        // The shape was validated at construction; re-derive and re-check.
        try {
            // Prime recoverable from the stored sequence tail ratio.
            Int p = comp->structure_sequence.back() /
                    comp->structure_sequence[comp->structure_sequence.size() - 2];
            StructureShape shape = validate_structure_shape(comp->structure_sequence, p);
            if (shape.k != comp->k || shape.d != comp->d ||
                shape.growth_start != comp->growth_start) {
                ok = false;
                why << "shape fields disagree; ";
            }
            if (Int(comp->k) > p || (p - 1) % Int(comp->d) != 0) {
                ok = false;
                why << "k <= p or d | p-1 violated; ";
            }
        } catch (const std::exception& e) {
            ok = false;
            why << e.what() << "; ";
        }
    }
    why << std::to_string(checked) + " components from criteria 1-5 and 8 match (k,kd,kdp,...)";
    report(9, ok, why.str());
}

// --- criterion 10: components accumulating at the fixed point ----------------

void criterion10() {
    IntPoly f = parse_poly("0,1,1", 2);
    Decomposition dec = minimal_decomposition(f, 16);
    bool ok = dec.A.size() == 1;
    std::ostringstream why;
    for (unsigned n = 2; n <= 7 && ok; ++n) {
        auto comp = components_near_orbit(dec, dec.A[0], n);
        if (!comp) {
            ok = false;
            why << "no component within 2^-" << n << "; ";
            continue;
        }
        // Distance and diameter bounds, re-checked explicitly.
        if (comp->level() < n) ok = false;
        bool close = false;
        for (const Ball& b : comp->balls)
            if (mod_floor(b.center, ppow(Int(2), n)) == 0) close = true;
        if (!close) ok = false;
    }
    why << "x^2+x, fixed point 0: components within distance and diameter 2^-n for n = 2..7";
    report(10, ok, why.str());
}

}  // namespace

int main() {
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
        criterion9();
        criterion10();
    } catch (const std::exception& e) {
        std::cout << "ACCEPTANCE ABORTED: " << e.what() << "\n";
        return 1;
    }
    std::cout << (failures == 0 ? "ACCEPTANCE: ALL CRITERIA PASS"
                                : "ACCEPTANCE: " + std::to_string(failures) + " CRITERIA FAILED")
              << "\n";
    return failures == 0 ? 0 : 1;
}
