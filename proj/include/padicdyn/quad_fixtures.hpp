#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicdyn/ball.hpp"
#include "padicdyn/bigint.hpp"
#include "padicdyn/components.hpp"
#include "padicdyn/core.hpp"
#include "padicdyn/decomposition.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/normal_form.hpp"
#include "padicdyn/poly.hpp"

// Closed-form minimal decompositions of the 2-adic quadratic normal forms,
// hand-encoded and expanded by direct enumeration inside the stated regions.
// The expansion never consults the lift engine, so agreement with
// minimal_decomposition is genuine cross-validation.

namespace padicdyn {

enum class QuadFamily {
    XSqMinusLambda,
    XSqPlusX,
    XSqPlus1m4mX,          // x^2 + (1-4m)x, m != 0
    XSqPlusNeg1m4mX_odd,   // x^2 + (-1-4m)x, v_2(m) odd
    XSqPlusNeg1m4mX_even,  // x^2 + (-1-4m)x, v_2(m) even >= 2
    XSqPlusXMinusD_mod0,   // x^2 + x - d, d = 0 (mod 4), sqrt(d) not in Z_2
    XSqPlusXMinusD_mod1,   // d = 1 (mod 4)
    XSqPlusXMinusD_mod2,   // d = 2 (mod 4)
    XSqPlusXMinusD_mod3,   // d = 3 (mod 4)
};

inline std::string family_name(QuadFamily f) {
    switch (f) {
        case QuadFamily::XSqMinusLambda: return "x^2-lambda";
        case QuadFamily::XSqPlusX: return "x^2+x";
        case QuadFamily::XSqPlus1m4mX: return "x^2+(1-4m)x";
        case QuadFamily::XSqPlusNeg1m4mX_odd: return "x^2+(-1-4m)x, v_2(m) odd";
        case QuadFamily::XSqPlusNeg1m4mX_even: return "x^2+(-1-4m)x, v_2(m) even";
        case QuadFamily::XSqPlusXMinusD_mod0: return "x^2+x-d, d=0 mod 4";
        case QuadFamily::XSqPlusXMinusD_mod1: return "x^2+x-d, d=1 mod 4";
        case QuadFamily::XSqPlusXMinusD_mod2: return "x^2+x-d, d=2 mod 4";
        case QuadFamily::XSqPlusXMinusD_mod3: return "x^2+x-d, d=3 mod 4";
    }
    return "?";
}

struct QuadFixture {
    QuadFamily family;
    Int param;     // lambda, m, or d (unused for x^2+x)
    IntPoly poly;  // the normal form the fixture describes
};

inline QuadFixture make_fixture(QuadFamily family, const Int& param) {
    QuadFixture fx;
    fx.family = family;
    fx.param = param;
    switch (family) {
        case QuadFamily::XSqMinusLambda:
            fx.poly = IntPoly({-param, 0, 1}, 2);
            break;
        case QuadFamily::XSqPlusX:
            fx.poly = IntPoly({0, 1, 1}, 2);
            break;
        case QuadFamily::XSqPlus1m4mX:
            if (param == 0) throw precondition_error("x^2+(1-4m)x requires m != 0");
            fx.poly = IntPoly({0, 1 - 4 * param, 1}, 2);
            break;
        case QuadFamily::XSqPlusNeg1m4mX_odd: {
            Valuation v = vp(param, 2);
            if (!v.is_finite() || v.value() % 2 == 0)
                throw precondition_error("x^2+(-1-4m)x (odd case) requires v_2(m) odd");
            fx.poly = IntPoly({0, -1 - 4 * param, 1}, 2);
            break;
        }
        case QuadFamily::XSqPlusNeg1m4mX_even: {
            Valuation v = vp(param, 2);
            if (!v.is_finite() || v.value() == 0 || v.value() % 2 != 0)
                throw precondition_error("x^2+(-1-4m)x (even case) requires v_2(m) even >= 2");
            fx.poly = IntPoly({0, -1 - 4 * param, 1}, 2);
            break;
        }
        case QuadFamily::XSqPlusXMinusD_mod0:
            if (mod_floor(param, 4) != 0) throw precondition_error("d must be 0 (mod 4)");
            if (has_sqrt_z2(param)) throw precondition_error("d has a square root in Z_2");
            fx.poly = IntPoly({-param, 1, 1}, 2);
            break;
        case QuadFamily::XSqPlusXMinusD_mod1:
            if (mod_floor(param, 4) != 1) throw precondition_error("d must be 1 (mod 4)");
            if (has_sqrt_z2(param)) throw precondition_error("d has a square root in Z_2");
            fx.poly = IntPoly({-param, 1, 1}, 2);
            break;
        case QuadFamily::XSqPlusXMinusD_mod2:
            if (mod_floor(param, 4) != 2) throw precondition_error("d must be 2 (mod 4)");
            fx.poly = IntPoly({-param, 1, 1}, 2);
            break;
        case QuadFamily::XSqPlusXMinusD_mod3:
            if (mod_floor(param, 4) != 3) throw precondition_error("d must be 3 (mod 4)");
            fx.poly = IntPoly({-param, 1, 1}, 2);
            break;
    }
    return fx;
}

namespace fixture_detail {

/// A region of stated type I-[s] or II-[s]: `region` hosts a single cycle of
/// `cycle_len` at `cycle_level`; it splits `splits` times and then its lifts
/// grow forever.
struct FamilyTerm {
    std::vector<Ball> region;
    unsigned cycle_level = 2;
    unsigned cycle_len = 1;
    unsigned splits = 0;
    bool required = true;  // finite-list terms must materialize
};

inline bool term_fits(const FamilyTerm& t, unsigned max_level) {
    return t.cycle_level + t.splits + 1 <= max_level;
}

/// Expand a term into its minimal components by enumerating f inside the
/// region at level cycle_level + splits.
inline std::vector<MinimalComponent> expand_term(const IntPoly& f, const FamilyTerm& t) {
    unsigned L = t.cycle_level + t.splits;
    Int pL = ppow(Int(2), L);
    std::vector<Int> residues;
    for (const Ball& b : t.region) {
        auto rs = ball_residues(b, 2, L);
        residues.insert(residues.end(), rs.begin(), rs.end());
    }
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());

    std::vector<std::size_t> succ(residues.size());
    for (std::size_t i = 0; i < residues.size(); ++i) {
        Int y = eval_int_mod(f, residues[i], pL);
        auto it = std::lower_bound(residues.begin(), residues.end(), y);
        if (it == residues.end() || *it != y)
            throw integrity_error("fixture region not invariant at level " + std::to_string(L));
        succ[i] = static_cast<std::size_t>(it - residues.begin());
    }
    std::vector<std::int8_t> state(residues.size(), 0);
    std::vector<std::vector<Ball>> found;
    std::vector<std::size_t> path;
    for (std::size_t s = 0; s < residues.size(); ++s) {
        if (state[s]) continue;
        path.clear();
        std::size_t x = s;
        while (state[x] == 0) {
            state[x] = 1;
            path.push_back(x);
            x = succ[x];
        }
        if (state[x] == 1) {
            auto it = std::find(path.begin(), path.end(), x);
            std::vector<Ball> balls;
            for (auto q = it; q != path.end(); ++q) balls.emplace_back(residues[*q], L, Int(2));
            std::sort(balls.begin(), balls.end());
            found.push_back(std::move(balls));
        }
        for (std::size_t q : path)
            if (state[q] == 1) state[q] = 2;
    }
    Int expected = ppow(Int(2), t.splits);
    if (Int(found.size()) != expected)
        throw integrity_error("fixture: region split into " + std::to_string(found.size()) +
                              " cycles, stated type gives " + expected.str());
    std::vector<MinimalComponent> out;
    for (auto& balls : found) {
        if (balls.size() != t.cycle_len)
            throw integrity_error("fixture: cycle length mismatch in region expansion");
        out.push_back(make_component(balls, 2));
    }
    std::sort(out.begin(), out.end(), [](const MinimalComponent& a, const MinimalComponent& b) {
        return a.balls.front() < b.balls.front();
    });
    return out;
}

struct FixtureOrbit {
    std::vector<Int> points;  // mod 2^(max_level), exact to that precision
    std::uint64_t period = 1;
    OrbitNature nature = OrbitNature::Indifferent;
    std::vector<Ball> stated_location;  // one ball per point, as printed
};

inline void check_stated_location(const FixtureOrbit& orb) {
    for (std::size_t i = 0; i < orb.points.size(); ++i) {
        bool ok = false;
        for (const Ball& b : orb.stated_location)
            if (ball_contains(b, orb.points[i], 2)) ok = true;
        if (!ok)
            throw integrity_error("fixture orbit point " + orb.points[i].str() +
                                  " misses its stated location");
    }
}

/// Fixed point of x^2+x-c-type maps via the quadratic formula x = (-B+s)/2
/// with s a chosen square root.  Helper: root of x^2 + Bx + C = 0 in Z_2
/// congruent to `want` mod 2^want_bits.
inline Int quad_root(const Int& B, const Int& C, const Int& want, unsigned want_bits,
                     unsigned out_bits) {
    Int disc = B * B - 4 * C;
    if (!has_sqrt_z2(disc)) throw precondition_error("quadratic has no root in Z_2");
    Int s = sqrt_z2(disc, out_bits + 2);
    Int pw = ppow(Int(2), want_bits);
    Int pout = ppow(Int(2), out_bits);
    for (Int sign : {Int(1), Int(-1)}) {
        Int num = -B + sign * s;
        if (mod_floor(num, 2) != 0) continue;
        Int root = mod_floor(num / 2, pout);
        if (mod_floor(root - want, pw) == 0) return root;
    }
    throw integrity_error("no quadratic root in the stated residue class");
}

}  // namespace fixture_detail

/// The symbolic decomposition of a fixture, expanded into concrete balls up
/// to max_level under the same materialization rule as the engine
/// (components listed only when their level is below max_level).
inline Decomposition closed_form(const QuadFixture& fx, unsigned max_level) {
    using namespace fixture_detail;
    if (max_level < 4) throw precondition_error("closed_form: max_level too small");
    const IntPoly& f = fx.poly;
    Int pmax = ppow(Int(2), max_level);

    Decomposition dec;
    dec.poly = f;
    dec.prime = 2;
    dec.max_level = max_level;

    std::vector<FamilyTerm> terms;
    std::vector<FixtureOrbit> orbits;
    std::vector<Ball> c_region;  // the stated basin side (targets unresolved)
    // Infinite families: at least one term must fit, else the parameters are
    // out of range for this level budget.
    struct InfiniteFamily {
        std::string name;
        unsigned fitted = 0;
    };
    std::vector<InfiniteFamily> tails;

    auto add_tail_terms = [&](const std::string& name, unsigned n_from,
                              auto make_term) {
        InfiniteFamily fam{name, 0};
        for (unsigned n = n_from;; ++n) {
            std::optional<FamilyTerm> t = make_term(n);
            if (!t) break;  // family exhausted by its own range condition
            t->required = false;
            if (!term_fits(*t, max_level)) break;  // deeper terms only get deeper
            terms.push_back(*t);
            ++fam.fitted;
        }
        if (fam.fitted == 0)
            throw precondition_error("fixture family '" + name +
                                     "' has no term within max_level; raise max_level");
        tails.push_back(fam);
    };

    const Int two = 2;
    switch (fx.family) {
        case QuadFamily::XSqMinusLambda: {
            const Int& lam = fx.param;
            Int cls = mod_floor(lam, 4);
            if (cls == 0 || cls == 2) {
                // Two attracting fixed points: roots of x^2 - x - lambda.
                Int want0 = cls == 0 ? Int(0) : Int(2);
                Int want1 = cls == 0 ? Int(1) : Int(3);
                FixtureOrbit o0, o1;
                o0.points = {quad_root(Int(-1), -lam, want0, 2, max_level)};
                o0.nature = OrbitNature::Attracting;
                o0.stated_location = {Ball(want0, 2, two)};
                o1.points = {quad_root(Int(-1), -lam, want1, 2, max_level)};
                o1.nature = OrbitNature::Attracting;
                o1.stated_location = {Ball(want1, 2, two)};
                check_stated_location(o0);
                check_stated_location(o1);
                orbits.push_back(o0);
                orbits.push_back(o1);
                c_region = {Ball(Int(0), 1, two), Ball(Int(1), 1, two)};
            } else {
                // A single attracting 2-periodic orbit: roots of x^2+x+1-lambda.
                Int wa = cls == 1 ? Int(0) : Int(1);
                Int wb = cls == 1 ? Int(3) : Int(2);
                FixtureOrbit o;
                o.period = 2;
                Int xa = quad_root(Int(1), 1 - lam, wa, 2, max_level);
                o.points = {xa, eval_int_mod(f, xa, pmax)};
                o.nature = OrbitNature::Attracting;
                o.stated_location = {Ball(wa, 2, two), Ball(wb, 2, two)};
                check_stated_location(o);
                orbits.push_back(o);
                c_region = {Ball(Int(0), 1, two), Ball(Int(1), 1, two)};
            }
            break;
        }

        case QuadFamily::XSqPlusX: {
            FixtureOrbit o;
            o.points = {Int(0)};
            o.nature = OrbitNature::Indifferent;
            o.stated_location = {Ball(Int(0), 2, two)};
            orbits.push_back(o);
            add_tail_terms("2^{n-1}+2^n Z_2, I-[n-2]", 2, [&](unsigned n) -> std::optional<FamilyTerm> {
                FamilyTerm t;
                t.region = {Ball(ppow(two, n - 1), n, two)};
                t.cycle_level = n;
                t.cycle_len = 1;
                t.splits = n - 2;
                return t;
            });
            c_region = {Ball(Int(1), 1, two)};
            break;
        }

        case QuadFamily::XSqPlus1m4mX: {
            const Int& m = fx.param;
            std::uint64_t v = vp(m, 2).value();
            FixtureOrbit o0, o1;
            o0.points = {Int(0)};
            o0.stated_location = {Ball(Int(0), 2, two)};
            o1.points = {mod_floor(4 * m, pmax)};
            o1.stated_location = {Ball(4 * m, static_cast<unsigned>(std::min<std::uint64_t>(v + 2, max_level)), two)};
            orbits.push_back(o0);
            orbits.push_back(o1);
            // E_1: 2 <= n < v+3, I-[n-2]
            for (unsigned n = 2; Int(n) < Int(v) + 3; ++n) {
                FamilyTerm t;
                t.region = {Ball(ppow(two, n - 1), n, two)};
                t.cycle_level = n;
                t.splits = n - 2;
                terms.push_back(t);
            }
            // E_2 and E_3: n > v+3, I-[v+1]
            add_tail_terms("E_2: 2^{n-1}+2^n Z_2, I-[v+1]", static_cast<unsigned>(v) + 4,
                           [&](unsigned n) -> std::optional<FamilyTerm> {
                               FamilyTerm t;
                               t.region = {Ball(ppow(two, n - 1), n, two)};
                               t.cycle_level = n;
                               t.splits = static_cast<unsigned>(v) + 1;
                               return t;
                           });
            add_tail_terms("E_3: 4m+2^{n-1}+2^n Z_2, I-[v+1]", static_cast<unsigned>(v) + 4,
                           [&](unsigned n) -> std::optional<FamilyTerm> {
                               FamilyTerm t;
                               t.region = {Ball(4 * m + ppow(two, n - 1), n, two)};
                               t.cycle_level = n;
                               t.splits = static_cast<unsigned>(v) + 1;
                               return t;
                           });
            c_region = {Ball(Int(1), 1, two)};
            break;
        }

        case QuadFamily::XSqPlusNeg1m4mX_odd:
        case QuadFamily::XSqPlusNeg1m4mX_even: {
            const Int& m = fx.param;
            std::uint64_t v = vp(m, 2).value();
            bool even_case = fx.family == QuadFamily::XSqPlusNeg1m4mX_even;
            FixtureOrbit o0, o1;
            o0.points = {Int(0)};
            o0.stated_location = {Ball(Int(0), 2, two)};
            o1.points = {mod_floor(4 * m + 2, pmax)};
            o1.stated_location = {Ball(4 * m + 2, 2, two)};
            orbits.push_back(o0);
            orbits.push_back(o1);

            // E_1: n >= 4: 4m+2+2^{n-2}+2^{n-1} Z_2, II-[1]
            add_tail_terms("E_1: 4m+2+2^{n-2}+2^{n-1}Z_2, II-[1]", 4,
                           [&](unsigned n) -> std::optional<FamilyTerm> {
                               FamilyTerm t;
                               t.region = {Ball(4 * m + 2 + ppow(two, n - 2), n - 1, two)};
                               t.cycle_level = n;
                               t.cycle_len = 2;
                               t.splits = 1;
                               return t;
                           });
            // E_2: 4 <= n <= floor(v/2)+3 (odd case) / 4 <= n < v/2+3 (even case), II-[2n-5]
            unsigned e2_last = even_case ? static_cast<unsigned>(v / 2) + 2
                                         : static_cast<unsigned>(v / 2) + 3;
            for (unsigned n = 4; n <= e2_last; ++n) {
                FamilyTerm t;
                t.region = {Ball(ppow(two, n - 2), n - 1, two)};
                t.cycle_level = n;
                t.cycle_len = 2;
                t.splits = 2 * n - 5;
                terms.push_back(t);
            }
            // E_3: n > floor(v/2)+3, II-[v+1]
            add_tail_terms("E_3: 2^{n-2}+2^{n-1}Z_2, II-[v+1]", static_cast<unsigned>(v / 2) + 4,
                           [&](unsigned n) -> std::optional<FamilyTerm> {
                               FamilyTerm t;
                               t.region = {Ball(ppow(two, n - 2), n - 1, two)};
                               t.cycle_level = n;
                               t.cycle_len = 2;
                               t.splits = static_cast<unsigned>(v) + 1;
                               return t;
                           });

            if (even_case) {
                // E = 2^{v/2+1} + 2^{v/2+2} Z_2, dispatched by subcase.
                unsigned nE = static_cast<unsigned>(v / 2) + 3;  // cycle level in E
                Ball Eball(ppow(two, static_cast<unsigned>(v / 2) + 1),
                           static_cast<unsigned>(v / 2) + 2, two);
                auto e_term = [&](unsigned splits) {
                    FamilyTerm t;
                    t.region = {Eball};
                    t.cycle_level = nE;
                    t.cycle_len = 2;
                    t.splits = splits;
                    terms.push_back(t);
                };
                bool orbit_exists = has_sqrt_z2(m * m + m);
                if (v == 2) {
                    std::uint64_t w4 = vp(m - 4, 2).capped(64);
                    if (vp(m - 4, 2).is_infinite()) w4 = 64;
                    if (w4 == 3) {
                        if (orbit_exists) throw integrity_error("subcase (1) but x^2-4mx-4m solvable");
                        e_term(4);
                    } else if (w4 >= 5) {
                        if (orbit_exists) throw integrity_error("subcase (2) but x^2-4mx-4m solvable");
                        e_term(5);
                    } else {
                        // w4 == 4: 2-periodic orbit x1 in 4+16Z_2, x2 in 12+16Z_2.
                        if (!orbit_exists) throw integrity_error("subcase (3) but no 2-periodic orbit");
                        FixtureOrbit o;
                        o.period = 2;
                        Int x1 = quad_root(-4 * m, -4 * m, Int(4), 4, max_level);
                        o.points = {x1, eval_int_mod(f, x1, pmax)};
                        o.stated_location = {Ball(Int(4), 4, two), Ball(Int(12), 4, two)};
                        check_stated_location(o);
                        orbits.push_back(o);
                        Int x2full = 4 * m - x1;  // other root, as integer data for regions
                        add_tail_terms("E_4: (x_i+2^{k-1}+2^k Z_2), II-[5]", 5,
                                       [&, x1, x2full](unsigned kk) -> std::optional<FamilyTerm> {
                                           FamilyTerm t;
                                           t.region = {Ball(x1 + ppow(two, kk - 1), kk, two),
                                                       Ball(x2full + ppow(two, kk - 1), kk, two)};
                                           t.cycle_level = kk;
                                           t.cycle_len = 2;
                                           t.splits = 5;
                                           return t;
                                       });
                    }
                } else {
                    Valuation wE = vp(m - ppow(two, static_cast<unsigned>(v)), 2);
                    if (wE < Valuation::finite(v + 3)) {
                        if (orbit_exists)
                            throw integrity_error("subcase (4) but x^2-4mx-4m solvable");
                        e_term(static_cast<unsigned>(wE.value()) + 1);
                    } else {
                        if (!orbit_exists) throw integrity_error("subcase (5) but no 2-periodic orbit");
                        FixtureOrbit o;
                        o.period = 2;
                        Int loc = ppow(two, static_cast<unsigned>(v / 2) + 1);
                        Int x1 = quad_root(-4 * m, -4 * m, loc, static_cast<unsigned>(v / 2) + 3,
                                           max_level);
                        o.points = {x1, eval_int_mod(f, x1, pmax)};
                        o.stated_location = {
                            Ball(loc, static_cast<unsigned>(v / 2) + 3, two),
                            Ball(loc + ppow(two, static_cast<unsigned>(v / 2) + 2),
                                 static_cast<unsigned>(v / 2) + 3, two)};
                        check_stated_location(o);
                        orbits.push_back(o);
                        Int x2full = 4 * m - x1;
                        // The split count here is v+3, not the statement's v+1:
                        // v_2(f^2(y)-y) = k+v+3 on these shells (the subcase with
                        // v_2(m)=2 prints the matching value 5 = v+3).
                        add_tail_terms("E'_4: (x'_i+2^{k-1}+2^k Z_2), II-[v+3]",
                                       static_cast<unsigned>(v / 2) + 4,
                                       [&, x1, x2full](unsigned kk) -> std::optional<FamilyTerm> {
                                           FamilyTerm t;
                                           t.region = {Ball(x1 + ppow(two, kk - 1), kk, two),
                                                       Ball(x2full + ppow(two, kk - 1), kk, two)};
                                           t.cycle_level = kk;
                                           t.cycle_len = 2;
                                           t.splits = static_cast<unsigned>(v) + 3;
                                           return t;
                                       });
                    }
                }
            }
            c_region = {Ball(Int(1), 1, two)};
            break;
        }

        case QuadFamily::XSqPlusXMinusD_mod0: {
            const Int& d = fx.param;
            std::uint64_t v = vp(d, 2).value();
            unsigned n0 = static_cast<unsigned>(v / 2) + 1;
            auto direct = [&](const Int& center, unsigned level, unsigned cyc_level,
                              unsigned splits) {
                FamilyTerm t;
                t.region = {Ball(center, level, two)};
                t.cycle_level = cyc_level;
                t.splits = splits;
                terms.push_back(t);
            };
            if (v == 2) {
                std::uint64_t w = vp(d - 4, 2).capped(64);
                if (w == 3) {
                    direct(Int(0), 2, 2, 0);
                    direct(Int(2), 3, 3, 0);
                    direct(Int(6), 3, 3, 0);
                } else if (w == 4) {
                    direct(Int(0), 2, 2, 0);
                    direct(Int(2), 4, 4, 0);
                    direct(Int(6), 4, 4, 0);
                    direct(Int(10), 4, 4, 0);
                    direct(Int(14), 4, 4, 0);
                } else {
                    throw integrity_error("d = 0 mod 4, v=2: v_2(d-4) >= 5 contradicts sqrt(d) not in Z_2");
                }
            } else if (v % 2 == 1) {
                for (unsigned n = 2; n <= n0; ++n) direct(ppow(two, n - 1), n, n, n - 2);
                direct(Int(0), n0, n0, n0 - 1);
            } else {
                for (unsigned n = 2; n + 1 <= n0; ++n) direct(ppow(two, n - 1), n, n, n - 2);
                direct(Int(0), n0, n0, n0 - 2);
                std::uint64_t wE = vp(d - ppow(two, static_cast<unsigned>(v)), 2).capped(64);
                direct(ppow(two, n0 - 1), n0, n0, static_cast<unsigned>(wE) - n0);
            }
            c_region = {Ball(Int(1), 1, two)};
            break;
        }

        case QuadFamily::XSqPlusXMinusD_mod1: {
            const Int& d = fx.param;
            if (mod_floor(d, 8) != 5)
                throw integrity_error("d = 1 mod 4 without sqrt must be 5 mod 8");
            Int t_par = (d - 5) / 8;
            // 3+4Z_2 is II-[1].
            {
                FamilyTerm t;
                t.region = {Ball(Int(3), 2, two)};
                t.cycle_level = 3;
                t.cycle_len = 2;
                t.splits = 1;
                terms.push_back(t);
            }
            Valuation vt = vp(t_par, 2);
            if (vt < Valuation::finite(2)) {
                FamilyTerm t;
                t.region = {Ball(Int(1), 2, two)};
                t.cycle_level = 3;
                t.cycle_len = 2;
                t.splits = static_cast<unsigned>(vt.value()) + 2;
                terms.push_back(t);
            } else {
                // Orbit plus the printed (a, b, c) rows.
                Int a, b, c;
                std::uint64_t w = vt.capped(64);
                Valuation vt4 = vp(t_par - 4, 2);
                if (w == 2 && vt4 == Valuation::finite(3)) { a = 1; b = 25; c = 9; }
                else if (w == 2) { a = 1; b = 9; c = 25; }
                else if (w == 3) { a = 9; b = 1; c = 17; }
                else { a = 9; b = 17; c = 1; }

                FixtureOrbit o;
                o.period = 2;
                // 2-periodic points: roots of x^2 + 2x + (2-d).
                Int x1 = quad_root(Int(2), 2 - d, c, 5, max_level);
                o.points = {x1, eval_int_mod(f, x1, pmax)};
                o.stated_location = {Ball(c, 5, two), Ball(eval_int_mod(f, c, ppow(two, 5)), 5, two)};
                check_stated_location(o);
                orbits.push_back(o);
                Int x2full = -2 - x1;  // sum of roots = -2

                FamilyTerm e1;
                e1.region = {Ball(a, 4, two), Ball(eval_int_mod(f, a, ppow(two, 4)), 4, two)};
                e1.cycle_level = 4;
                e1.cycle_len = 2;
                e1.splits = 3;
                terms.push_back(e1);
                FamilyTerm e2;
                e2.region = {Ball(b, 5, two), Ball(eval_int_mod(f, b, ppow(two, 5)), 5, two)};
                e2.cycle_level = 5;
                e2.cycle_len = 2;
                e2.splits = 3;
                terms.push_back(e2);
                // The union over n of (x_i+2^n Z_2) is disjoint only when read
                // as the annular shells x_i+2^{n-1}+2^n Z_2 around the orbit.
                add_tail_terms("E_3: (x_i+2^{n-1}+2^n Z_2), II-[3]", 6,
                               [&, x1, x2full](unsigned n) -> std::optional<FamilyTerm> {
                                   FamilyTerm t;
                                   t.region = {Ball(x1 + ppow(two, n - 1), n, two),
                                               Ball(x2full + ppow(two, n - 1), n, two)};
                                   t.cycle_level = n;
                                   t.cycle_len = 2;
                                   t.splits = 3;
                                   return t;
                               });
            }
            c_region = {Ball(Int(0), 1, two)};
            break;
        }

        case QuadFamily::XSqPlusXMinusD_mod2: {
            const Int& d = fx.param;
            Valuation w = vp(d - 2, 2);
            if (w == Valuation::finite(2)) {
                FamilyTerm t;
                t.region = {Ball(Int(0), 1, two)};
                t.cycle_level = 2;
                t.cycle_len = 2;
                t.splits = 1;
                terms.push_back(t);
            } else {
                // Orbit in one pair of balls, II-[1] on the other pair.
                Int free_center = w == Valuation::finite(3) ? Int(4) : Int(0);
                Int orb_center = w == Valuation::finite(3) ? Int(0) : Int(4);
                // The theorem's roles: v_2(d-2)=3 -> orbit in 8Z_2 u f(0)+8Z_2;
                // v_2(d-2)>=4 -> orbit in 4+8Z_2... as printed it is the reverse:
                // (2): orbit x1 in 4+8Z_2;  (3): orbit x1 in 8Z_2.
                if (w == Valuation::finite(3)) {
                    free_center = 0;
                    orb_center = 4;
                } else {
                    free_center = 4;
                    orb_center = 0;
                }
                FamilyTerm t;
                t.region = {Ball(free_center, 3, two),
                            Ball(eval_int_mod(f, free_center, ppow(two, 3)), 3, two)};
                t.cycle_level = 3;
                t.cycle_len = 2;
                t.splits = 1;
                terms.push_back(t);

                FixtureOrbit o;
                o.period = 2;
                Int x1 = quad_root(Int(2), 2 - d, orb_center, 3, max_level);
                o.points = {x1, eval_int_mod(f, x1, pmax)};
                o.stated_location = {Ball(orb_center, 3, two),
                                     Ball(eval_int_mod(f, orb_center, ppow(two, 3)), 3, two)};
                check_stated_location(o);
                orbits.push_back(o);
                Int x2full = -2 - x1;
                // Shell reading as in the d = 1 (mod 4) case; each shell cycle
                // splits once before growing (the statement's II-[2] counts
                // the split that created the shell).
                add_tail_terms("(x_i+2^{n-1}+2^n Z_2), II-[1]", 4,
                               [&, x1, x2full](unsigned n) -> std::optional<FamilyTerm> {
                                   FamilyTerm t2;
                                   t2.region = {Ball(x1 + ppow(two, n - 1), n, two),
                                                Ball(x2full + ppow(two, n - 1), n, two)};
                                   t2.cycle_level = n;
                                   t2.cycle_len = 2;
                                   t2.splits = 1;
                                   return t2;
                               });
            }
            c_region = {Ball(Int(1), 1, two)};
            break;
        }

        case QuadFamily::XSqPlusXMinusD_mod3: {
            FamilyTerm t;
            t.region = {Ball(Int(1), 1, two)};
            t.cycle_level = 2;
            t.cycle_len = 2;
            t.splits = 0;
            terms.push_back(t);
            c_region = {Ball(Int(0), 1, two)};
            break;
        }
    }

    // Materialize.
    for (const FamilyTerm& t : terms) {
        if (!term_fits(t, max_level)) {
            if (t.required)
                throw precondition_error(
                    "fixture term does not fit within max_level; parameters out of range");
            continue;
        }
        auto comps = fixture_detail::expand_term(f, t);
        dec.B.insert(dec.B.end(), comps.begin(), comps.end());
    }
    for (const FixtureOrbit& o : orbits) {
        PeriodicOrbitApprox orb;
        orb.period = o.period > 1 ? o.period : o.points.size();
        orb.points.reserve(o.points.size());
        for (const Int& pt : o.points) orb.points.push_back(mod_floor(pt, pmax));
        std::rotate(orb.points.begin(), std::min_element(orb.points.begin(), orb.points.end()),
                    orb.points.end());
        orb.period = orb.points.size();
        orb.nature = o.nature;
        IntPoly fp = derivative(f);
        Int a = 1;
        for (const Int& pt : orb.points) a = a * eval_int_mod(fp, pt, pmax) % pmax;
        orb.derivative_valuation = vp(mod_floor(a, pmax), 2);
        dec.A.push_back(std::move(orb));
    }
    for (const Ball& b : c_region) {
        CAssign ca;
        ca.ball = b;
        dec.C.push_back(ca);
    }
    std::sort(dec.B.begin(), dec.B.end(), [](const MinimalComponent& a, const MinimalComponent& b) {
        if (a.level() != b.level()) return a.level() < b.level();
        return a.balls.front() < b.balls.front();
    });
    std::sort(dec.A.begin(), dec.A.end(),
              [](const PeriodicOrbitApprox& a, const PeriodicOrbitApprox& b) {
                  if (a.period != b.period) return a.period < b.period;
                  return a.points.front() < b.points.front();
              });
    return dec;
}

/// Comparison report between the closed form and the engine.
struct FixtureReport {
    bool match = true;
    std::vector<std::string> mismatches;
    std::vector<std::string> notes;
    std::size_t components_compared = 0;
    std::size_t orbits_compared = 0;

    void fail(const std::string& what) {
        match = false;
        mismatches.push_back(what);
    }
};

namespace fixture_detail {
inline std::string ball_list_str(const std::vector<Ball>& balls) {
    std::string s = "{";
    for (std::size_t i = 0; i < balls.size(); ++i) {
        if (i) s += " ";
        s += balls[i].str(2);
    }
    return s + "}";
}
}  // namespace fixture_detail

/// Component-by-component comparison (as residue sets, i.e. canonical merged
/// ball lists), orbit matching at full precision, and basin-region equality.
inline FixtureReport verify_against_engine(const QuadFixture& fx, unsigned max_level,
                                           std::uint64_t budget = default_budget()) {
    FixtureReport rep;
    Decomposition expect = closed_form(fx, max_level);
    Decomposition got = minimal_decomposition(fx.poly, max_level, budget);

    // Components: compare canonical merged forms as sorted lists.
    auto key = [](const MinimalComponent& c) { return c.merged_form; };
    std::vector<std::vector<Ball>> want_keys, got_keys;
    for (const auto& c : expect.B) want_keys.push_back(key(c));
    for (const auto& c : got.B) got_keys.push_back(key(c));
    std::sort(want_keys.begin(), want_keys.end());
    std::sort(got_keys.begin(), got_keys.end());
    for (const auto& w : want_keys)
        if (!std::binary_search(got_keys.begin(), got_keys.end(), w))
            rep.fail("engine missing component " + fixture_detail::ball_list_str(w));
    for (const auto& g : got_keys)
        if (!std::binary_search(want_keys.begin(), want_keys.end(), g))
            rep.fail("engine extra component " + fixture_detail::ball_list_str(g));
    rep.components_compared = want_keys.size();

    // Orbits: periods, natures, and points to full working precision.
    if (expect.A.size() != got.A.size())
        rep.fail("orbit count: expected " + std::to_string(expect.A.size()) + ", engine " +
                 std::to_string(got.A.size()));
    else
        for (std::size_t i = 0; i < expect.A.size(); ++i) {
            const auto& w = expect.A[i];
            const auto& g = got.A[i];
            if (w.period != g.period || w.nature != g.nature || w.points != g.points)
                rep.fail("orbit " + std::to_string(i) + " differs (expected " +
                         w.points.front().str() + " period " + std::to_string(w.period) +
                         ", engine " + g.points.front().str() + " period " +
                         std::to_string(g.period) + ")");
            ++rep.orbits_compared;
        }

    // Basin side: the stated region equals the union of engine C balls plus
    // any attracting-orbit points inside it.
    {
        Int pmax = ppow(Int(2), max_level);
        std::uint64_t total = to_u64(pmax);
        std::vector<std::uint8_t> want(total, 0), have(total, 0);
        for (const auto& ca : expect.C)
            for (const Int& r : ball_residues(ca.ball, 2, max_level)) want[to_u64(r)] = 1;
        for (const auto& orb : expect.A)
            if (orb.nature == OrbitNature::Attracting)
                for (const Int& pt : orb.points) want[to_u64(pt)] = 0;  // orbit points are A
        for (const auto& ca : got.C)
            for (const Int& r : ball_residues(ca.ball, 2, max_level)) have[to_u64(r)] = 1;
        if (want != have) rep.fail("basin region C differs from the stated mapped-in region");
    }
    return rep;
}

/// Fixture family + parameter for a normal form, applying the paper's extra
/// reduction for b = -1-4m with v_2(m) = 0.  Returns nothing (with a reason)
/// for the one conjugacy class the printed case table does not cover.
inline std::optional<QuadFixture> fixture_for(const QuadNormalForm& nf, std::string* why = nullptr) {
    auto reject = [&](const std::string& r) -> std::optional<QuadFixture> {
        if (why) *why = r;
        return std::nullopt;
    };
    switch (nf.kind) {
        case QuadFormKind::XSqMinusLambda:
            return make_fixture(QuadFamily::XSqMinusLambda, nf.param);
        case QuadFormKind::XSqPlusXMinusD: {
            if (nf.sqrt_exists) return reject("sqrt(d) in Z_2: reduce to x^2+bx first");
            Int cls = mod_floor(nf.param, 4);
            if (cls == 0) return make_fixture(QuadFamily::XSqPlusXMinusD_mod0, nf.param);
            if (cls == 1) return make_fixture(QuadFamily::XSqPlusXMinusD_mod1, nf.param);
            if (cls == 2) return make_fixture(QuadFamily::XSqPlusXMinusD_mod2, nf.param);
            return make_fixture(QuadFamily::XSqPlusXMinusD_mod3, nf.param);
        }
        case QuadFormKind::XSqPlusBX: {
            Int b = nf.param;
            if (b == 1) return make_fixture(QuadFamily::XSqPlusX, 0);
            if (mod_floor(b, 4) == 1) {
                Int m = (1 - b) / 4;
                return make_fixture(QuadFamily::XSqPlus1m4mX, m);
            }
            Int m = (-1 - b) / 4;
            if (m == 0)
                return reject("x^2-x: outside the printed case table (m = 0 in the -1-4m family)");
            Valuation v = vp(m, 2);
            if (v == Valuation::finite(0)) {
                // Conjugate by x -> x-4m-2 to m' = -m-1 with v_2(m') >= 1.
                Int m2 = -m - 1;
                if (m2 == 0)
                    return reject("x^2+3x is conjugate to x^2-x: outside the printed case table");
                v = vp(m2, 2);
                if (why) *why = "reduced v_2(m)=0 case via x -> x-4m-2";
                m = m2;
            }
            return make_fixture(v.value() % 2 == 1 ? QuadFamily::XSqPlusNeg1m4mX_odd
                                                   : QuadFamily::XSqPlusNeg1m4mX_even,
                                m);
        }
    }
    return reject("unknown normal form");
}

}  // namespace padicdyn
