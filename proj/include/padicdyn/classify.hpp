#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "padicdyn/bigint.hpp"
#include "padicdyn/core.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/induced.hpp"
#include "padicdyn/poly.hpp"
#include "padicdyn/valuation.hpp"

namespace padicdyn {

/// Linearization data of a cycle: a_n = (f^k)'(x), b_n = (f^k(x)-x)/p^n,
/// and the valuations A_n = v_p(a_n - 1), B_n = v_p(b_n).  Values are held
/// at working precision p^W, W = 2n+4; decisions cap them at n.
struct CycleData {
    unsigned level = 1;
    std::uint64_t length = 1;
    unsigned work_precision = 0;  // W: a_mod, b_mod live mod p^W
    Int a_mod;                    // from the canonical (smallest) cycle point
    Int b_mod;
    Valuation A;  // v_p(a_n - 1) at working precision
    Valuation B;  // v_p(b_n) at working precision

    // Exact integer periodic orbit through the cycle, when one exists.
    bool exact_periodic = false;
    std::vector<Int> exact_orbit;  // k signed integers, starts at the detected point
    Int exact_a = 0;               // exact (f^k)' at the exact point

    Int a_mod_level(const Int& p) const { return mod_floor(a_mod, ppow(p, level)); }
    Int b_mod_level(const Int& p) const { return mod_floor(b_mod, ppow(p, level)); }

    /// b_n at every cycle point (mod p^n), via b_n(f(x)) = b_n(x) f'(x).
    std::vector<Int> b_per_point;
};

namespace detail {

/// Escape radius: once |y| exceeds it, |f(y)| > |y| strictly and the orbit
/// can never return.
inline Int escape_radius(const IntPoly& f) {
    Int m = 0;
    for (std::size_t i = 0; i + 1 < f.coeffs.size(); ++i) m += abs(f.coeffs[i]);
    return m + 2;
}

/// If some integer z with z = start (mod p^n), z in {start, start - p^n},
/// satisfies f^k(z) = z exactly, return the orbit.
inline std::optional<std::vector<Int>> exact_orbit_from(const IntPoly& f, const Int& start,
                                                        const Int& pn, std::uint64_t k) {
    if (f.degree() < 2) return std::nullopt;
    Int bound = escape_radius(f);
    for (Int cand : {start, Int(start - pn)}) {
        Int y = cand;
        std::vector<Int> orbit{y};
        bool escaped = false;
        for (std::uint64_t j = 0; j < k; ++j) {
            y = eval_int(f, y);
            if (abs(y) > bound && abs(y) > abs(cand)) {
                escaped = true;
                break;
            }
            if (j + 1 < k) orbit.push_back(y);
        }
        if (!escaped && y == cand) return orbit;
    }
    return std::nullopt;
}

}  // namespace detail

/// Working precision exponent for level-n cycle data.
inline unsigned work_precision_for(unsigned n) { return 2 * n + 4; }

/// a_n from a given base point, mod p^n (Eq.-level op; representative must
/// lie on the cycle mod p^n).
inline Int compute_an(const IntPoly& f, const Cycle& c, const Int& base) {
    f.require_level(c.level);
    const Int& p = f.prime;
    Int pn = ppow(p, c.level);
    IntPoly fp = derivative(f);
    Int a = 1, y = mod_floor(base, pn);
    for (std::size_t j = 0; j < c.length(); ++j) {
        a = a * eval_int_mod(fp, y, pn) % pn;
        y = eval_int_mod(f, y, pn);
    }
    return mod_floor(a, pn);
}

inline Int compute_an(const IntPoly& f, const Cycle& c) { return compute_an(f, c, c.points.front()); }

/// b_n = (f^k(x) - x)/p^n as an exact quotient, reported mod p^n.  x may be
/// any residue of the lifted set X (any level >= n point over the cycle).
inline Int compute_bn(const IntPoly& f, const Cycle& c, const Int& x) {
    const Int& p = f.prime;
    unsigned n = c.level;
    unsigned W = work_precision_for(n);
    f.require_level(n);
    Int pn = ppow(p, n);
    Int pnW = ppow(p, n + W);
    Int y = iterate_int_mod(f, c.length(), mod_floor(x, pnW), pnW);
    Int diff = mod_floor(y - x, pnW);
    if (diff % pn != 0)
        throw integrity_error("compute_bn: f^k(x) - x not divisible by p^n; x is not over a cycle of f_n");
    return mod_floor(diff / pn, pn);
}

/// Full cycle data at working precision, with exact-orbit detection.
inline CycleData compute_cycle_data(const IntPoly& f, const Cycle& c) {
    const Int& p = f.prime;
    unsigned n = c.level;
    f.require_level(n);
    Int pn = ppow(p, n);
    std::uint64_t k = c.length();

    // Integrity: recompute the successor chain.
    for (std::size_t i = 0; i < k; ++i) {
        Int next = eval_int_mod(f, c.points[i], pn);
        if (next != c.points[(i + 1) % k])
            throw integrity_error("cycle integrity: f_n(" + c.points[i].str() + ") = " + next.str() +
                                  " but cycle lists " + c.points[(i + 1) % k].str());
    }

    CycleData d;
    d.level = n;
    d.length = k;
    unsigned W = work_precision_for(n);
    d.work_precision = W;
    Int pW = ppow(p, W);
    Int pnW = ppow(p, n + W);

    IntPoly fp = derivative(f);
    Int a = 1;
    Int y = c.points.front();
    for (std::uint64_t j = 0; j < k; ++j) {
        a = a * eval_int_mod(fp, y, pW) % pW;
        y = eval_int_mod(f, y, pnW);
    }
    d.a_mod = mod_floor(a, pW);
    Int diff = mod_floor(y - c.points.front(), pnW);
    if (diff % pn != 0) throw integrity_error("cycle data: displacement not divisible by p^n");
    d.b_mod = mod_floor(diff / pn, pW);
    d.A = vp(mod_floor(d.a_mod - 1, pW), p);
    d.B = vp(d.b_mod, p);

    d.b_per_point.resize(k);
    d.b_per_point[0] = mod_floor(d.b_mod, pn);
    for (std::uint64_t i = 1; i < k; ++i)
        d.b_per_point[i] =
            mod_floor(d.b_per_point[i - 1] * eval_int_mod(fp, c.points[i - 1], pn), pn);

    if (auto orbit = detail::exact_orbit_from(f, c.points.front(), pn, k)) {
        d.exact_periodic = true;
        d.exact_orbit = *orbit;
        d.exact_a = 1;
        for (const Int& z : d.exact_orbit) d.exact_a *= eval_int(fp, z);
        d.B = Valuation::infinity();
        d.A = vp(d.exact_a - 1, p);
    }
    return d;
}

/// The four behaviors of f_{n+1} on the lifted set, p >= 3.
enum class OddKind { Grows, Splits, PartiallySplits, GrowsTails };

struct BehaviorOdd {
    OddKind kind;
    std::uint64_t d = 0;  // order of a_n in (Z/pZ)^*, for PartiallySplits

    friend bool operator==(const BehaviorOdd& x, const BehaviorOdd& y) {
        return x.kind == y.kind && x.d == y.d;
    }
    std::string str() const {
        switch (kind) {
            case OddKind::Grows: return "grows";
            case OddKind::Splits: return "splits";
            case OddKind::PartiallySplits: return "partially splits (d=" + std::to_string(d) + ")";
            case OddKind::GrowsTails: return "grows tails";
        }
        return "?";
    }
};

/// The p = 2 refinement by a_n mod 4.
enum class BehaviorTwo { StronglyGrows, WeaklyGrows, StronglySplits, WeaklySplits, GrowsTails };

inline std::string behavior_two_str(BehaviorTwo b) {
    switch (b) {
        case BehaviorTwo::StronglyGrows: return "strongly grows";
        case BehaviorTwo::WeaklyGrows: return "weakly grows";
        case BehaviorTwo::StronglySplits: return "strongly splits";
        case BehaviorTwo::WeaklySplits: return "weakly splits";
        case BehaviorTwo::GrowsTails: return "grows tails";
    }
    return "?";
}

using Behavior = std::variant<BehaviorOdd, BehaviorTwo>;

inline std::string behavior_str(const Behavior& b) {
    if (std::holds_alternative<BehaviorOdd>(b)) return std::get<BehaviorOdd>(b).str();
    return behavior_two_str(std::get<BehaviorTwo>(b));
}

inline BehaviorOdd classify_odd(const IntPoly& f, const CycleData& d);

inline BehaviorOdd classify_odd(const IntPoly& f, const Cycle& c) {
    if (f.prime < 3) throw precondition_error("classify_odd requires p >= 3");
    return classify_odd(f, compute_cycle_data(f, c));
}

inline BehaviorOdd classify_odd(const IntPoly& f, const CycleData& d) {
    Int a = mod_floor(d.a_mod, f.prime);
    Int b = d.exact_periodic ? Int(0) : mod_floor(d.b_mod, f.prime);
    if (a == 0) return {OddKind::GrowsTails, 0};
    if (a == 1) return {b != 0 ? OddKind::Grows : OddKind::Splits, 0};
    return {OddKind::PartiallySplits, mul_order(a, f.prime)};
}

inline BehaviorTwo classify_two_from(const CycleData& d) {
    if (d.level < 2)
        throw precondition_error("classify_two: level-1 2-adic cycles are lifted to level 2 first");
    Int a4 = mod_floor(d.a_mod, 4);
    bool b_odd = !d.exact_periodic && mod_floor(d.b_mod, 2) == 1;
    if (a4 == 0 || a4 == 2) return BehaviorTwo::GrowsTails;
    if (a4 == 1) return b_odd ? BehaviorTwo::StronglyGrows : BehaviorTwo::StronglySplits;
    return b_odd ? BehaviorTwo::WeaklyGrows : BehaviorTwo::WeaklySplits;
}

inline BehaviorTwo classify_two(const IntPoly& f, const Cycle& c) {
    if (f.prime != 2) throw precondition_error("classify_two requires p = 2");
    return classify_two_from(compute_cycle_data(f, c));
}

inline Behavior classify(const IntPoly& f, const CycleData& d) {
    if (f.prime == 2) return classify_two_from(d);
    return classify_odd(f, d);
}

/// Decides the level-1 -> level-2 step for a growing cycle at p = 3:
/// the unique lift grows iff b_1(x) != g''(x)/2 (mod 3), g = f^k.
/// Evaluated at every cycle point; a disagreement (which the theory rules
/// out) raises an integrity error rather than guessing.
inline bool growth_test_p3_level1(const IntPoly& f, const Cycle& c) {
    if (f.prime != 3) throw precondition_error("growth_test_p3_level1 requires p = 3");
    if (c.level != 1) throw precondition_error("growth_test_p3_level1 requires a level-1 cycle");
    IntPoly g = iterate_poly(f, c.length(), Int(9));
    IntPoly g2 = derivative(derivative(g));
    std::optional<bool> verdict;
    for (const Int& x : c.points) {
        Int b1 = compute_bn(f, c, x);
        // g''(x)/2 mod 3: 2 is invertible, 1/2 = 2 (mod 3).
        Int rhs = mod_floor(eval_int_mod(g2, x, 3) * 2, 3);
        bool grows = mod_floor(b1, 3) != rhs;
        if (verdict && *verdict != grows)
            throw integrity_error("growth_test_p3_level1: cycle points disagree (" + c.str() + ")");
        verdict = grows;
    }
    return *verdict;
}

}  // namespace padicdyn
