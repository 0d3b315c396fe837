#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "padicdyn/components.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/induced.hpp"
#include "padicdyn/lift.hpp"
#include "padicdyn/poly.hpp"

namespace padicdyn {

enum class TargetKind { Orbit, Component, Undecided, Unresolved };

/// A basin ball and what it is attracted to.
struct CAssign {
    Ball ball;
    TargetKind kind = TargetKind::Unresolved;
    std::size_t index = 0;
};

/// The minimal decomposition Z_p = A ⊔ B ⊔ C at a finite level budget.
struct Decomposition {
    IntPoly poly;
    Int prime = 2;
    unsigned max_level = 2;
    std::vector<PeriodicOrbitApprox> A;
    std::vector<MinimalComponent> B;
    std::vector<CAssign> C;
    std::vector<UndecidedRegion> undecided;
    std::vector<LiftNode> forest;  // one lift tree per level-2 cycle
    std::vector<std::string> diagnostics;
};

namespace detail {

/// Resolve where a basin ball's center ends up, by iteration mod p^max.
inline void resolve_target(const Decomposition& dec, CAssign& c) {
    const Int& p = dec.prime;
    Int pmax = ppow(p, dec.max_level);
    Int y = mod_floor(c.ball.center, pmax);
    std::uint64_t steps = dec.max_level * to_u64(p) + to_u64(p) * to_u64(p) + 64;
    for (std::uint64_t s = 0; s <= steps; ++s) {
        for (std::size_t i = 0; i < dec.B.size(); ++i)
            for (const Ball& b : dec.B[i].balls)
                if (ball_contains(b, y, p)) {
                    c.kind = TargetKind::Component;
                    c.index = i;
                    return;
                }
        for (std::size_t i = 0; i < dec.undecided.size(); ++i)
            if (ball_contains(dec.undecided[i].ball, y, p)) {
                c.kind = TargetKind::Undecided;
                c.index = i;
                return;
            }
        for (std::size_t i = 0; i < dec.A.size(); ++i) {
            const PeriodicOrbitApprox& orb = dec.A[i];
            if (orb.nature == OrbitNature::Indifferent) {
                for (const Int& pt : orb.points)
                    if (pt == y) {
                        c.kind = TargetKind::Orbit;
                        c.index = i;
                        return;
                    }
            } else {
                for (const Ball& b : orb.region)
                    if (ball_contains(b, y, p)) {
                        c.kind = TargetKind::Orbit;
                        c.index = i;
                        return;
                    }
            }
        }
        y = eval_int_mod(dec.poly, y, pmax);
    }
    c.kind = TargetKind::Unresolved;
}

}  // namespace detail

/// Assemble the full decomposition: cycles of f_2 fed through the lift
/// engine, the level-2 tails into C, deterministic ordering throughout.
inline Decomposition minimal_decomposition(const IntPoly& f, unsigned max_level,
                                           std::uint64_t budget = default_budget()) {
    if (f.degree() < 2) throw precondition_error("minimal_decomposition requires deg f >= 2");
    if (max_level < 2) throw precondition_error("max_level must be at least 2");
    f.require_level(max_level);

    Decomposition dec;
    dec.poly = f;
    dec.prime = f.prime;
    dec.max_level = max_level;

    FunctionalGraph g2 = find_cycles(f, 2, budget);

    std::vector<std::pair<Ball, std::size_t>> basin_balls;
    for (const Cycle& c : g2.cycles) {
        AnalyzeReport rep = analyze_cycle(f, c, max_level, budget);
        std::size_t orbit_off = dec.A.size();
        dec.A.insert(dec.A.end(), rep.orbits.begin(), rep.orbits.end());
        dec.B.insert(dec.B.end(), rep.components.begin(), rep.components.end());
        dec.undecided.insert(dec.undecided.end(), rep.undecided.begin(), rep.undecided.end());
        for (auto& [ball, idx] : rep.basin_balls) basin_balls.emplace_back(ball, orbit_off + idx);
        dec.diagnostics.insert(dec.diagnostics.end(), rep.diagnostics.begin(),
                               rep.diagnostics.end());
        dec.forest.push_back(std::move(rep.tree));
    }

    // Level-2 tails are basin balls with a target found by iteration.
    std::vector<CAssign> pending;
    for (std::uint64_t r = 0; r < g2.size(); ++r) {
        if (g2.on_cycle(r)) continue;
        CAssign ca;
        ca.ball = Ball(Int(r), 2, f.prime);
        pending.push_back(ca);
    }
    // Grows-tails interiors come with their orbit already known.
    std::sort(dec.B.begin(), dec.B.end(), [](const MinimalComponent& a, const MinimalComponent& b) {
        if (a.level() != b.level()) return a.level() < b.level();
        return a.balls.front() < b.balls.front();
    });
    std::sort(dec.A.begin(), dec.A.end(),
              [](const PeriodicOrbitApprox& a, const PeriodicOrbitApprox& b) {
                  if (a.period != b.period) return a.period < b.period;
                  return a.points.front() < b.points.front();
              });
    std::sort(dec.undecided.begin(), dec.undecided.end(),
              [](const UndecidedRegion& a, const UndecidedRegion& b) { return a.ball < b.ball; });

    // Orbit indices moved during sorting: rebuild grows-tails basin targets
    // by matching regions.
    for (auto& [ball, idx] : basin_balls) {
        CAssign ca;
        ca.ball = ball;
        ca.kind = TargetKind::Unresolved;
        // Find the orbit whose region contains the ball.
        for (std::size_t i = 0; i < dec.A.size(); ++i) {
            if (dec.A[i].nature != OrbitNature::Attracting) continue;
            for (const Ball& rb : dec.A[i].region)
                if (rb.level <= ball.level && mod_floor(ball.center - rb.center, ppow(f.prime, rb.level)) == 0) {
                    ca.kind = TargetKind::Orbit;
                    ca.index = i;
                    break;
                }
            if (ca.kind == TargetKind::Orbit) break;
        }
        dec.C.push_back(ca);
    }
    for (CAssign& ca : pending) {
        detail::resolve_target(dec, ca);
        dec.C.push_back(ca);
    }
    std::sort(dec.C.begin(), dec.C.end(),
              [](const CAssign& a, const CAssign& b) { return a.ball < b.ball; });
    return dec;
}

/// Spec-facing wrapper that takes the prime explicitly.
inline Decomposition minimal_decomposition(const IntPoly& f, const Int& p, unsigned max_level,
                                           std::uint64_t budget = default_budget()) {
    if (f.prime != p) throw precondition_error("prime does not match the polynomial's prime");
    return minimal_decomposition(f, max_level, budget);
}

/// p_s = Card(component mod p^s) for s = 1..s_max, with the shape check.
inline std::vector<Int> structure_sequence(const MinimalComponent& c, const Int& p,
                                           unsigned s_max) {
    std::vector<Int> seq = structure_sequence_of_balls(c.balls, p, s_max);
    if (s_max >= c.level() + 1) validate_structure_shape(seq, p);
    return seq;
}

/// Theorem: admissible periods of periodic orbits.
inline std::vector<std::uint64_t> possible_periods(const Int& p) {
    require_prime(p);
    if (p == 2) return {1, 2, 4};
    if (p == 3) return {1, 2, 3, 4, 6, 9};
    std::set<std::uint64_t> out;
    std::uint64_t pm1 = to_u64(p - 1);
    for (std::uint64_t a = 1; a <= pm1; ++a) {
        if (pm1 % a != 0) continue;
        for (std::uint64_t b = 1; b <= to_u64(p); ++b) out.insert(a * b);
    }
    return {out.begin(), out.end()};
}

/// p = 2: a 4-periodic orbit requires f_1 to be a permutation of Z/2Z.
/// A false result certifies no 4-periodic orbit exists.
inline bool period4_precondition_p2(const IntPoly& f) {
    if (f.prime != 2) throw precondition_error("period4_precondition_p2 requires p = 2");
    Int f0 = mod_floor(eval_int_mod(f, 0, 2), 2);
    Int f1 = mod_floor(eval_int_mod(f, 1, 2), 2);
    return f0 != f1;
}

/// A component of B within distance p^-n of an indifferent orbit and of
/// diameter at most p^-n (Corollary: components accumulate at indifferent
/// orbits).  Deterministic: smallest such component in the B ordering.
inline std::optional<MinimalComponent> components_near_orbit(const Decomposition& dec,
                                                             const PeriodicOrbitApprox& orbit,
                                                             unsigned n) {
    if (orbit.nature != OrbitNature::Indifferent)
        throw precondition_error("components_near_orbit requires an indifferent orbit");
    if (n + 2 > dec.max_level)
        throw precondition_error("components_near_orbit: n too close to max_level");
    const Int& p = dec.prime;
    for (const MinimalComponent& c : dec.B) {
        if (c.level() < n) continue;  // diameter > p^-n
        bool close = false;
        for (const Ball& b : c.balls) {
            for (const Int& pt : orbit.points) {
                if (mod_floor(b.center - pt, ppow(p, n)) == 0) {
                    close = true;
                    break;
                }
            }
            if (close) break;
        }
        if (close) return c;
    }
    return std::nullopt;
}

/// Exact partition check at level max_level: every residue lies in exactly
/// one of A's orbit points, B's component balls, C's basin balls, or the
/// undecided balls.  Returns an error description or empty on success.
inline std::string verify_partition(const Decomposition& dec,
                                    std::uint64_t budget = default_budget()) {
    Int pmax = ppow(dec.prime, dec.max_level);
    if (pmax > Int(budget)) return "partition check exceeds budget";
    std::uint64_t total = to_u64(pmax);
    std::vector<std::uint8_t> owner(total, 0);
    auto paint = [&](const Ball& b, const char* who) -> std::string {
        for (const Int& r : ball_residues(b, dec.prime, dec.max_level)) {
            std::uint64_t i = to_u64(r);
            if (owner[i]) return "residue " + r.str() + " claimed twice (" + who + ")";
            owner[i] = 1;
        }
        return "";
    };
    std::string err;
    for (const auto& orb : dec.A)
        for (const Int& pt : orb.points) {
            std::uint64_t i = to_u64(pt);
            if (owner[i]) return "orbit point " + pt.str() + " claimed twice";
            owner[i] = 1;
        }
    for (const auto& comp : dec.B)
        for (const Ball& b : comp.balls)
            if (!(err = paint(b, "component")).empty()) return err;
    for (const auto& ca : dec.C)
        if (!(err = paint(ca.ball, "basin")).empty()) return err;
    for (const auto& u : dec.undecided)
        if (!(err = paint(u.ball, "undecided")).empty()) return err;
    for (std::uint64_t i = 0; i < total; ++i)
        if (!owner[i]) return "residue " + std::to_string(i) + " unassigned";
    return "";
}

}  // namespace padicdyn
