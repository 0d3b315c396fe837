#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padicdyn/ball.hpp"
#include "padicdyn/bigint.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/valuation.hpp"

namespace padicdyn {

/// (k, d, growth_start) extracted from a structure sequence.
struct StructureShape {
    std::uint64_t k = 1;
    std::uint64_t d = 1;
    unsigned growth_start = 1;
};

/// Check a structure sequence against the admissible shape: quotients
/// q_s = p_{s+1}/p_s lie in {1, d, p} with d | p-1 appearing at most once and
/// before any growth; growth phases are as the odometer case analysis allows
/// (a single interior p-step only for p in {2,3}, then a final all-p tail).
inline StructureShape validate_structure_shape(const std::vector<Int>& seq, const Int& p) {
    if (seq.empty()) throw precondition_error("empty structure sequence");
    StructureShape shape;
    if (seq[0] > p) throw integrity_error("structure sequence: k = " + seq[0].str() + " > p");
    shape.k = to_u64(seq[0]);

    std::vector<Int> q;
    for (std::size_t s = 1; s < seq.size(); ++s) {
        if (seq[s] % seq[s - 1] != 0)
            throw integrity_error("structure sequence: p_{s+1} not a multiple of p_s");
        q.push_back(seq[s] / seq[s - 1]);
    }
    if (q.empty()) throw precondition_error("structure sequence too short");

    long d_pos = -1;
    long first_p = -1;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 1) continue;
        if (q[i] == p) {
            if (first_p < 0) first_p = static_cast<long>(i);
            continue;
        }
        if (q[i] < p && (p - 1) % q[i] == 0) {
            if (d_pos >= 0) throw integrity_error("structure sequence: two d-jumps");
            d_pos = static_cast<long>(i);
            shape.d = to_u64(q[i]);
            continue;
        }
        throw integrity_error("structure sequence: quotient " + q[i].str() + " not in {1, d, p}");
    }
    if (d_pos >= 0 && first_p >= 0 && d_pos > first_p)
        throw integrity_error("structure sequence: d-jump after a growth step");

    // Maximal runs of q == p.
    std::vector<std::pair<std::size_t, std::size_t>> runs;  // [begin, end)
    for (std::size_t i = 0; i < q.size();) {
        if (q[i] != p) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < q.size() && q[j] == p) ++j;
        runs.emplace_back(i, j);
        i = j;
    }
    if (runs.empty() || runs.back().second != q.size())
        throw integrity_error("structure sequence: no terminal growth phase");
    if (runs.size() > 2) throw integrity_error("structure sequence: more than two growth phases");
    if (runs.size() == 2) {
        if (p > 3) throw integrity_error("structure sequence: interior growth phase at p >= 5");
        if (runs[0].second - runs[0].first != 1)
            throw integrity_error("structure sequence: interior growth phase longer than one step");
    }
    shape.growth_start = static_cast<unsigned>(runs.back().first) + 1;  // q_s is level s
    return shape;
}

/// A clopen invariant union of balls on which f is minimal.
struct MinimalComponent {
    std::vector<Ball> balls;        // cycle balls at the starting (nominal) level
    std::vector<Ball> merged_form;  // canonical maximal-ball representation
    std::uint64_t k = 1;            // level-1 cycle length
    std::uint64_t d = 1;            // intermediate multiplier, d | p-1
    unsigned growth_start = 1;      // level from which the cycle grows forever
    std::vector<Int> structure_sequence;  // p_s for s = 1 .. level+2

    unsigned level() const { return balls.empty() ? 0 : balls.front().level; }
};

/// p_s = Card(E mod p^s) for a finite union of same-level balls.
inline std::vector<Int> structure_sequence_of_balls(const std::vector<Ball>& balls, const Int& p,
                                                    unsigned s_max) {
    if (balls.empty()) throw precondition_error("structure sequence of empty ball set");
    unsigned L = balls.front().level;
    std::vector<Int> seq;
    Int count = 0;
    for (unsigned s = 1; s <= s_max; ++s) {
        if (s <= L) {
            std::vector<Int> centers;
            Int ps = ppow(p, s);
            centers.reserve(balls.size());
            for (const Ball& b : balls) centers.push_back(mod_floor(b.center, ps));
            std::sort(centers.begin(), centers.end());
            centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
            count = Int(centers.size());
        } else {
            count *= p;
        }
        seq.push_back(count);
    }
    return seq;
}

/// Build a component from its cycle balls, deriving and checking the
/// structure data.
inline MinimalComponent make_component(const std::vector<Ball>& balls, const Int& p) {
    MinimalComponent c;
    c.balls = balls;
    std::sort(c.balls.begin(), c.balls.end());
    unsigned L = c.balls.front().level;
    c.structure_sequence = structure_sequence_of_balls(c.balls, p, L + 2);
    StructureShape shape = validate_structure_shape(c.structure_sequence, p);
    c.k = shape.k;
    c.d = shape.d;
    c.growth_start = shape.growth_start;
    c.merged_form = merge_balls(c.balls, p);
    return c;
}

enum class OrbitNature { Attracting, Indifferent };

/// Finite-precision shadow of a periodic orbit of f on Z_p.
struct PeriodicOrbitApprox {
    std::uint64_t period = 1;
    std::vector<Int> points;  // one residue mod p^max_level per orbit point
    OrbitNature nature = OrbitNature::Indifferent;
    Valuation derivative_valuation;  // v_p((f^k)'(x))
    unsigned found_level = 2;        // level of the cycle that revealed the orbit
    std::vector<Ball> region;        // that cycle's balls
};

struct UndecidedRegion {
    Ball ball;
    std::string diagnostic;
};

}  // namespace padicdyn
