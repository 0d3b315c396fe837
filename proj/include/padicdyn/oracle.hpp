#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "padicdyn/ball.hpp"
#include "padicdyn/bigint.hpp"
#include "padicdyn/components.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/induced.hpp"
#include "padicdyn/poly.hpp"

// Brute-force verification by direct iteration on finite rings.  This module
// deliberately re-implements its enumeration instead of reusing the engine's
// cycle machinery, and it never looks at linearization data.

namespace padicdyn {

namespace oracle_detail {

inline std::uint64_t size_u64(const Int& p, unsigned n, std::uint64_t budget, const char* who) {
    Int size = ppow(p, n);
    if (size > Int(budget))
        throw resource_error(std::string(who) + ": p^n = " + size.str() + " exceeds budget " +
                             std::to_string(budget));
    return to_u64(size);
}

inline std::vector<std::uint64_t> successor_table(const IntPoly& f, unsigned n,
                                                  std::uint64_t m) {
    f.require_level(n);
    std::vector<std::uint64_t> coeffs;
    coeffs.reserve(f.coeffs.size());
    for (const Int& c : f.coeffs) coeffs.push_back(to_u64(mod_floor(c, Int(m))));
    std::vector<std::uint64_t> succ(m);
    for (std::uint64_t x = 0; x < m; ++x) {
        unsigned __int128 acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = (acc * x + *it) % m;
        succ[x] = static_cast<std::uint64_t>(acc);
    }
    return succ;
}

/// Cycle membership: cycle_no[x] >= 0 iff x is on a cycle; cycle lengths
/// and a representative per cycle.
struct CycleScan {
    std::vector<std::int64_t> cycle_no;
    std::vector<std::uint64_t> length;  // per cycle
    std::vector<std::uint64_t> rep;     // smallest member per cycle
};

inline CycleScan scan_cycles(const std::vector<std::uint64_t>& succ) {
    std::uint64_t m = succ.size();
    CycleScan cs;
    cs.cycle_no.assign(m, -1);
    std::vector<std::uint64_t> mark(m, 0);
    std::vector<std::uint64_t> path;
    std::uint64_t pass = 0;
    for (std::uint64_t start = 0; start < m; ++start) {
        if (mark[start]) continue;
        ++pass;
        path.clear();
        std::uint64_t x = start;
        while (mark[x] == 0) {
            mark[x] = pass;
            path.push_back(x);
            x = succ[x];
        }
        if (mark[x] == pass) {
            std::uint64_t id = cs.length.size();
            std::uint64_t len = 0;
            std::uint64_t small = x;
            std::uint64_t y = x;
            do {
                cs.cycle_no[y] = static_cast<std::int64_t>(id);
                small = std::min(small, y);
                y = succ[y];
                ++len;
            } while (y != x);
            cs.length.push_back(len);
            cs.rep.push_back(small);
        }
    }
    return cs;
}

}  // namespace oracle_detail

/// Eventual-cycle assignment of every residue mod p^n.
struct BasinReport {
    unsigned level = 1;
    std::vector<std::uint64_t> cycle_lengths;          // per cycle id
    std::vector<std::vector<Int>> cycles;              // members, smallest first
    std::vector<std::uint64_t> eventual_cycle;         // per residue
    std::vector<std::uint64_t> transient_length;       // per residue, 0 on cycle
};

/// Full basin structure by iterated successor traversal.
inline BasinReport basin_bruteforce(const IntPoly& f, const Int& p, unsigned n,
                                    std::uint64_t budget = default_budget()) {
    if (f.prime != p) throw precondition_error("basin_bruteforce: prime mismatch");
    std::uint64_t m = oracle_detail::size_u64(p, n, budget, "basin_bruteforce");
    auto succ = oracle_detail::successor_table(f, n, m);
    auto cs = oracle_detail::scan_cycles(succ);

    BasinReport rep;
    rep.level = n;
    rep.cycle_lengths = cs.length;
    rep.cycles.resize(cs.length.size());
    for (std::size_t id = 0; id < cs.length.size(); ++id) {
        std::uint64_t y = cs.rep[id];
        do {
            rep.cycles[id].emplace_back(y);
            y = succ[y];
        } while (y != cs.rep[id]);
    }

    rep.eventual_cycle.assign(m, 0);
    rep.transient_length.assign(m, 0);
    std::vector<std::uint8_t> done(m, 0);
    for (std::uint64_t r = 0; r < m; ++r)
        if (cs.cycle_no[r] >= 0) {
            rep.eventual_cycle[r] = static_cast<std::uint64_t>(cs.cycle_no[r]);
            done[r] = 1;
        }
    std::vector<std::uint64_t> path;
    for (std::uint64_t r = 0; r < m; ++r) {
        if (done[r]) continue;
        path.clear();
        std::uint64_t x = r;
        while (!done[x]) {
            path.push_back(x);
            x = succ[x];
        }
        std::uint64_t cyc = rep.eventual_cycle[x];
        std::uint64_t steps = rep.transient_length[x];
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            ++steps;
            rep.eventual_cycle[*it] = cyc;
            rep.transient_length[*it] = steps;
            done[*it] = 1;
        }
    }
    return rep;
}

/// True iff the residues of E mod p^n form a single cycle of f_n
/// (Theorem: minimality is levelwise transitivity).  E must be invariant.
inline bool transitive_mod(const IntPoly& f, const std::vector<Ball>& E, unsigned n,
                           std::uint64_t budget = default_budget()) {
    if (E.empty()) throw precondition_error("transitive_mod: empty set");
    f.require_level(n);
    const Int& p = f.prime;
    Int pn = ppow(p, n);

    std::vector<Int> residues;
    for (const Ball& b : E) {
        auto rs = ball_residues(b, p, n);
        residues.insert(residues.end(), rs.begin(), rs.end());
        if (residues.size() > budget) throw resource_error("transitive_mod: set exceeds budget");
    }
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());

    // Invariance and successor indices.
    std::vector<std::size_t> succ(residues.size());
    for (std::size_t i = 0; i < residues.size(); ++i) {
        Int y = eval_int_mod(f, residues[i], pn);
        auto it = std::lower_bound(residues.begin(), residues.end(), y);
        if (it == residues.end() || *it != y)
            throw integrity_error("transitive_mod: E is not invariant at level " +
                                  std::to_string(n) + " (image " + y.str() + " escapes)");
        succ[i] = static_cast<std::size_t>(it - residues.begin());
    }

    // Single-cycle check: walk from 0.
    std::size_t x = 0, count = 0;
    do {
        x = succ[x];
        ++count;
    } while (x != 0 && count <= residues.size());
    return count == residues.size() && x == 0;
}

/// Transitivity at every level from the component's own level through n_max
/// (capped by the enumeration budget).
inline bool is_minimal_bruteforce(const IntPoly& f, const MinimalComponent& c, unsigned n_max,
                                  std::uint64_t budget = default_budget()) {
    unsigned start = c.level();
    for (unsigned n = start; n <= n_max; ++n) {
        Int count = Int(c.balls.size()) * ppow(f.prime, n - start);
        if (count > Int(budget)) break;  // oracle certifies only up to its cap
        if (n > f.known_precision) break;
        if (!transitive_mod(f, c.balls, n, budget)) return false;
    }
    return true;
}

/// Finite-level shadows of periodic points: residues on a k-cycle of f_n
/// (k <= k_max) whose reduction mod p^{n-1} is a cycle of the same length.
/// The persistence filter discards cycles freshly created by growth, whose
/// lengths are not periods of f on Z_p.
inline std::vector<std::pair<Int, std::uint64_t>> periodic_points_bruteforce(
    const IntPoly& f, const Int& p, unsigned n, std::uint64_t k_max,
    std::uint64_t budget = default_budget()) {
    if (f.prime != p) throw precondition_error("periodic_points_bruteforce: prime mismatch");
    std::uint64_t m = oracle_detail::size_u64(p, n, budget, "periodic_points_bruteforce");
    auto succ = oracle_detail::successor_table(f, n, m);
    auto cs = oracle_detail::scan_cycles(succ);

    std::vector<std::uint8_t> persistent(cs.length.size(), 1);
    if (n >= 2) {
        std::uint64_t m0 = m / to_u64(p);
        auto succ0 = oracle_detail::successor_table(f, n - 1, m0);
        auto cs0 = oracle_detail::scan_cycles(succ0);
        for (std::size_t id = 0; id < cs.length.size(); ++id) {
            std::uint64_t below = cs.rep[id] % m0;
            persistent[id] =
                cs0.cycle_no[below] >= 0 &&
                cs0.length[static_cast<std::size_t>(cs0.cycle_no[below])] == cs.length[id];
        }
    }

    std::vector<std::pair<Int, std::uint64_t>> out;
    for (std::uint64_t r = 0; r < m; ++r) {
        if (cs.cycle_no[r] < 0) continue;
        std::size_t id = static_cast<std::size_t>(cs.cycle_no[r]);
        if (!persistent[id]) continue;
        if (cs.length[id] <= k_max) out.emplace_back(Int(r), cs.length[id]);
    }
    return out;
}

}  // namespace padicdyn
