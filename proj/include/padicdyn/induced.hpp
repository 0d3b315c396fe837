#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "padicdyn/ball.hpp"
#include "padicdyn/bigint.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/poly.hpp"

namespace padicdyn {

/// Default enumeration budget (residue count), overridable per call and via
/// the PADIC_BUDGET environment variable (read by the CLI).
inline std::uint64_t default_budget() { return std::uint64_t(1) << 24; }

/// A k-cycle of the induced map f_n, points rotated so the numerically
/// smallest residue comes first.
struct Cycle {
    unsigned level = 1;
    std::vector<Int> points;

    std::size_t length() const { return points.size(); }

    void canonicalize() {
        auto it = std::min_element(points.begin(), points.end());
        std::rotate(points.begin(), it, points.end());
    }

    friend bool operator==(const Cycle& a, const Cycle& b) {
        return a.level == b.level && a.points == b.points;
    }
    friend bool operator<(const Cycle& a, const Cycle& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.points.front() < b.points.front();
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i) s += ",";
            s += points[i].str();
        }
        return s + ")@" + std::to_string(level);
    }
};

/// The k balls x_i + p^n Z_p of a cycle.
inline std::vector<Ball> ball_set_of(const Cycle& c, const Int& p) {
    std::vector<Ball> out;
    out.reserve(c.points.size());
    for (const Int& x : c.points) out.emplace_back(x, c.level, p);
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

/// Coefficients reduced into u64, given modulus fits.
inline std::vector<std::uint64_t> reduce_coeffs_u64(const IntPoly& f, std::uint64_t m) {
    std::vector<std::uint64_t> c;
    c.reserve(f.coeffs.size());
    for (const Int& a : f.coeffs) c.push_back(to_u64(mod_floor(a, Int(m))));
    return c;
}

inline std::uint64_t horner_u64(const std::vector<std::uint64_t>& c, std::uint64_t x,
                                std::uint64_t m) {
    std::uint64_t acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (mulmod_u64(acc, x, m) + *it) % m;
    return acc;
}

}  // namespace detail

/// Complete cycle and tail structure of f_n on Z/p^nZ.
struct FunctionalGraph {
    Int prime = 2;
    unsigned level = 1;
    std::vector<std::uint64_t> successor;
    std::vector<Cycle> cycles;                 // sorted by smallest member
    std::vector<std::int64_t> cycle_id;        // per residue; -1 while on a tail
    std::vector<std::uint64_t> entry_cycle;    // per residue: cycle eventually reached
    std::vector<std::uint64_t> tail_steps;     // per residue: steps until on-cycle (0 on cycle)

    std::uint64_t size() const { return successor.size(); }
    bool on_cycle(std::uint64_t r) const { return cycle_id[r] >= 0; }
};

/// The induced map f_n as a successor table on all p^n residues.
inline std::vector<std::uint64_t> induced_map(const IntPoly& f, unsigned n,
                                              std::uint64_t budget = default_budget()) {
    f.require_level(n);
    Int size = ppow(f.prime, n);
    if (size > Int(budget))
        throw resource_error("induced_map: p^n = " + size.str() + " exceeds budget " +
                             std::to_string(budget));
    std::uint64_t m = to_u64(size);
    auto coeffs = detail::reduce_coeffs_u64(f, m);
    std::vector<std::uint64_t> succ(m);
    for (std::uint64_t x = 0; x < m; ++x) succ[x] = detail::horner_u64(coeffs, x, m);
    return succ;
}

/// Enumerate all cycles and the tail map of f_n (successor-array traversal,
/// linear in p^n).
inline FunctionalGraph find_cycles(const IntPoly& f, unsigned n,
                                   std::uint64_t budget = default_budget()) {
    FunctionalGraph g;
    g.prime = f.prime;
    g.level = n;
    g.successor = induced_map(f, n, budget);
    std::uint64_t m = g.successor.size();

    g.cycle_id.assign(m, -1);
    std::vector<std::uint64_t> mark(m, 0);  // 0 unvisited, else pass id
    std::vector<std::uint64_t> path;
    for (std::uint64_t start = 0, pass = 1; start < m; ++start, ++pass) {
        if (mark[start]) continue;
        path.clear();
        std::uint64_t x = start;
        while (mark[x] == 0) {
            mark[x] = pass;
            path.push_back(x);
            x = g.successor[x];
        }
        if (mark[x] == pass && g.cycle_id[x] < 0) {
            // Fresh cycle: the path tail from x onward.
            auto it = std::find(path.begin(), path.end(), x);
            Cycle c;
            c.level = n;
            for (auto p = it; p != path.end(); ++p) {
                g.cycle_id[*p] = 0;  // provisional; renumbered below
                c.points.emplace_back(*p);
            }
            c.canonicalize();
            g.cycles.push_back(std::move(c));
        }
    }
    std::sort(g.cycles.begin(), g.cycles.end());
    // Renumber residues by final cycle order.
    for (std::size_t i = 0; i < g.cycles.size(); ++i)
        for (const Int& pt : g.cycles[i].points) g.cycle_id[to_u64(pt)] = static_cast<std::int64_t>(i);

    // Tail resolution: steps to reach a cycle, by path unwinding.
    g.entry_cycle.assign(m, 0);
    g.tail_steps.assign(m, 0);
    std::vector<std::uint8_t> done(m, 0);
    for (std::uint64_t r = 0; r < m; ++r)
        if (g.cycle_id[r] >= 0) {
            g.entry_cycle[r] = static_cast<std::uint64_t>(g.cycle_id[r]);
            done[r] = 1;
        }
    for (std::uint64_t r = 0; r < m; ++r) {
        if (done[r]) continue;
        path.clear();
        std::uint64_t x = r;
        while (!done[x]) {
            path.push_back(x);
            x = g.successor[x];
        }
        std::uint64_t cyc = g.entry_cycle[x];
        std::uint64_t steps = g.tail_steps[x];
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            ++steps;
            g.entry_cycle[*it] = cyc;
            g.tail_steps[*it] = steps;
            done[*it] = 1;
        }
    }
    return g;
}

/// Cycles of f_{n+1} inside the lifted set X of a cycle, plus the residues
/// of X not on any of them.
struct LiftResult {
    std::vector<Cycle> cycles;       // sorted by smallest member
    std::vector<Int> tail_residues;  // at level n+1
};

/// Lift a cycle from level n to level n+1 by traversing f_{n+1} on the
/// p*k residues of X.  Cycle-local, so no global enumeration budget applies.
inline LiftResult lift_cycle(const IntPoly& f, const Cycle& c) {
    unsigned n1 = c.level + 1;
    f.require_level(n1);
    const Int& p = f.prime;
    Int pn = ppow(p, c.level);
    Int pn1 = pn * p;
    std::size_t k = c.length();
    std::uint64_t pu = to_u64(p);
    std::size_t total = k * static_cast<std::size_t>(pu);

    // Residues of X, indexed by (cycle position, t).
    std::vector<Int> residue(total);
    auto index_of = [&](std::size_t i, std::uint64_t t) { return i * pu + t; };
    for (std::size_t i = 0; i < k; ++i)
        for (std::uint64_t t = 0; t < pu; ++t) residue[index_of(i, t)] = c.points[i] + Int(t) * pn;

    // Successor inside X: f(x_i + p^n t) lies over x_{i+1}.
    std::vector<std::size_t> succ(total);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = (i + 1) % k;
        for (std::uint64_t t = 0; t < pu; ++t) {
            Int y = eval_int_mod(f, residue[index_of(i, t)], pn1);
            Int off = y - mod_floor(c.points[j], pn1);
            Int tq = mod_floor(off, pn1) / pn;
            if (mod_floor(off, pn) != 0)
                throw integrity_error("lift_cycle: successor left the lifted set; input is not a cycle of f_n");
            succ[index_of(i, t)] = index_of(j, to_u64(tq));
        }
    }

    LiftResult out;
    std::vector<std::int8_t> state(total, 0);
    std::vector<std::size_t> path;
    for (std::size_t s = 0; s < total; ++s) {
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
            Cycle lifted;
            lifted.level = n1;
            for (auto q = it; q != path.end(); ++q) {
                state[*q] = 2;
                lifted.points.push_back(residue[*q]);
            }
            lifted.canonicalize();
            out.cycles.push_back(std::move(lifted));
        }
        for (std::size_t q : path) state[q] = state[q] == 2 ? 2 : 3;  // 3 = tail
    }
    for (std::size_t s = 0; s < total; ++s)
        if (state[s] == 3) out.tail_residues.push_back(residue[s]);
    std::sort(out.cycles.begin(), out.cycles.end());
    std::sort(out.tail_residues.begin(), out.tail_residues.end());
    return out;
}

}  // namespace padicdyn
