#pragma once

#include <random>
#include <vector>

#include "padicdyn/padicdyn.hpp"

namespace padicdyn::testing {

/// Deterministic random polynomial of the given degree over Z_p.
inline IntPoly random_poly(std::mt19937_64& rng, const Int& p, int degree, int coeff_range = 50) {
    std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
    std::vector<Int> cs;
    for (int i = 0; i < degree; ++i) cs.emplace_back(coeff(rng));
    int lead = coeff(rng);
    if (lead == 0) lead = 1;
    cs.emplace_back(lead);
    return IntPoly(std::move(cs), p);
}

/// A random cycle of f_n for a random f (resampling until one exists with
/// length > `min_len` if requested).
struct PolyCycle {
    IntPoly f;
    Cycle c;
};

inline PolyCycle random_cycle(std::mt19937_64& rng, const Int& p, unsigned n, int max_degree = 4) {
    std::uniform_int_distribution<int> deg(2, max_degree);
    for (;;) {
        IntPoly f = random_poly(rng, p, deg(rng));
        FunctionalGraph g = find_cycles(f, n);
        if (g.cycles.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, g.cycles.size() - 1);
        return {f, g.cycles[pick(rng)]};
    }
}

}  // namespace padicdyn::testing
