#pragma once

#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "padicdyn/bigint.hpp"
#include "padicdyn/core.hpp"
#include "padicdyn/errors.hpp"

namespace padicdyn {

/// Level bound meaning "coefficients are exact integers, any level is fine".
inline constexpr unsigned kExactPrecision = std::numeric_limits<unsigned>::max();

/// A polynomial over Z_p at finite precision.  Coefficients are plain
/// integers in ascending degree; a polynomial known mod p^N determines the
/// induced map f_n exactly for every n <= N.
struct IntPoly {
    std::vector<Int> coeffs;  // coeffs[i] multiplies x^i
    Int prime = 2;
    unsigned known_precision = kExactPrecision;

    IntPoly() = default;
    IntPoly(std::vector<Int> c, Int p, unsigned precision = kExactPrecision)
        : coeffs(std::move(c)), prime(std::move(p)), known_precision(precision) {
        require_prime(prime);
        trim();
    }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    const Int& coeff(std::size_t i) const {
        static const Int zero = 0;
        return i < coeffs.size() ? coeffs[i] : zero;
    }

    void require_level(unsigned n) const {
        if (n > known_precision)
            throw precision_error("level " + std::to_string(n) + " exceeds known precision " +
                                  std::to_string(known_precision));
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) {
        return a.coeffs == b.coeffs && a.prime == b.prime;
    }
};

/// Horner evaluation of f at an exact integer x, reduced mod m.
inline Int eval_int_mod(const IntPoly& f, const Int& x, const Int& m) {
    Int acc = 0;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = mod_floor(acc * x + *it, m);
    return acc;
}

/// Exact (unreduced) evaluation.
inline Int eval_int(const IntPoly& f, const Int& x) {
    Int acc = 0;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// f(x) reduced mod p^level of x.  1-Lipschitz by construction.
inline Residue eval_mod(const IntPoly& f, const Residue& x) {
    if (x.prime != f.prime) throw precondition_error("eval_mod: prime mismatch");
    f.require_level(x.level);
    Residue r = x;
    r.value = eval_int_mod(f, x.value, x.modulus());
    return r;
}

/// Exact formal derivative.
inline IntPoly derivative(const IntPoly& f) {
    IntPoly d;
    d.prime = f.prime;
    d.known_precision = f.known_precision;
    for (std::size_t i = 1; i < f.coeffs.size(); ++i) d.coeffs.push_back(Int(i) * f.coeffs[i]);
    d.trim();
    return d;
}

/// f applied k times, all arithmetic mod p^level.
inline Residue iterate_mod(const IntPoly& f, std::uint64_t k, const Residue& x) {
    if (k == 0) throw precondition_error("iterate_mod: k must be >= 1");
    Residue y = x;
    for (std::uint64_t i = 0; i < k; ++i) y = eval_mod(f, y);
    return y;
}

inline Int iterate_int_mod(const IntPoly& f, std::uint64_t k, Int x, const Int& m) {
    for (std::uint64_t i = 0; i < k; ++i) x = eval_int_mod(f, x, m);
    return x;
}

/// Composition f(g(x)), coefficients reduced mod `m` if nonzero.
inline IntPoly compose(const IntPoly& f, const IntPoly& g, const Int& m = 0) {
    IntPoly acc;
    acc.prime = f.prime;
    acc.known_precision = std::min(f.known_precision, g.known_precision);
    auto reduce_all = [&](IntPoly& h) {
        if (m != 0)
            for (auto& c : h.coeffs) c = mod_floor(c, m);
        h.trim();
    };
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
        // acc = acc * g + coeff
        IntPoly next;
        next.prime = acc.prime;
        next.known_precision = acc.known_precision;
        next.coeffs.assign(acc.coeffs.size() + g.coeffs.size(), Int(0));
        if (!next.coeffs.empty()) {
            for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
                for (std::size_t j = 0; j < g.coeffs.size(); ++j)
                    next.coeffs[i + j] += acc.coeffs[i] * g.coeffs[j];
        }
        if (next.coeffs.empty()) next.coeffs.push_back(*it);
        else next.coeffs[0] += *it;
        reduce_all(next);
        acc = std::move(next);
    }
    return acc;
}

/// k-fold self-composition, coefficients reduced mod m along the way.
inline IntPoly iterate_poly(const IntPoly& f, std::uint64_t k, const Int& m = 0) {
    if (k == 0) throw precondition_error("iterate_poly: k must be >= 1");
    IntPoly g = f;
    for (std::uint64_t i = 1; i < k; ++i) g = compose(f, g, m);
    return g;
}

/// Shared CLI/file text format: comma-separated integers, ascending degree.
inline IntPoly parse_poly(const std::string& text, const Int& p,
                          unsigned precision = kExactPrecision) {
    std::vector<Int> coeffs;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        std::size_t a = tok.find_first_not_of(" \t");
        std::size_t b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) throw precondition_error("empty coefficient in '" + text + "'");
        try {
            coeffs.emplace_back(tok.substr(a, b - a + 1));
        } catch (const std::exception&) {
            throw precondition_error("bad coefficient '" + tok + "'");
        }
    }
    if (coeffs.empty()) throw precondition_error("empty polynomial text");
    return IntPoly(std::move(coeffs), p, precision);
}

inline std::string format_poly(const IntPoly& f) {
    std::string s;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (i) s += ',';
        s += f.coeffs[i].str();
    }
    return s.empty() ? "0" : s;
}

/// Human-readable form, highest degree first.
inline std::string pretty_poly(const IntPoly& f) {
    if (f.coeffs.empty()) return "0";
    std::string s;
    for (int i = f.degree(); i >= 0; --i) {
        const Int& c = f.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        Int a = c < 0 ? Int(-c) : c;
        if (s.empty()) s += c < 0 ? "-" : "";
        else s += c < 0 ? " - " : " + ";
        if (a != 1 || i == 0) s += a.str();
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

}  // namespace padicdyn
