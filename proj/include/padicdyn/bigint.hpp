#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "padicdyn/errors.hpp"

namespace padicdyn {

using Int = boost::multiprecision::cpp_int;

/// base^exp for small exponents.
inline Int ipow(const Int& base, unsigned exp) {
    Int r = 1, b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

/// p^n as a modulus.
inline Int ppow(const Int& p, unsigned n) { return ipow(p, n); }

/// Canonical representative of a mod m in [0, m).
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int modmul(const Int& a, const Int& b, const Int& m) { return mod_floor(a * b, m); }

inline Int modpow(Int base, Int exp, const Int& m) {
    base = mod_floor(base, m);
    Int r = 1;
    while (exp > 0) {
        if ((exp & 1) != 0) r = r * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return r;
}

inline std::uint64_t to_u64(const Int& x) {
    if (x < 0 || x > Int(UINT64_MAX)) throw resource_error("value does not fit in 64 bits");
    return static_cast<std::uint64_t>(x);
}

inline std::string to_string(const Int& x) { return x.str(); }

}  // namespace padicdyn
