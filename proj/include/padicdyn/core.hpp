#pragma once

#include <cstdint>
#include <optional>

#include "padicdyn/bigint.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/valuation.hpp"

namespace padicdyn {

/// Deterministic Miller-Rabin, valid for all 64-bit inputs; larger inputs
/// use the same witness set heuristically (primes here are small in practice).
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    Int d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = modpow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

inline void require_prime(const Int& p) {
    if (!is_prime(p)) throw precondition_error("p = " + p.str() + " is not prime");
}

/// p-adic valuation of an exact integer; vp(0) = infinity.
inline Valuation vp(const Int& x, const Int& p) {
    if (x == 0) return Valuation::infinity();
    Int y = x < 0 ? Int(-x) : x;
    std::uint64_t v = 0;
    while (y % p == 0) {
        y /= p;
        ++v;
    }
    return Valuation::finite(v);
}

/// Multiplicative order of a in (Z/pZ)^*.
inline std::uint64_t mul_order(const Int& a, const Int& p) {
    require_prime(p);
    Int r = mod_floor(a, p);
    if (r == 0) throw precondition_error("mul_order: a is divisible by p");
    Int acc = r;
    std::uint64_t d = 1;
    while (acc != 1) {
        acc = acc * r % p;
        ++d;
    }
    return d;
}

/// Whether d, an exact integer, is a square in Z_2: d = 4^a * u with
/// u = 1 (mod 8), or d = 0.
inline bool has_sqrt_z2(const Int& d) {
    if (d == 0) return true;
    Valuation v = vp(d, 2);
    if (v.value() % 2 != 0) return false;
    Int u = d >> static_cast<unsigned>(v.value());
    return mod_floor(u, 8) == 1;
}

/// Same criterion for d known only modulo 2^known_bits.  Refuses to answer
/// when the known digits do not determine the result.
inline bool has_sqrt_z2(const Int& d, unsigned known_bits) {
    Int r = mod_floor(d, Int(1) << known_bits);
    if (r == 0)
        throw precision_error("has_sqrt_z2: d = 0 (mod 2^" + std::to_string(known_bits) +
                              "), criterion undetermined at this precision");
    std::uint64_t v = vp(r, 2).value();
    if (v + 3 > known_bits)
        throw precision_error("has_sqrt_z2: need v_2(d)+3 = " + std::to_string(v + 3) +
                              " known bits, have " + std::to_string(known_bits));
    if (v % 2 != 0) return false;
    return ((r >> static_cast<unsigned>(v)) & 7) == 1;
}

/// Square root of d in Z_2, mod 2^out_bits, by Hensel lifting from the
/// residue criterion.  Requires has_sqrt_z2(d).  The returned root is the
/// canonical branch whose odd part is 1 (mod 4); the other root is its
/// negation.
inline Int sqrt_z2(const Int& d, unsigned out_bits) {
    if (d == 0) return 0;
    if (!has_sqrt_z2(d)) throw precondition_error("sqrt_z2: d has no square root in Z_2");
    std::uint64_t v = vp(d, 2).value();
    unsigned half = static_cast<unsigned>(v / 2);
    if (half >= out_bits) return 0;
    unsigned bits = out_bits - half;  // precision needed for the odd part
    Int u = d >> static_cast<unsigned>(v);
    // t^2 = u (mod 2^m), maintained with t = 1 (mod 4).
    Int t = 1;
    for (unsigned m = 3; m < bits; ++m) {
        Int mod_next = Int(1) << (m + 1);
        if (mod_floor(t * t - u, mod_next) != 0) t += Int(1) << (m - 1);
    }
    return mod_floor(t << half, Int(1) << out_bits);
}

/// An element of Z/p^nZ carrying its prime and level: the ball value + p^n Z_p.
struct Residue {
    Int value;
    Int prime;
    unsigned level = 1;

    Residue() : value(0), prime(2), level(1) {}
    Residue(Int v, Int p, unsigned n) : prime(std::move(p)), level(n) {
        if (level == 0) throw precondition_error("Residue: level must be positive");
        require_prime(prime);
        value = mod_floor(v, modulus());
    }

    Int modulus() const { return ppow(prime, level); }

    friend bool operator==(const Residue& a, const Residue& b) {
        return a.prime == b.prime && a.level == b.level && a.value == b.value;
    }
    friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }
};

namespace detail {
inline void require_same_ring(const Residue& a, const Residue& b) {
    if (a.prime != b.prime || a.level != b.level)
        throw precondition_error("residue arithmetic requires matching prime and level");
}
}  // namespace detail

inline Residue operator+(const Residue& a, const Residue& b) {
    detail::require_same_ring(a, b);
    Residue r = a;
    r.value = mod_floor(a.value + b.value, a.modulus());
    return r;
}

inline Residue operator-(const Residue& a, const Residue& b) {
    detail::require_same_ring(a, b);
    Residue r = a;
    r.value = mod_floor(a.value - b.value, a.modulus());
    return r;
}

inline Residue operator*(const Residue& a, const Residue& b) {
    detail::require_same_ring(a, b);
    Residue r = a;
    r.value = mod_floor(a.value * b.value, a.modulus());
    return r;
}

/// Exact reduction to a lower level m <= n.
inline Residue reduce(const Residue& r, unsigned m) {
    if (m == 0 || m > r.level) throw precondition_error("reduce: target level out of range");
    Residue s = r;
    s.level = m;
    s.value = mod_floor(r.value, ppow(r.prime, m));
    return s;
}

}  // namespace padicdyn
