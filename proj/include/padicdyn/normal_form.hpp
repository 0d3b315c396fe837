#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "padicdyn/bigint.hpp"
#include "padicdyn/core.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/poly.hpp"

namespace padicdyn {

/// h(x) = scale*x + shift, used with the convention h(f(x)) = g(h(x)).
struct AffineMap {
    Int scale = 1;
    Int shift = 0;

    Int operator()(const Int& x) const { return scale * x + shift; }
    bool is_identity() const { return scale == 1 && shift == 0; }

    /// this after other: x -> this(other(x)).
    AffineMap after(const AffineMap& other) const {
        return AffineMap{scale * other.scale, scale * other.shift + shift};
    }
};

enum class QuadFormKind { XSqMinusLambda, XSqPlusBX, XSqPlusXMinusD };

/// Normal form of a 2-adic quadratic and the affine conjugacy reaching it.
struct QuadNormalForm {
    QuadFormKind kind;
    Int param;                 // lambda, b, or d
    bool sqrt_exists = false;  // meaningful for XSqPlusXMinusD
    AffineMap conjugacy;       // h with h(f(x)) = g(h(x))
    unsigned precision = kExactPrecision;
    std::string branch_note;   // set when a square-root branch was chosen

    /// The normal-form polynomial g as an IntPoly over p = 2.
    IntPoly poly() const {
        switch (kind) {
            case QuadFormKind::XSqMinusLambda:
                return IntPoly({-param, 0, 1}, 2, precision);
            case QuadFormKind::XSqPlusBX:
                return IntPoly({0, param, 1}, 2, precision);
            case QuadFormKind::XSqPlusXMinusD:
                return IntPoly({-param, 1, 1}, 2, precision);
        }
        throw integrity_error("unreachable");
    }

    std::string describe() const {
        switch (kind) {
            case QuadFormKind::XSqMinusLambda:
                return "x^2 - (" + param.str() + ")";
            case QuadFormKind::XSqPlusBX:
                return "x^2 + (" + param.str() + ")x";
            case QuadFormKind::XSqPlusXMinusD:
                return "x^2 + x - (" + param.str() + ")";
        }
        throw integrity_error("unreachable");
    }
};

/// h(f(x)) = g(h(x)) (mod p^n) for all p^n residues x, exhaustively up to
/// `exhaustive_limit` residues, by deterministic sampling above it.
inline bool conjugate_check(const IntPoly& f, const IntPoly& g, const AffineMap& h, unsigned n,
                            std::uint64_t exhaustive_limit = (1u << 16)) {
    f.require_level(n);
    g.require_level(n);
    const Int& p = f.prime;
    Int pn = ppow(p, n);
    auto ok = [&](const Int& x) {
        Int lhs = mod_floor(h(eval_int_mod(f, x, pn)), pn);
        Int rhs = eval_int_mod(g, mod_floor(h(x), pn), pn);
        return lhs == rhs;
    };
    if (pn <= Int(exhaustive_limit)) {
        for (Int x = 0; x < pn; ++x)
            if (!ok(x)) return false;
        return true;
    }
    // Deterministic stride sample plus small values.
    Int stride = pn / Int(exhaustive_limit) + 1;
    for (Int x = 0; x < pn; x += stride)
        if (!ok(x)) return false;
    for (std::uint64_t i = 0; i < 64; ++i)
        if (!ok(Int(i))) return false;
    return true;
}

namespace detail {
/// Already one of the three normal forms?
inline std::optional<QuadNormalForm> already_normal(const Int& a, const Int& b, const Int& c,
                                                    unsigned precision) {
    if (a != 1) return std::nullopt;
    if (b == 0) {
        QuadNormalForm nf;
        nf.kind = QuadFormKind::XSqMinusLambda;
        nf.param = -c;
        nf.precision = precision;
        return nf;
    }
    if (mod_floor(b, 2) == 1 && c == 0) {
        QuadNormalForm nf;
        nf.kind = QuadFormKind::XSqPlusBX;
        nf.param = b;
        nf.precision = precision;
        return nf;
    }
    if (b == 1) {
        QuadNormalForm nf;
        nf.kind = QuadFormKind::XSqPlusXMinusD;
        nf.param = -c;
        nf.sqrt_exists = has_sqrt_z2(-c);
        nf.precision = precision;
        if (!nf.sqrt_exists) return nf;  // already terminal
        return std::nullopt;             // reducible further to x^2+bx
    }
    return std::nullopt;
}
}  // namespace detail

/// Reduce a*x^2 + b*x + c over Z_2 to its conjugacy normal form
/// (x^2-lambda, x^2+bx with b odd, or x^2+x-d with sqrt(d) not in Z_2),
/// returning the full affine conjugacy chain.  Works internally with eight
/// guard digits so the divisions by 4 are exact on truncated inputs.
inline QuadNormalForm normal_form_2adic(const Int& a, const Int& b, const Int& c,
                                        unsigned precision = kExactPrecision) {
    if (a == 0) throw precondition_error("normal_form_2adic: polynomial is not quadratic");
    if (mod_floor(a, 2) == 0)
        throw precondition_error(
            "normal_form_2adic: leading coefficient must be a 2-adic unit (odd); the scaling "
            "x -> ax is a bijection of Z_2 only then");

    if (auto nf = detail::already_normal(a, b, c, precision)) return *nf;

    AffineMap h;  // identity
    Int b1 = b, c1 = c;
    if (a != 1) {
        // x -> ax conjugates ax^2+bx+c to x^2+bx+ac.
        h = AffineMap{a, 0}.after(h);
        c1 = a * c;
    }

    QuadNormalForm nf;
    nf.precision = precision;
    if (mod_floor(b1, 2) == 0) {
        Int beta = b1 / 2;
        nf.kind = QuadFormKind::XSqMinusLambda;
        nf.param = beta * beta - beta - c1;  // (b^2 - 4c - 2b)/4
        nf.conjugacy = AffineMap{1, beta}.after(h);
        return nf;
    }

    Int s = (b1 - 1) / 2;
    Int d = s * s - c1;  // ((b-1)^2 - 4c)/4
    h = AffineMap{1, s}.after(h);

    bool sq = (precision == kExactPrecision) ? has_sqrt_z2(d) : has_sqrt_z2(d, precision + 8);
    if (!sq) {
        nf.kind = QuadFormKind::XSqPlusXMinusD;
        nf.param = d;
        nf.sqrt_exists = false;
        nf.conjugacy = h;
        return nf;
    }

    // x^2+x-d with sqrt(d) in Z_2 reduces to x^2+b'x, b' = 1-2r, via x -> x+r.
    unsigned root_bits = (precision == kExactPrecision) ? 96u : precision + 8;
    Int r;
    bool exact_root = false;
    if (d >= 0) {
        Int e = boost::multiprecision::sqrt(d);
        if (e * e == d) {
            // Perfect integer square: keep the root exact.  Canonical branch:
            // odd part of r equal to 1 (mod 4).
            exact_root = true;
            r = e;
            if (e != 0) {
                Int u = e >> static_cast<unsigned>(vp(e, 2).value());
                if (mod_floor(u, 4) == 3) r = -e;
            }
        }
    }
    if (!exact_root) r = sqrt_z2(d, root_bits);
    Int bprime = 1 - 2 * r;
    nf.branch_note = "root branch: odd part of sqrt(d) taken = 1 (mod 4)";
    if (bprime == -1) {
        // b' = -1 corresponds to m = 0 in the -1-4m family; switch roots so
        // v_2(m) is finite.
        r = exact_root ? Int(-r) : mod_floor(-r, Int(1) << root_bits);
        bprime = 1 - 2 * r;
        nf.branch_note = "root branch switched to avoid b = -1 (m = 0)";
    }
    nf.kind = QuadFormKind::XSqPlusBX;
    nf.param = bprime;
    nf.sqrt_exists = true;
    nf.conjugacy = AffineMap{1, r}.after(h);
    if (precision != kExactPrecision) {
        nf.param = mod_floor(nf.param, Int(1) << precision);
        nf.precision = precision;
    } else if (!exact_root) {
        nf.precision = root_bits;
    }
    return nf;
}

}  // namespace padicdyn
