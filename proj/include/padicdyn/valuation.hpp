#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace padicdyn {

/// p-adic valuation value: a non-negative integer or infinity.
/// Infinity is produced only by an exact zero (at whatever precision the
/// caller computed), and compares greater than every finite value.
class Valuation {
public:
    constexpr Valuation() : inf_(true), v_(0) {}
    static constexpr Valuation finite(std::uint64_t v) { return Valuation(false, v); }
    static constexpr Valuation infinity() { return Valuation(true, 0); }

    constexpr bool is_infinite() const { return inf_; }
    constexpr bool is_finite() const { return !inf_; }
    /// Finite value; callers must check is_finite() first.
    constexpr std::uint64_t value() const { return v_; }

    friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend constexpr bool operator<(const Valuation& a, const Valuation& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend constexpr bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
    friend constexpr bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }
    friend constexpr bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }

    friend constexpr bool operator<(const Valuation& a, std::uint64_t b) { return a.is_finite() && a.v_ < b; }
    friend constexpr bool operator>=(const Valuation& a, std::uint64_t b) { return !(a < b); }

    /// min{v, cap} as a plain integer (the paper's capped semantics).
    constexpr std::uint64_t capped(std::uint64_t cap) const { return (inf_ || v_ > cap) ? cap : v_; }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.inf_ || b.inf_) return infinity();
        return finite(a.v_ + b.v_);
    }

    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }
    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

private:
    constexpr Valuation(bool inf, std::uint64_t v) : inf_(inf), v_(v) {}
    bool inf_;
    std::uint64_t v_;
};

}  // namespace padicdyn
