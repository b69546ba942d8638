#pragma once

#include <stdexcept>
#include <string>

#include "folsing/rational.hpp"

namespace folsing {

// A value that is affine in the interpolation parameter: alpha + beta * eps.
// Discrepancy coefficients are exactly of this shape, because the intersection
// matrix is independent of eps while the right-hand side is affine in it.
class EpsAffine {
public:
    EpsAffine() = default;
    EpsAffine(Rational c) : const_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
    EpsAffine(std::int64_t c) : const_(c) {}         // NOLINT(google-explicit-constructor)
    EpsAffine(Rational c, Rational e) : const_(std::move(c)), eps_(std::move(e)) {}

    static EpsAffine eps() { return EpsAffine(Rational(0), Rational(1)); }

    const Rational& const_part() const { return const_; }
    const Rational& eps_part() const { return eps_; }

    bool is_zero() const { return const_.is_zero() && eps_.is_zero(); }
    bool is_constant() const { return eps_.is_zero(); }

    // Exact value alpha + beta * e.
    Rational eval(const Rational& e) const { return const_ + eps_ * e; }

    EpsAffine operator-() const { return EpsAffine(-const_, -eps_); }

    EpsAffine& operator+=(const EpsAffine& o) {
        const_ += o.const_;
        eps_ += o.eps_;
        return *this;
    }
    EpsAffine& operator-=(const EpsAffine& o) {
        const_ -= o.const_;
        eps_ -= o.eps_;
        return *this;
    }
    EpsAffine& operator*=(const Rational& s) {
        const_ *= s;
        eps_ *= s;
        return *this;
    }
    EpsAffine& operator/=(const Rational& s) {
        const_ /= s;
        eps_ /= s;
        return *this;
    }

    friend EpsAffine operator+(EpsAffine a, const EpsAffine& b) { return a += b; }
    friend EpsAffine operator-(EpsAffine a, const EpsAffine& b) { return a -= b; }
    friend EpsAffine operator*(EpsAffine a, const Rational& s) { return a *= s; }
    friend EpsAffine operator*(const Rational& s, EpsAffine a) { return a *= s; }
    friend EpsAffine operator/(EpsAffine a, const Rational& s) { return a /= s; }

    friend bool operator==(const EpsAffine& a, const EpsAffine& b) {
        return a.const_ == b.const_ && a.eps_ == b.eps_;
    }

    // Human-readable "alpha + beta*eps" form with zero terms dropped.
    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        if (!const_.is_zero()) s = const_.str();
        if (!eps_.is_zero()) {
            if (!s.empty()) s += eps_.sign() > 0 ? " + " : " - ";
            else if (eps_.sign() < 0) s += "-";
            const Rational a = abs(eps_);
            if (!(a == Rational(1))) s += a.str() + "*";
            s += "eps";
        }
        return s;
    }

private:
    Rational const_;
    Rational eps_;
};

// Sign classification of an eps-affine value over an open interval (lo, hi).
// The categories are mutually exclusive with precedence
//   IDENTICALLY_ZERO > ALL_POSITIVE / ALL_NEGATIVE
//                    > ALL_NONNEGATIVE / ALL_NONPOSITIVE > MIXED.
// For a nonzero affine function on an open interval the sign is strict up to
// the endpoints, so ALL_NONNEGATIVE / ALL_NONPOSITIVE never arise here; they
// are kept for API completeness.
enum class IntervalSign {
    ALL_POSITIVE,
    ALL_NONNEGATIVE,
    ALL_NEGATIVE,
    ALL_NONPOSITIVE,
    IDENTICALLY_ZERO,
    MIXED,
};

inline const char* to_string(IntervalSign s) {
    switch (s) {
        case IntervalSign::ALL_POSITIVE: return "ALL_POSITIVE";
        case IntervalSign::ALL_NONNEGATIVE: return "ALL_NONNEGATIVE";
        case IntervalSign::ALL_NEGATIVE: return "ALL_NEGATIVE";
        case IntervalSign::ALL_NONPOSITIVE: return "ALL_NONPOSITIVE";
        case IntervalSign::IDENTICALLY_ZERO: return "IDENTICALLY_ZERO";
        case IntervalSign::MIXED: return "MIXED";
    }
    return "?";
}

// Sign pattern of a on the open interval (lo, hi).  Since a is affine, the
// pattern is determined by the endpoint values; endpoint zeroes are only
// approached in the limit and do not demote a strict verdict.
inline IntervalSign sign_on_interval(const EpsAffine& a, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::invalid_argument("sign_on_interval: requires lo < hi");
    if (a.is_zero()) return IntervalSign::IDENTICALLY_ZERO;
    if (a.is_constant()) {
        return a.const_part().sign() > 0 ? IntervalSign::ALL_POSITIVE : IntervalSign::ALL_NEGATIVE;
    }
    const Rational at_lo = a.eval(lo);
    const Rational at_hi = a.eval(hi);
    const Rational zero(0);
    if (at_lo >= zero && at_hi >= zero) return IntervalSign::ALL_POSITIVE;
    if (at_lo <= zero && at_hi <= zero) return IntervalSign::ALL_NEGATIVE;
    return IntervalSign::MIXED;
}

inline bool nonnegative_on(IntervalSign s) {
    return s == IntervalSign::ALL_POSITIVE || s == IntervalSign::ALL_NONNEGATIVE ||
           s == IntervalSign::IDENTICALLY_ZERO;
}

inline bool positive_on(IntervalSign s) { return s == IntervalSign::ALL_POSITIVE; }

inline bool nonpositive_on(IntervalSign s) {
    return s == IntervalSign::ALL_NEGATIVE || s == IntervalSign::ALL_NONPOSITIVE ||
           s == IntervalSign::IDENTICALLY_ZERO;
}

inline bool negative_on(IntervalSign s) { return s == IntervalSign::ALL_NEGATIVE; }

}  // namespace folsing
