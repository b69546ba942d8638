#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace folsing {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number in canonical form: denominator > 0 and
// gcd(|numerator|, denominator) = 1.  All arithmetic is exact.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}            // NOLINT(google-explicit-constructor)
    Rational(const BigInt& n) : num_(n), den_(1) {}           // NOLINT(google-explicit-constructor)
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static Rational of(std::int64_t n, std::int64_t d) { return Rational(BigInt(n), BigInt(d)); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const BigInt lhs = a.num_ * b.den_;
        const BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // Serializes as "p/q", or "p" when q = 1.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) {
            s += '/';
            s += den_.str();
        }
        return s;
    }

    // Parses "p" or "p/q" with optional leading sign.  No decimals.
    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
            BigInt n{std::string(text.substr(0, slash))};
            BigInt d{std::string(text.substr(slash + 1))};
            return Rational(std::move(n), std::move(d));
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
        }
    }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// True iff n is the square of an integer; on success *root is the nonnegative root.
inline bool is_perfect_square(const BigInt& n, BigInt* root = nullptr) {
    if (n < 0) return false;
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

// Rationals have a square root iff numerator and denominator both do.
inline bool is_perfect_square(const Rational& q, Rational* root = nullptr) {
    BigInt rn, rd;
    if (!is_perfect_square(q.num(), &rn) || !is_perfect_square(q.den(), &rd)) return false;
    if (root) *root = Rational(rn, rd);
    return true;
}

}  // namespace folsing
