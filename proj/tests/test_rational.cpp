#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "folsing/rational.hpp"

using folsing::BigInt;
using folsing::Rational;

namespace {

// Independent fraction arithmetic: track numerator/denominator separately and
// reduce only at the final comparison.
struct RawFraction {
    BigInt num;
    BigInt den;

    static RawFraction add(const RawFraction& a, const RawFraction& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    static RawFraction sub(const RawFraction& a, const RawFraction& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    static RawFraction mul(const RawFraction& a, const RawFraction& b) {
        return {a.num * b.num, a.den * b.den};
    }
    bool equals(const Rational& r) const {
        return num * r.den() == r.num() * den;
    }
};

Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<long long> num(-10000, 10000);
    std::uniform_int_distribution<long long> den(1, 500);
    return Rational(BigInt(num(rng)), BigInt(den(rng)));
}

}  // namespace

TEST_CASE("rational canonical form") {
    CHECK(Rational::of(2, 4) == Rational::of(1, 2));
    CHECK(Rational::of(-2, -4) == Rational::of(1, 2));
    CHECK(Rational::of(3, -6) == Rational::of(-1, 2));
    CHECK(Rational::of(0, 7) == Rational(0));
    CHECK(Rational::of(9, 3).den() == 1);
    CHECK_THROWS_AS(Rational::of(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational ordering") {
    CHECK(Rational::of(1, 3) < Rational::of(1, 2));
    CHECK(Rational::of(-1, 2) < Rational::of(-1, 3));
    CHECK(Rational::of(1, 5).sign() == 1);
    CHECK(Rational::of(-1, 5).sign() == -1);
    CHECK(Rational(0).sign() == 0);
}

TEST_CASE("rational parse and print round trip") {
    CHECK(Rational::parse("3/4").str() == "3/4");
    CHECK(Rational::parse("-3/4").str() == "-3/4");
    CHECK(Rational::parse("6/4").str() == "3/2");
    CHECK(Rational::parse("7").str() == "7");
    CHECK(Rational::parse("-0").str() == "0");
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
}

TEST_CASE("rational arithmetic matches raw fraction arithmetic") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 3000; ++trial) {
        const Rational a = random_rational(rng);
        const Rational b = random_rational(rng);
        const RawFraction ra{a.num(), a.den()};
        const RawFraction rb{b.num(), b.den()};
        CHECK(RawFraction::add(ra, rb).equals(a + b));
        CHECK(RawFraction::sub(ra, rb).equals(a - b));
        CHECK(RawFraction::mul(ra, rb).equals(a * b));
        if (!b.is_zero()) {
            const RawFraction inv{rb.den, rb.num};
            CHECK(RawFraction::mul(ra, inv).equals(a / b));
        }
        // Canonical form invariants.
        const Rational s = a + b;
        CHECK(s.den() > 0);
        CHECK(boost::multiprecision::gcd(s.num(), s.den()) == 1);
    }
}

TEST_CASE("perfect square detection") {
    CHECK(folsing::is_perfect_square(BigInt(0)));
    CHECK(folsing::is_perfect_square(BigInt(144)));
    CHECK_FALSE(folsing::is_perfect_square(BigInt(2)));
    CHECK_FALSE(folsing::is_perfect_square(BigInt(-4)));
    Rational root;
    CHECK(folsing::is_perfect_square(Rational::of(9, 4), &root));
    CHECK(root == Rational::of(3, 2));
    CHECK_FALSE(folsing::is_perfect_square(Rational::of(2, 3)));
}
