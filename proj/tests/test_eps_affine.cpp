#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "folsing/eps_affine.hpp"

using folsing::EpsAffine;
using folsing::IntervalSign;
using folsing::Rational;
using folsing::sign_on_interval;

TEST_CASE("eval is exact") {
    const EpsAffine a(Rational(-1), Rational(4));  // -1 + 4 eps
    CHECK(a.eval(Rational::of(1, 4)) == Rational(0));
    CHECK(a.eval(Rational::of(1, 5)) == Rational::of(-1, 5));
    CHECK(EpsAffine().eval(Rational::of(17, 3)) == Rational(0));
}

TEST_CASE("eval is additive") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-50, 50);
    for (int i = 0; i < 2000; ++i) {
        const EpsAffine a(Rational::of(d(rng), 7), Rational::of(d(rng), 5));
        const EpsAffine b(Rational::of(d(rng), 3), Rational::of(d(rng), 11));
        const Rational e = Rational::of(d(rng), 13);
        CHECK((a + b).eval(e) == a.eval(e) + b.eval(e));
        CHECK((a - b).eval(e) == a.eval(e) - b.eval(e));
    }
}

TEST_CASE("sign over open intervals") {
    const Rational zero(0);
    CHECK(sign_on_interval(EpsAffine::eps(), zero, Rational::of(1, 3)) ==
          IntervalSign::ALL_POSITIVE);
    CHECK(sign_on_interval(EpsAffine(Rational(-1), Rational(4)), zero, Rational::of(1, 4)) ==
          IntervalSign::ALL_NEGATIVE);
    CHECK(sign_on_interval(EpsAffine(), zero, Rational(1)) == IntervalSign::IDENTICALLY_ZERO);
    CHECK(sign_on_interval(EpsAffine(Rational(-1), Rational(4)), zero, Rational::of(1, 3)) ==
          IntervalSign::MIXED);
    CHECK(sign_on_interval(EpsAffine(Rational(2)), zero, Rational(1)) ==
          IntervalSign::ALL_POSITIVE);
    CHECK_THROWS_AS(sign_on_interval(EpsAffine::eps(), Rational(1), Rational(1)),
                    std::invalid_argument);
}

TEST_CASE("interval sign agrees with pointwise evaluation") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> coeff(-20, 20);
    std::uniform_int_distribution<int> den(1, 40);
    int samples = 0;
    while (samples < 10000) {
        const EpsAffine a(Rational::of(coeff(rng), den(rng)), Rational::of(coeff(rng), den(rng)));
        Rational lo = Rational::of(coeff(rng), den(rng));
        Rational hi = Rational::of(coeff(rng), den(rng));
        if (lo == hi) continue;
        if (hi < lo) std::swap(lo, hi);
        const IntervalSign s = sign_on_interval(a, lo, hi);
        // Interior sample point: midpoint, then quarter points.
        for (const auto& t : {Rational::of(1, 2), Rational::of(1, 4), Rational::of(3, 4)}) {
            const Rational e = lo + (hi - lo) * t;
            const Rational v = a.eval(e);
            switch (s) {
                case IntervalSign::ALL_POSITIVE: CHECK(v > Rational(0)); break;
                case IntervalSign::ALL_NEGATIVE: CHECK(v < Rational(0)); break;
                case IntervalSign::IDENTICALLY_ZERO: CHECK(v == Rational(0)); break;
                case IntervalSign::ALL_NONNEGATIVE: CHECK(v >= Rational(0)); break;
                case IntervalSign::ALL_NONPOSITIVE: CHECK(v <= Rational(0)); break;
                case IntervalSign::MIXED: break;
            }
            ++samples;
        }
        // MIXED must be witnessed by a sign change across the closed interval.
        if (s == IntervalSign::MIXED) {
            CHECK(a.eval(lo).sign() * a.eval(hi).sign() <= 0);
            CHECK((a.eval(lo).sign() != 0 || a.eval(hi).sign() != 0));
        }
    }
}

TEST_CASE("string form") {
    CHECK(EpsAffine(Rational(-1), Rational(4)).str() == "-1 + 4*eps");
    CHECK(EpsAffine(Rational(0), Rational(1)).str() == "eps");
    CHECK(EpsAffine(Rational(0), Rational(-1)).str() == "-eps");
    CHECK(EpsAffine(Rational::of(1, 2)).str() == "1/2");
    CHECK(EpsAffine().str() == "0");
}
