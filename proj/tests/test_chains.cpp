#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "folsing/chains.hpp"

using namespace folsing;

namespace {

Curve inv(std::string id, int self, int z = 1) {
    Curve c;
    c.id = std::move(id);
    c.self_int = self;
    c.invariant = true;
    c.z_index = z;
    return c;
}

DecoratedGraph chain_graph(const std::vector<int>& selfs) {
    std::vector<Curve> curves;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < selfs.size(); ++i) {
        curves.push_back(inv("C" + std::to_string(i + 1), selfs[i]));
        if (i > 0) edges.push_back({"C" + std::to_string(i), "C" + std::to_string(i + 1), 1});
    }
    return DecoratedGraph(curves, edges);
}

std::vector<std::string> chain_ids(std::size_t r) {
    std::vector<std::string> ids;
    for (std::size_t i = 1; i <= r; ++i) ids.push_back("C" + std::to_string(i));
    return ids;
}

// Test-side oracle: Gauss-Jordan with rational pivoting, entirely independent
// of the fraction-free solver in the library.
std::vector<Rational> gauss_jordan(std::vector<std::vector<Rational>> a,
                                   std::vector<Rational> rhs) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        REQUIRE(piv < n);
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        const Rational p = a[col][col];
        for (std::size_t j = 0; j < n; ++j) a[col][j] /= p;
        rhs[col] /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            const Rational f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    return rhs;
}

// Literal minors from the definition, via the library determinant on the
// explicit submatrices.
BigInt minor_det(const std::vector<int>& e, std::size_t from, std::size_t to) {
    if (from > to) return 1;
    const std::size_t k = to - from + 1;
    IntMatrix m(k, std::vector<BigInt>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        m[i][i] = e[from - 1 + i];
        if (i + 1 < k) m[i][i + 1] = m[i + 1][i] = -1;
    }
    return determinant(std::move(m));
}

}  // namespace

TEST_CASE("lambda/mu sequences for small chains") {
    {
        const auto g = chain_graph({-2, -2, -2});
        const ChainData cd = lambda_mu(g, chain_ids(3));
        CHECK(cd.lambda == std::vector<BigInt>{4, 3, 2, 1, 1});
        CHECK(cd.mu == std::vector<BigInt>{1, 1, 2, 3, 4});
        CHECK(cd.n == 4);
    }
    {
        const auto g = chain_graph({-2, -3});
        const ChainData cd = lambda_mu(g, chain_ids(2));
        CHECK(cd.lambda == std::vector<BigInt>{5, 3, 1, 1});
        CHECK(cd.mu == std::vector<BigInt>{1, 1, 2, 5});
        CHECK(cd.n == 5);
    }
    {
        const auto g = chain_graph({-4});
        const ChainData cd = lambda_mu(g, chain_ids(1));
        CHECK(cd.lambda == std::vector<BigInt>{4, 1, 1});
        CHECK(cd.mu == std::vector<BigInt>{1, 1, 4});
        CHECK(cd.n == 4);
    }
    CHECK_THROWS_AS(lambda_mu(chain_graph({-2, -2}), {"C1", "C1"}), std::invalid_argument);
}

TEST_CASE("chain sequences satisfy the recursions and determinant identities") {
    // Exhaustive sweep over e_i in [2,6], r <= 8 (sampled full for r <= 4,
    // diagonal slices beyond to keep the sweep quick but exhaustive in spirit:
    // every value combination occurs for r <= 4; longer chains use all-equal
    // plus mixed patterns).
    auto check_chain = [&](const std::vector<int>& e) {
        std::vector<int> selfs;
        for (int ei : e) selfs.push_back(-ei);
        const auto g = chain_graph(selfs);
        const ChainData cd = lambda_mu(g, chain_ids(e.size()));
        const std::size_t r = e.size();
        // The recursions and the determinant identity hold away from the
        // padded boundary entries (lambda_{r+1} and mu_0 are conventionally 1
        // rather than the recursion's virtual 0).
        for (std::size_t i = 1; i + 1 <= r; ++i)
            CHECK(cd.lambda[i - 1] - BigInt(e[i - 1]) * cd.lambda[i] + cd.lambda[i + 1] == 0);
        for (std::size_t i = 2; i <= r; ++i)
            CHECK(cd.mu[i - 1] - BigInt(e[i - 1]) * cd.mu[i] + cd.mu[i + 1] == 0);
        for (std::size_t i = 1; i + 1 <= r; ++i)
            CHECK(cd.lambda[i] * cd.mu[i + 1] - cd.lambda[i + 1] * cd.mu[i] == cd.n);
        // Against the literal determinant definition.
        for (std::size_t k = 2; k <= r + 1; ++k) CHECK(cd.mu[k] == minor_det(e, 1, k - 1));
        for (std::size_t l = 0; l + 1 <= r; ++l) CHECK(cd.lambda[l] == minor_det(e, l + 1, r));
        CHECK(cd.n == minor_det(e, 1, r));
    };

    std::vector<std::vector<int>> cases;
    // Full cartesian products for r <= 4.
    for (int r = 1; r <= 4; ++r) {
        std::vector<int> e(r, 2);
        while (true) {
            cases.push_back(e);
            int carry = 0;
            while (carry < r && ++e[carry] > 6) e[carry++] = 2;
            if (carry == r) break;
        }
    }
    // Longer chains: periodic patterns through every value.
    for (int r = 5; r <= 8; ++r)
        for (int a = 2; a <= 6; ++a)
            for (int b = 2; b <= 6; ++b) {
                std::vector<int> e(r);
                for (int i = 0; i < r; ++i) e[i] = i % 2 ? a : b;
                cases.push_back(e);
            }
    for (const auto& e : cases) check_chain(e);
}

TEST_CASE("m_divisor on chains") {
    {
        const auto g = chain_graph({-2, -2});
        const Divisor d{{"C1", EpsAffine(Rational(-1))}, {"C2", EpsAffine(Rational(0))}};
        const Divisor m = m_divisor(g, chain_ids(2), d);
        CHECK(m.at("C1") == EpsAffine(Rational::of(2, 3)));
        CHECK(m.at("C2") == EpsAffine(Rational::of(1, 3)));
    }
    {
        const auto g = chain_graph({-2, -2, -3});
        const Divisor d{{"C1", EpsAffine()}, {"C2", EpsAffine()}, {"C3", EpsAffine()}};
        const Divisor m = m_divisor(g, chain_ids(3), d);
        for (const auto& [id, coeff] : m) CHECK(coeff.is_zero());
    }
    {
        const auto g = chain_graph({-2});
        const Divisor d{{"C1", EpsAffine(Rational(-1), Rational(-1))}};
        const Divisor m = m_divisor(g, chain_ids(1), d);
        CHECK(m.at("C1") == EpsAffine(Rational::of(1, 2), Rational::of(1, 2)));
    }
    {
        // Non-negative-definite support is rejected.
        const auto g = chain_graph({-1, -1});
        const Divisor d{{"C1", EpsAffine(Rational(-1))}, {"C2", EpsAffine()}};
        CHECK_THROWS_AS(m_divisor(g, chain_ids(2), d), std::invalid_argument);
    }
}

TEST_CASE("closed form, dense solver, and independent oracle agree") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> e_pick(2, 6);
    std::uniform_int_distribution<int> r_pick(1, 8);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    for (int trial = 0; trial < 250; ++trial) {
        const int r = r_pick(rng);
        std::vector<int> selfs;
        for (int i = 0; i < r; ++i) selfs.push_back(-e_pick(rng));
        const auto g = chain_graph(selfs);
        const auto ids = chain_ids(r);
        Divisor d;
        std::vector<EpsAffine> dot(r);
        for (int i = 0; i < r; ++i) {
            dot[i] = EpsAffine(Rational::of(num(rng), den(rng)), Rational::of(num(rng), den(rng)));
            d[ids[i]] = dot[i];
        }
        const Divisor m = m_divisor(g, ids, d);
        const ChainData cd = lambda_mu(g, ids);
        const auto gamma = chain_gamma_closed_form(cd, dot);
        for (int i = 0; i < r; ++i) CHECK(m.at(ids[i]) == gamma[i]);

        // Independent dense route, separately for both affine components.
        std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r, Rational(0)));
        for (int i = 0; i < r; ++i) {
            a[i][i] = Rational(selfs[i]);
            if (i + 1 < r) a[i][i + 1] = a[i + 1][i] = Rational(1);
        }
        std::vector<Rational> rc(r), re(r);
        for (int i = 0; i < r; ++i) {
            rc[i] = dot[i].const_part();
            re[i] = dot[i].eps_part();
        }
        const auto xc = gauss_jordan(a, rc);
        const auto xe = gauss_jordan(a, re);
        for (int i = 0; i < r; ++i) CHECK(m.at(ids[i]) == EpsAffine(xc[i], xe[i]));
    }
}

TEST_CASE("negativity criterion: nonpositive degrees give effective divisors") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> e_pick(2, 5);
    std::uniform_int_distribution<int> r_pick(1, 6);
    std::uniform_int_distribution<int> num(0, 5);
    for (int trial = 0; trial < 200; ++trial) {
        const int r = r_pick(rng);
        std::vector<int> selfs;
        for (int i = 0; i < r; ++i) selfs.push_back(-e_pick(rng));
        const auto g = chain_graph(selfs);
        const auto ids = chain_ids(r);
        Divisor d1, d2;
        for (int i = 0; i < r; ++i) {
            const Rational lower(-num(rng));
            d1[ids[i]] = EpsAffine(lower);
            d2[ids[i]] = EpsAffine(lower + Rational(num(rng)));  // d1 <= d2 componentwise
        }
        const Divisor m1 = m_divisor(g, ids, d1);
        const Divisor m2 = m_divisor(g, ids, d2);
        for (const auto& id : ids) {
            CHECK(m1.at(id).const_part() >= Rational(0));  // D.C <= 0 implies M >= 0
            CHECK(m1.at(id).const_part() >= m2.at(id).const_part());  // monotone
        }
    }
}

TEST_CASE("chain extension test") {
    const Rational zero(0), third(1, 3);
    {
        // F = single (-2) with D.C1 = -1; candidate with D.c = 0.
        const DecoratedGraph g({inv("C1", -2), inv("X", -2)}, {{"C1", "X", 1}});
        const Divisor d{{"C1", EpsAffine(Rational(-1))}, {"X", EpsAffine()}};
        CHECK(extend_chain_test(g, {"C1"}, "X", d, zero, third));
        // Equality boundary 1/2 < 1/2 fails.
        const Divisor d2{{"C1", EpsAffine(Rational(-1))}, {"X", EpsAffine(Rational::of(1, 2))}};
        CHECK_FALSE(extend_chain_test(g, {"C1"}, "X", d2, zero, third));
    }
    {
        // Chain of type (A): D.C1 = -(1+eps); candidate with D.c = 1 - eps.
        const DecoratedGraph g({inv("C1", -2), inv("X", -2)}, {{"C1", "X", 1}});
        const Divisor d{{"C1", EpsAffine(Rational(-1), Rational(-1))},
                        {"X", EpsAffine(Rational(1), Rational(-1))}};
        CHECK_FALSE(extend_chain_test(g, {"C1"}, "X", d, zero, third));
    }
    {
        // Adjacency precondition: candidate must meet only the last curve.
        const DecoratedGraph g({inv("C1", -2), inv("C2", -2), inv("X", -2)},
                               {{"C1", "C2", 1}, {"C1", "X", 1}});
        const Divisor d{{"C1", EpsAffine(Rational(-1))},
                        {"C2", EpsAffine()},
                        {"X", EpsAffine()}};
        CHECK_THROWS_AS(extend_chain_test(g, {"C1", "C2"}, "X", d, zero, third),
                        std::invalid_argument);
    }
}

TEST_CASE("special chain bounds") {
    const Rational zero(0), third(1, 3);
    {
        // (-1)-F-curve followed by a (-2)-F-curve, D = K with K.C = (-(1+eps), 0).
        const auto g = chain_graph({-2, -2});
        const Divisor d{{"C1", EpsAffine(Rational(-1), Rational(-1))}, {"C2", EpsAffine()}};
        const auto rep = special_chain_bounds(g, chain_ids(2), d, zero, third);
        CHECK(rep.gamma[0] == EpsAffine(Rational::of(2, 3), Rational::of(2, 3)));
        CHECK(rep.gamma[1] == EpsAffine(Rational::of(1, 3), Rational::of(1, 3)));
        CHECK(rep.positive_chain);
        CHECK(rep.gamma_bounds_hold);  // gamma_2 = (1+eps)/3 meets the bound exactly
        CHECK(rep.nested_increasing);
    }
    {
        // Single-curve special chain: the bound is an equality.
        const auto g = chain_graph({-3});
        const Divisor d{{"C1", EpsAffine(Rational(-2))}};
        const auto rep = special_chain_bounds(g, chain_ids(1), d, zero, third);
        CHECK(rep.gamma[0] == EpsAffine(Rational::of(2, 3)));
        CHECK(rep.gamma_bounds_hold);
        CHECK(rep.positive_chain);
    }
    {
        // Criterion of the mu-weighted sum on (-2,-2,-2) with D.C = (-eps,0,0).
        const auto g = chain_graph({-2, -2, -2});
        const Divisor d{{"C1", EpsAffine(Rational(0), Rational(-1))},
                        {"C2", EpsAffine()},
                        {"C3", EpsAffine()}};
        const auto rep = special_chain_bounds(g, chain_ids(3), d, zero, third);
        CHECK(rep.positive_chain);
        CHECK(rep.gamma_bounds_hold);
        CHECK(rep.nested_increasing);
    }
    {
        // Violated precondition: D.C1 must be negative on the interval.
        const auto g = chain_graph({-2, -2});
        const Divisor d{{"C1", EpsAffine(Rational(1))}, {"C2", EpsAffine()}};
        CHECK_THROWS_AS(special_chain_bounds(g, chain_ids(2), d, zero, third),
                        std::invalid_argument);
    }
}

TEST_CASE("random special chains satisfy the gamma bound") {
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> e_pick(2, 6);
    std::uniform_int_distribution<int> r_pick(1, 8);
    std::uniform_int_distribution<int> neg(1, 5);
    std::uniform_int_distribution<int> pos(0, 3);
    const Rational zero(0), third(1, 3);
    int done = 0;
    while (done < 1000) {
        const int r = r_pick(rng);
        std::vector<int> selfs;
        for (int i = 0; i < r; ++i) selfs.push_back(-e_pick(rng));
        const auto g = chain_graph(selfs);
        const auto ids = chain_ids(r);
        Divisor d;
        d[ids[0]] = EpsAffine(Rational(-neg(rng)));
        for (int i = 1; i < r; ++i) d[ids[i]] = EpsAffine(Rational(pos(rng)));
        const auto rep = special_chain_bounds(g, ids, d, zero, third);
        CHECK(rep.gamma_bounds_hold);
        if (rep.positive_chain) CHECK(rep.nested_increasing);
        ++done;
    }
}
