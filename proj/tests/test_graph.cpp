#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "folsing/graph.hpp"

using namespace folsing;

namespace {

Curve inv(std::string id, int self, int z, int genus = 0, bool nodal = false) {
    Curve c;
    c.id = std::move(id);
    c.self_int = self;
    c.genus = genus;
    c.nodal = nodal;
    c.invariant = true;
    c.z_index = z;
    return c;
}

Curve noninv(std::string id, int self, int tang, int genus = 0) {
    Curve c;
    c.id = std::move(id);
    c.self_int = self;
    c.genus = genus;
    c.invariant = false;
    c.tangency = tang;
    return c;
}

bool has_violation(const std::vector<Violation>& vs, GraphFilter f) {
    for (const auto& v : vs)
        if (v.filter == f) return true;
    return false;
}

// Random connected tree graph with diagonally dominant self-intersections,
// hence negative definite.
DecoratedGraph random_nd_tree(std::mt19937& rng, int n) {
    std::vector<Curve> curves;
    std::vector<Edge> edges;
    std::vector<int> degree(n, 0);
    std::uniform_int_distribution<int> extra(0, 3);
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> parent(0, i - 1);
        const int p = parent(rng);
        edges.push_back({"E" + std::to_string(p + 1), "E" + std::to_string(i + 1), 1});
        ++degree[p];
        ++degree[i];
    }
    for (int i = 0; i < n; ++i)
        curves.push_back(inv("E" + std::to_string(i + 1), -(degree[i] + 1 + extra(rng)), 1));
    return DecoratedGraph(curves, edges);
}

}  // namespace

TEST_CASE("intersection matrices") {
    const DecoratedGraph two({inv("A", -2, 1), inv("B", -2, 1)}, {{"A", "B", 1}});
    CHECK(two.intersection_matrix() ==
          IntMatrix{{BigInt(-2), BigInt(1)}, {BigInt(1), BigInt(-2)}});

    const DecoratedGraph single({inv("A", -3, 1)}, {});
    CHECK(single.intersection_matrix() == IntMatrix{{BigInt(-3)}});

    const DecoratedGraph double_edge({inv("A", -2, 2), inv("B", -3, 2)}, {{"A", "B", 2}});
    CHECK(double_edge.intersection_matrix() ==
          IntMatrix{{BigInt(-2), BigInt(2)}, {BigInt(2), BigInt(-3)}});
}

TEST_CASE("negative definiteness") {
    CHECK(is_negative_definite({{BigInt(-2), BigInt(1)}, {BigInt(1), BigInt(-2)}}));
    CHECK_FALSE(is_negative_definite({{BigInt(-2), BigInt(1), BigInt(1)},
                                      {BigInt(1), BigInt(-2), BigInt(1)},
                                      {BigInt(1), BigInt(1), BigInt(-2)}}));
    CHECK_FALSE(is_negative_definite({{BigInt(0)}}));
    CHECK(is_negative_definite(IntMatrix{}));
    CHECK_THROWS_AS(is_negative_definite({{BigInt(-2), BigInt(1)}, {BigInt(0), BigInt(-2)}}),
                    std::invalid_argument);
}

TEST_CASE("degree counts") {
    // Four-valent star with invariant legs.
    std::vector<Curve> curves{inv("C", -3, 4)};
    std::vector<Edge> edges;
    for (int i = 1; i <= 4; ++i) {
        curves.push_back(inv("L" + std::to_string(i), -2, 1));
        edges.push_back({"C", "L" + std::to_string(i), 1});
    }
    const DecoratedGraph star(curves, edges);
    const Degrees d = star.degrees("C");
    CHECK(d.d == 4);
    CHECK(d.d2 == 4);
    CHECK(d.d1 == 0);

    const DecoratedGraph lone({inv("A", -2, 1)}, {});
    CHECK(lone.degrees("A").d == 0);
    CHECK(lone.degrees("A").d1 == 0);
    CHECK(lone.degrees("A").d2 == 0);

    const DecoratedGraph mixed({inv("A", -2, 2), inv("B", -2, 1), noninv("N", -1, 0)},
                               {{"A", "B", 1}, {"A", "N", 1}});
    const Degrees da = mixed.degrees("A");
    CHECK(da.d == 2);
    CHECK(da.d1 == 1);
    CHECK(da.d2 == 1);

    CHECK_THROWS_AS(mixed.degrees("missing"), std::out_of_range);
}

TEST_CASE("degree sum equals twice the edge multiplicity") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> size(2, 7);
        const DecoratedGraph g = random_nd_tree(rng, size(rng));
        int total_mult = 0;
        for (const auto& e : g.edges()) total_mult += e.multiplicity;
        int degree_sum = 0;
        for (const auto& c : g.curves()) degree_sum += g.degrees(c.id).d;
        CHECK(degree_sum == 2 * total_mult);
    }
}

TEST_CASE("validate catches the filter violations") {
    // A chain with Z profile (1,2) passes everything.
    const DecoratedGraph chain({inv("A", -2, 1), inv("B", -2, 2)}, {{"A", "B", 1}});
    CHECK(validate(chain, all_filters()).empty());

    // Two invariant curves with Z = 1 each: no room for a separatrix.
    const DecoratedGraph pair({inv("A", -2, 1), inv("B", -2, 1)}, {{"A", "B", 1}});
    CHECK(has_violation(validate(pair, all_filters()), GraphFilter::R3));

    // Isolated invariant curve with Z = 0.
    const DecoratedGraph bare({inv("A", -2, 0)}, {});
    CHECK(has_violation(validate(bare, all_filters()), GraphFilter::R1));

    // Z smaller than the number of invariant neighbours.
    const DecoratedGraph starved({inv("A", -2, 1), inv("B", -2, 2), inv("C", -2, 2)},
                                 {{"A", "B", 1}, {"A", "C", 1}});
    CHECK(has_violation(validate(starved, all_filters()), GraphFilter::R2));

    // Invariant (-1)-curve.
    const DecoratedGraph min_bad({inv("A", -1, 1)}, {});
    CHECK(has_violation(validate(min_bad, all_filters()), GraphFilter::MIN));

    // Cycle of three (-2)-curves is not negative definite.
    const DecoratedGraph cycle({inv("A", -2, 2), inv("B", -2, 2), inv("C", -2, 2)},
                               {{"A", "B", 1}, {"B", "C", 1}, {"A", "C", 1}});
    CHECK(has_violation(validate(cycle, all_filters()), GraphFilter::ND));

    // The nodal elliptic Gorenstein leaf is exempt from R1.
    const DecoratedGraph nodal({inv("A", -2, 0, 0, true)}, {});
    CHECK(validate(nodal, all_filters()).empty());
}

TEST_CASE("principal submatrices of negative definite graphs stay negative definite") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> size(2, 7);
        const DecoratedGraph g = random_nd_tree(rng, size(rng));
        const IntMatrix m = g.intersection_matrix();
        REQUIRE(is_negative_definite(m));
        std::uniform_int_distribution<int> pick(0, static_cast<int>(g.size()) - 1);
        const int drop = pick(rng);
        IntMatrix sub;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (static_cast<int>(i) == drop) continue;
            std::vector<BigInt> row;
            for (std::size_t j = 0; j < m.size(); ++j)
                if (static_cast<int>(j) != drop) row.push_back(m[i][j]);
            sub.push_back(std::move(row));
        }
        CHECK(is_negative_definite(sub));
    }
}

TEST_CASE("adding a clean curve never removes violations") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> z_pick(0, 2);
    std::uniform_int_distribution<int> self_pick(-4, -1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 300; ++trial) {
        // Start from a small random decorated graph (often with violations).
        const int n = 2 + trial % 3;
        std::vector<Curve> curves;
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i) {
            if (coin(rng)) curves.push_back(inv("E" + std::to_string(i), -2, z_pick(rng)));
            else curves.push_back(noninv("E" + std::to_string(i), self_pick(rng), 0));
        }
        for (int i = 1; i < n; ++i) {
            std::uniform_int_distribution<int> parent(0, i - 1);
            edges.push_back({"E" + std::to_string(parent(rng)), "E" + std::to_string(i), 1});
        }
        const DecoratedGraph before(curves, edges);
        auto old_violations = validate(before, all_filters());

        // Attach a violation-free curve: non-invariant, or invariant with
        // Z <= 2 (large-Z additions can rescue an invariant tree).
        Curve extra = coin(rng) ? inv("X", -3, 1 + coin(rng)) : noninv("X", -2, 0);
        std::uniform_int_distribution<int> anchor(0, n - 1);
        auto curves2 = curves;
        auto edges2 = edges;
        curves2.push_back(extra);
        edges2.push_back({"E" + std::to_string(anchor(rng)), "X", 1});
        const DecoratedGraph after(curves2, edges2);
        auto new_violations = validate(after, all_filters());

        for (const auto& v : old_violations) {
            bool still = false;
            if (v.filter == GraphFilter::ND) {
                // ND violations are reported graph-wide, not per curve.
                still = has_violation(new_violations, GraphFilter::ND);
            } else {
                for (const auto& w : new_violations)
                    if (w.filter == v.filter && w.detail == v.detail) still = true;
            }
            CHECK(still);
        }
    }
}
