#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "folsing/chains.hpp"
#include "folsing/graph.hpp"
#include "folsing/linalg.hpp"

namespace folsing {

// ---------------------------------------------------------------------------
// Shape helpers
// ---------------------------------------------------------------------------

namespace shape {

inline bool smooth_rational(const Curve& c) { return c.genus == 0 && !c.nodal; }

inline bool has_multi_edge(const DecoratedGraph& g) {
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (g.adjacency(i, j) > 1) return true;
    return false;
}

inline int simple_degree(const DecoratedGraph& g, std::size_t i) {
    return static_cast<int>(g.neighbours(i).size());
}

// Vertex order of a path graph (single vertices count), or nullopt.
inline std::optional<std::vector<std::size_t>> path_order(const DecoratedGraph& g) {
    if (g.empty() || !g.connected() || has_multi_edge(g)) return std::nullopt;
    if (g.size() == 1) return std::vector<std::size_t>{0};
    std::vector<std::size_t> ends;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const int d = simple_degree(g, i);
        if (d > 2) return std::nullopt;
        if (d == 1) ends.push_back(i);
    }
    if (ends.size() != 2) return std::nullopt;
    std::vector<std::size_t> order{ends.front()};
    std::size_t prev = order.front();
    std::size_t cur = g.neighbours(prev).front();
    while (true) {
        order.push_back(cur);
        const auto nbs = g.neighbours(cur);
        std::optional<std::size_t> next;
        for (std::size_t nb : nbs)
            if (nb != prev) next = nb;
        if (!next) break;
        prev = cur;
        cur = *next;
    }
    if (order.size() != g.size()) return std::nullopt;
    return order;
}

// Cycle shape: every vertex meets the rest of the graph twice.  Covers the
// 2-cycle (double edge) and simple cycles of length >= 3.
inline bool is_cycle(const DecoratedGraph& g) {
    if (g.size() < 2 || !g.connected()) return false;
    if (g.size() == 2) return g.adjacency(0, 1) == 2;
    if (has_multi_edge(g)) return false;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (simple_degree(g, i) != 2) return false;
    return true;
}

// The path hanging off `center` that starts at `first`, walking away from
// the center.  Returns nullopt when the walk meets a branch vertex.
inline std::optional<std::vector<std::size_t>> leg_from(const DecoratedGraph& g,
                                                        std::size_t center, std::size_t first) {
    std::vector<std::size_t> leg;
    std::size_t prev = center;
    std::size_t cur = first;
    while (true) {
        leg.push_back(cur);
        std::vector<std::size_t> ahead;
        for (std::size_t nb : g.neighbours(cur))
            if (nb != prev) ahead.push_back(nb);
        if (ahead.empty()) return leg;
        if (ahead.size() > 1) return std::nullopt;
        prev = cur;
        cur = ahead.front();
    }
}

// Determinant of the intersection matrix of a sub-path, as a positive integer
// (the chain "type" m).
inline BigInt leg_determinant(const DecoratedGraph& g, const std::vector<std::size_t>& leg) {
    const std::size_t r = leg.size();
    IntMatrix m(r, std::vector<BigInt>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        m[i][i] = -g.curve(leg[i]).self_int;
        if (i + 1 < r) m[i][i + 1] = m[i + 1][i] = -1;
    }
    return determinant(std::move(m));
}

}  // namespace shape

// ---------------------------------------------------------------------------
// Named building blocks
// ---------------------------------------------------------------------------

inline bool is_minus1_f_curve(const Curve& c) {
    return c.invariant && shape::smooth_rational(c) && c.z_index == 1;
}

inline bool is_minus2_f_curve(const Curve& c) {
    return c.invariant && shape::smooth_rational(c) && c.z_index == 2;
}

// F-chain along the given vertex order: invariant smooth rational curves of
// self-intersection <= -2 with total Z profile (1, 2, 2, ..., 2).
inline bool is_f_chain_sequence(const DecoratedGraph& g, const std::vector<std::size_t>& order) {
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Curve& c = g.curve(order[k]);
        if (!c.invariant || !shape::smooth_rational(c) || c.self_int > -2) return false;
        if (c.z_index != (k == 0 ? 1 : 2)) return false;
    }
    return true;
}

enum class BlockKind {
    F_CHAIN,
    MINUS1_F,
    MINUS2_F,
    BAD_TAIL,
    EGL_NODAL,
    EGL_CYCLE,
    STAR_CENTER,
    HJ_CHAIN,
};

inline const char* to_string(BlockKind k) {
    switch (k) {
        case BlockKind::F_CHAIN: return "F_CHAIN";
        case BlockKind::MINUS1_F: return "MINUS1_F";
        case BlockKind::MINUS2_F: return "MINUS2_F";
        case BlockKind::BAD_TAIL: return "BAD_TAIL";
        case BlockKind::EGL_NODAL: return "EGL_NODAL";
        case BlockKind::EGL_CYCLE: return "EGL_CYCLE";
        case BlockKind::STAR_CENTER: return "STAR_CENTER";
        case BlockKind::HJ_CHAIN: return "HJ_CHAIN";
    }
    return "?";
}

struct BlockTag {
    BlockKind kind;
    std::string curve_id;             // anchor: first curve / tagged curve
    std::vector<BigInt> parameters;   // chain determinants where meaningful
};

inline bool is_bad_tail(const DecoratedGraph& g, std::size_t i) {
    const Curve& c = g.curve(i);
    if (!c.invariant || !shape::smooth_rational(c) || c.z_index != 3 || c.self_int > -2)
        return false;
    int count = 0;
    for (std::size_t nb : g.neighbours(i)) {
        const Curve& n = g.curve(nb);
        if (is_minus1_f_curve(n) && n.self_int == -2) ++count;
    }
    return count >= 2;
}

inline bool is_egl_nodal(const DecoratedGraph& g, std::size_t i) {
    const Curve& c = g.curve(i);
    return c.nodal && c.invariant && c.z_index == 0 && g.degrees(i).d == 0;
}

inline bool is_egl_cycle(const DecoratedGraph& g) {
    if (!shape::is_cycle(g)) return false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!is_minus2_f_curve(g.curve(i))) return false;
        if (g.degrees(i).d2 != 2) return false;
    }
    return true;
}

// Star center: non-invariant tang-0 curve all of whose branches are F-chains
// attached along their first curves.
inline bool is_star_center(const DecoratedGraph& g, std::size_t i) {
    const Curve& c = g.curve(i);
    if (c.invariant || !shape::smooth_rational(c) || c.tangency != 0) return false;
    const auto nbs = g.neighbours(i);
    if (nbs.empty()) return false;
    for (std::size_t nb : nbs) {
        if (g.adjacency(i, nb) != 1) return false;
        const auto leg = shape::leg_from(g, i, nb);
        if (!leg || !is_f_chain_sequence(g, *leg)) return false;
    }
    return true;
}

// Tags every named configuration found in the graph.
inline std::vector<BlockTag> recognize_blocks(const DecoratedGraph& g) {
    std::vector<BlockTag> tags;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Curve& c = g.curve(i);
        if (is_minus1_f_curve(c)) tags.push_back({BlockKind::MINUS1_F, c.id, {}});
        if (is_minus2_f_curve(c)) tags.push_back({BlockKind::MINUS2_F, c.id, {}});
        if (is_bad_tail(g, i)) tags.push_back({BlockKind::BAD_TAIL, c.id, {}});
        if (is_egl_nodal(g, i)) tags.push_back({BlockKind::EGL_NODAL, c.id, {}});
        if (is_star_center(g, i)) tags.push_back({BlockKind::STAR_CENTER, c.id, {}});
    }
    if (is_egl_cycle(g)) tags.push_back({BlockKind::EGL_CYCLE, g.curve(std::size_t{0}).id, {}});

    // Maximal F-chains: connected components of the invariant subgraph that
    // are paths carrying the F-chain profile in some orientation.
    for (const auto& comp : detail::invariant_components(g)) {
        if (comp.empty()) continue;
        std::vector<Curve> curves;
        std::vector<::folsing::Edge> edges;
        for (std::size_t v : comp) curves.push_back(g.curve(v));
        for (std::size_t a = 0; a < comp.size(); ++a)
            for (std::size_t b = a + 1; b < comp.size(); ++b) {
                const int m = g.adjacency(comp[a], comp[b]);
                if (m > 0) edges.push_back({g.curve(comp[a]).id, g.curve(comp[b]).id, m});
            }
        DecoratedGraph sub(curves, edges);
        auto order = shape::path_order(sub);
        if (!order) continue;
        std::vector<std::size_t> fwd = *order;
        std::vector<std::size_t> bwd(fwd.rbegin(), fwd.rend());
        for (const auto& o : {fwd, bwd}) {
            if (is_f_chain_sequence(sub, o)) {
                tags.push_back({BlockKind::F_CHAIN, sub.curve(o.front()).id,
                                {shape::leg_determinant(sub, o)}});
                break;
            }
        }
    }

    // Whole-graph Hirzebruch-Jung string.
    if (auto order = shape::path_order(g)) {
        bool hj = true;
        for (std::size_t v : *order) {
            const Curve& c = g.curve(v);
            if (!shape::smooth_rational(c) || c.self_int > -2) hj = false;
        }
        if (hj) {
            const std::string a = g.curve(order->front()).id;
            const std::string b = g.curve(order->back()).id;
            tags.push_back({BlockKind::HJ_CHAIN, std::min(a, b), {shape::leg_determinant(g, *order)}});
        }
    }
    return tags;
}

// ---------------------------------------------------------------------------
// Family classification
// ---------------------------------------------------------------------------

enum class Theorem { MAIN_LC, MAIN_CAN, SURF_LC, FOL_LC };

inline const char* to_string(Theorem t) {
    switch (t) {
        case Theorem::MAIN_LC: return "main-lc";
        case Theorem::MAIN_CAN: return "main-can";
        case Theorem::SURF_LC: return "surf-lc";
        case Theorem::FOL_LC: return "fol-lc";
    }
    return "?";
}

struct FamilyTag {
    Theorem theorem;
    std::string family;                    // e.g. "MAIN_LC/3-b", "SURF_LC/fork(2,3,5)"
    std::vector<BigInt> parameters;        // chain types / leg determinants
    std::vector<std::string> annotations;  // e.g. "terminal", "not-klt"
};

namespace detail {

inline std::vector<BigInt> sorted_leg_dets(const DecoratedGraph& g,
                                           const std::vector<std::vector<std::size_t>>& legs) {
    std::vector<BigInt> dets;
    for (const auto& leg : legs) dets.push_back(shape::leg_determinant(g, leg));
    std::sort(dets.begin(), dets.end());
    return dets;
}

// For a tree with exactly one branch vertex, returns (center, legs).
struct Fork {
    std::size_t center;
    std::vector<std::vector<std::size_t>> legs;
};

inline std::optional<Fork> single_fork(const DecoratedGraph& g) {
    if (!g.connected() || shape::has_multi_edge(g)) return std::nullopt;
    std::optional<std::size_t> center;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (shape::simple_degree(g, i) >= 3) {
            if (center) return std::nullopt;
            center = i;
        }
    }
    if (!center) return std::nullopt;
    int edge_total = 0;
    for (const auto& e : g.edges()) edge_total += e.multiplicity;
    if (edge_total != static_cast<int>(g.size()) - 1) return std::nullopt;  // not a tree
    Fork f;
    f.center = *center;
    for (std::size_t nb : g.neighbours(*center)) {
        auto leg = shape::leg_from(g, *center, nb);
        if (!leg) return std::nullopt;
        f.legs.push_back(std::move(*leg));
    }
    return f;
}

// F-star chain decomposition of a path: exactly one non-invariant tang-0
// curve; the two flanks read outward from it are F-chains (possibly empty).
struct StarChain {
    std::size_t center;
    std::vector<std::vector<std::size_t>> sides;  // nonempty flanks only
};

inline std::optional<StarChain> star_chain(const DecoratedGraph& g) {
    const auto order = shape::path_order(g);
    if (!order) return std::nullopt;
    std::vector<std::size_t> non_inv;
    for (std::size_t k = 0; k < order->size(); ++k)
        if (!g.curve((*order)[k]).invariant) non_inv.push_back(k);
    if (non_inv.size() != 1) return std::nullopt;
    const std::size_t k = non_inv.front();
    const Curve& center = g.curve((*order)[k]);
    if (!shape::smooth_rational(center) || center.tangency != 0) return std::nullopt;
    StarChain sc;
    sc.center = (*order)[k];
    if (k > 0) {
        std::vector<std::size_t> left;
        for (std::size_t i = k; i-- > 0;) left.push_back((*order)[i]);
        if (!is_f_chain_sequence(g, left)) return std::nullopt;
        sc.sides.push_back(std::move(left));
    }
    if (k + 1 < order->size()) {
        std::vector<std::size_t> right(order->begin() + static_cast<long>(k) + 1, order->end());
        if (!is_f_chain_sequence(g, right)) return std::nullopt;
        sc.sides.push_back(std::move(right));
    }
    return sc;
}

// Bad-tail core: invariant smooth rational curve with Z = 3, C^2 <= -2.
inline bool z3_core(const Curve& c) {
    return c.invariant && shape::smooth_rational(c) && c.z_index == 3 && c.self_int <= -2;
}

// The three allowed second arms of the bad-tail families.  The first arm is
// always a single (-1)-F-curve of self-intersection -2.
enum class ArmKind { A, B, C, NONE };

inline ArmKind arm_kind(const DecoratedGraph& g, const std::vector<std::size_t>& leg) {
    if (leg.size() == 1) {
        const Curve& c = g.curve(leg[0]);
        if (is_minus1_f_curve(c) && c.self_int == -2) return ArmKind::A;
        if (is_minus1_f_curve(c) && c.self_int == -3) return ArmKind::B;
        return ArmKind::NONE;
    }
    if (leg.size() == 2) {
        const Curve& first = g.curve(leg[0]);
        const Curve& second = g.curve(leg[1]);
        if (is_minus1_f_curve(first) && first.self_int == -2 && is_minus2_f_curve(second) &&
            second.self_int == -2)
            return ArmKind::C;
    }
    return ArmKind::NONE;
}

inline bool all_minus2_f(const DecoratedGraph& g, const std::vector<std::size_t>& leg) {
    for (std::size_t v : leg)
        if (!is_minus2_f_curve(g.curve(v))) return false;
    return !leg.empty();
}

}  // namespace detail

// Classifier for the eps-adjoint lc families.  The bad-tail variants with a
// (-3)-arm or a two-curve arm only occur for eps >= 1/5, so they are offered
// only when the queried window reaches that range.
inline std::optional<FamilyTag> classify_main_lc(const DecoratedGraph& g, const Rational& lo,
                                                 const Rational& hi) {
    const bool upper_window = hi > Rational(1, 5);  // [lo,hi) meets [1/5, 1/3)
    auto tag = [&](std::string fam, std::vector<BigInt> params = {},
                   std::vector<std::string> notes = {}) {
        return FamilyTag{Theorem::MAIN_LC, "MAIN_LC/" + fam, std::move(params), std::move(notes)};
    };

    if (g.empty()) return std::nullopt;

    // Irreducible cases first.
    if (g.size() == 1) {
        const Curve& c = g.curve(std::size_t{0});
        if (is_egl_nodal(g, 0)) return tag("5", {}, {"not-klt"});
        if (is_minus1_f_curve(c) && c.self_int <= -2) return tag("1", {BigInt(-c.self_int)});
        if (is_minus2_f_curve(c)) return tag("2", {BigInt(-c.self_int)});
        if (!c.invariant && c.tangency == 0 && c.genus == 1 && !c.nodal)
            return tag("7", {}, {"not-klt"});
        if (!c.invariant && c.tangency == 0 && shape::smooth_rational(c)) return tag("6");
        return std::nullopt;
    }

    // Cycles: only the elliptic Gorenstein leaf survives.
    if (shape::is_cycle(g)) {
        if (is_egl_cycle(g)) return tag("5", {}, {"not-klt"});
        return std::nullopt;
    }

    // Chains.
    if (auto order = shape::path_order(g)) {
        std::vector<std::size_t> fwd = *order;
        std::vector<std::size_t> bwd(fwd.rbegin(), fwd.rend());
        for (const auto& o : {fwd, bwd}) {
            if (is_f_chain_sequence(g, o)) return tag("1", {shape::leg_determinant(g, o)});
        }
        if (detail::all_minus2_f(g, fwd)) return tag("2", {shape::leg_determinant(g, fwd)});

        // Bad-tail triples (family 3): arms read outward from the Z=3 core.
        if (g.size() == 3 || g.size() == 4) {
            for (const auto& o : {fwd, bwd}) {
                if (o.size() < 3 || !detail::z3_core(g.curve(o[1]))) continue;
                const auto left = detail::arm_kind(g, {o[0]});
                std::vector<std::size_t> rest(o.begin() + 2, o.end());
                const auto right = detail::arm_kind(g, rest);
                if (left != detail::ArmKind::A) continue;
                if (right == detail::ArmKind::A && g.size() == 3) return tag("3-a");
                if (right == detail::ArmKind::B && g.size() == 3 && upper_window)
                    return tag("3-b");
                if (right == detail::ArmKind::C && g.size() == 4 && upper_window)
                    return tag("3-c");
            }
        }

        if (auto sc = detail::star_chain(g)) {
            std::vector<std::vector<std::size_t>> legs = sc->sides;
            return tag("6", detail::sorted_leg_dets(g, legs));
        }
        return std::nullopt;
    }

    // Single forks.
    if (auto fork = detail::single_fork(g)) {
        const Curve& center = g.curve(fork->center);

        // Family 4: Z=3 invariant core with two bad-tail arms and one
        // chain of (-2)-F-curves.
        if (detail::z3_core(center) && fork->legs.size() == 3) {
            int xi = -1;
            std::vector<detail::ArmKind> arms;
            for (std::size_t i = 0; i < 3; ++i) {
                const auto kind = detail::arm_kind(g, fork->legs[i]);
                if (kind == detail::ArmKind::NONE && detail::all_minus2_f(g, fork->legs[i]) &&
                    xi < 0) {
                    xi = static_cast<int>(i);
                } else {
                    arms.push_back(kind);
                }
            }
            if (xi >= 0 && arms.size() == 2 && arms[0] != detail::ArmKind::NONE &&
                arms[1] != detail::ArmKind::NONE) {
                const bool has_a =
                    arms[0] == detail::ArmKind::A || arms[1] == detail::ArmKind::A;
                const detail::ArmKind other =
                    arms[0] == detail::ArmKind::A ? arms[1] : arms[0];
                if (has_a) {
                    if (other == detail::ArmKind::A) return tag("4-a");
                    if (other == detail::ArmKind::B && upper_window) return tag("4-b");
                    if (other == detail::ArmKind::C && upper_window) return tag("4-c");
                }
            }
            return std::nullopt;
        }

        // Family 8: F-star graphs with the listed leg types.
        if (!center.invariant && shape::smooth_rational(center) && center.tangency == 0) {
            for (const auto& leg : fork->legs)
                if (!is_f_chain_sequence(g, leg)) return std::nullopt;
            const auto dets = detail::sorted_leg_dets(g, fork->legs);
            if (fork->legs.size() == 3) {
                const BigInt &m1 = dets[0], &m2 = dets[1], &m3 = dets[2];
                if (m1 == 2 && m2 == 2 && m3 >= 2) return tag("8-a", dets);
                if (m1 == 2 && m2 == 3 && (m3 == 3 || m3 == 4 || m3 == 5)) return tag("8-a", dets);
                if ((m1 == 2 && m2 == 3 && m3 == 6) || (m1 == 2 && m2 == 4 && m3 == 4) ||
                    (m1 == 3 && m2 == 3 && m3 == 3))
                    return tag("8-b", dets, {"not-klt"});
                return std::nullopt;
            }
            if (fork->legs.size() == 4 && dets == std::vector<BigInt>{2, 2, 2, 2})
                return tag("8-c", dets, {"not-klt"});
            return std::nullopt;
        }
    }
    return std::nullopt;
}

// Classifier for the eps-adjoint canonical families (window (0, 1/4)): the
// lc families that survive, with their extra self-intersection constraints.
inline std::optional<FamilyTag> classify_main_canonical(const DecoratedGraph& g,
                                                        const Rational& lo, const Rational& hi) {
    if (!(Rational(0) <= lo && hi <= Rational(1, 4)))
        throw std::invalid_argument("classify_main_canonical: window must lie in (0, 1/4)");
    auto tag = [&](std::string fam, std::vector<BigInt> params = {},
                   std::vector<std::string> notes = {}) {
        return FamilyTag{Theorem::MAIN_CAN, "MAIN_CAN/" + fam, std::move(params), std::move(notes)};
    };
    if (g.empty()) return std::nullopt;

    if (g.size() == 1) {
        const Curve& c = g.curve(std::size_t{0});
        if (is_minus1_f_curve(c) && c.self_int <= -2)
            return tag("1", {BigInt(-c.self_int)}, {"foliated-canonical"});
        if (is_minus2_f_curve(c)) return tag("2", {BigInt(-c.self_int)}, {"foliated-canonical"});
        if (!c.invariant && c.tangency == 0 && shape::smooth_rational(c) && c.self_int == -1)
            return tag("5");
        return std::nullopt;
    }

    if (auto order = shape::path_order(g)) {
        std::vector<std::size_t> fwd = *order;
        std::vector<std::size_t> bwd(fwd.rbegin(), fwd.rend());
        for (const auto& o : {fwd, bwd}) {
            if (is_f_chain_sequence(g, o))
                return tag("1", {shape::leg_determinant(g, o)}, {"foliated-canonical"});
        }
        if (detail::all_minus2_f(g, fwd))
            return tag("2", {shape::leg_determinant(g, fwd)}, {"foliated-canonical"});

        // Family 3: bad-tail triple, every component of self-intersection -2.
        if (g.size() == 3) {
            const Curve& mid = g.curve(fwd[1]);
            if (detail::z3_core(mid) && mid.self_int == -2 &&
                detail::arm_kind(g, {fwd[0]}) == detail::ArmKind::A &&
                detail::arm_kind(g, {fwd[2]}) == detail::ArmKind::A)
                return tag("3", {}, {"foliated-canonical", "not-adjoint-terminal"});
        }

        if (auto sc = detail::star_chain(g)) {
            if (g.curve(sc->center).self_int == -1)
                return tag("5", detail::sorted_leg_dets(g, sc->sides));
            return std::nullopt;
        }
        return std::nullopt;
    }

    // Family 4: the dihedral graph, all self-intersections -2.
    if (auto fork = detail::single_fork(g)) {
        const Curve& center = g.curve(fork->center);
        if (detail::z3_core(center) && center.self_int == -2 && fork->legs.size() == 3) {
            int arm_count = 0;
            bool xi_ok = false;
            for (const auto& leg : fork->legs) {
                if (detail::arm_kind(g, leg) == detail::ArmKind::A) {
                    ++arm_count;
                } else if (detail::all_minus2_f(g, leg)) {
                    bool flat = true;
                    for (std::size_t v : leg)
                        if (g.curve(v).self_int != -2) flat = false;
                    xi_ok = flat;
                }
            }
            if (arm_count == 2 && xi_ok)
                return tag("4", {}, {"foliated-canonical", "not-adjoint-terminal"});
        }
    }
    return std::nullopt;
}

// Classifier for log canonical surface singularities.  Decorations other
// than genus/nodal are ignored.  Superfluous (-1)-curves are contracted
// first, so non-minimal models of the listed graphs classify like their
// minimal models.
inline std::optional<FamilyTag> classify_surface_lc(const DecoratedGraph& graph) {
    auto tag = [&](std::string fam, std::vector<BigInt> params = {},
                   std::vector<std::string> notes = {}) {
        return FamilyTag{Theorem::SURF_LC, "SURF_LC/" + fam, std::move(params), std::move(notes)};
    };
    if (graph.empty()) return std::nullopt;

    // Cycles before contraction: a cycle shape is already minimal here.
    if (shape::is_cycle(graph)) {
        for (const auto& c : graph.curves())
            if (!shape::smooth_rational(c)) return std::nullopt;
        return tag("cycle", {}, {"not-klt"});
    }

    // Contract smooth rational (-1)-curves of valence <= 2.
    std::vector<Curve> curves = graph.curves();
    std::vector<Edge> edges = graph.edges();
    bool contracted = true;
    while (contracted && curves.size() > 1) {
        contracted = false;
        DecoratedGraph cur(curves, edges);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const Curve& c = cur.curve(i);
            if (!shape::smooth_rational(c) || c.self_int != -1) continue;
            const auto nbs = cur.neighbours(i);
            if (nbs.size() > 2 || cur.degrees(i).d != static_cast<int>(nbs.size())) continue;
            std::vector<Curve> next_curves;
            for (std::size_t k = 0; k < cur.size(); ++k) {
                if (k == i) continue;
                Curve copy = cur.curve(k);
                if (std::find(nbs.begin(), nbs.end(), k) != nbs.end()) copy.self_int += 1;
                next_curves.push_back(copy);
            }
            std::vector<Edge> next_edges;
            for (const auto& e : edges) {
                if (e.a == c.id || e.b == c.id) continue;
                next_edges.push_back(e);
            }
            if (nbs.size() == 2)
                next_edges.push_back({cur.curve(nbs[0]).id, cur.curve(nbs[1]).id, 1});
            curves = std::move(next_curves);
            edges = std::move(next_edges);
            contracted = true;
            break;
        }
    }
    DecoratedGraph g(curves, edges);

    if (g.size() == 1) {
        const Curve& c = g.curve(std::size_t{0});
        if (c.nodal) return tag("nodal", {}, {"not-klt"});
        if (c.genus == 1) return tag("elliptic", {}, {"not-klt"});
        if (c.genus == 0) return tag("HJ");
        return std::nullopt;
    }

    if (auto order = shape::path_order(g)) {
        for (std::size_t v : *order)
            if (!shape::smooth_rational(g.curve(v))) return std::nullopt;
        return tag("HJ", {shape::leg_determinant(g, *order)});
    }

    for (const auto& c : g.curves())
        if (!shape::smooth_rational(c)) return std::nullopt;

    // Single fork with the quotient-singularity leg types.
    if (auto fork = detail::single_fork(g)) {
        const auto dets = detail::sorted_leg_dets(g, fork->legs);
        auto fork_name = [&]() {
            std::string s = "fork(";
            for (std::size_t i = 0; i < dets.size(); ++i) {
                if (i) s += ",";
                s += dets[i].str();
            }
            return s + ")";
        };
        if (fork->legs.size() == 3) {
            const BigInt &m1 = dets[0], &m2 = dets[1], &m3 = dets[2];
            const bool klt = (m1 == 2 && m2 == 2 && m3 >= 2) ||
                             (m1 == 2 && m2 == 3 && (m3 == 3 || m3 == 4 || m3 == 5));
            const bool boundary = (m1 == 2 && m2 == 3 && m3 == 6) ||
                                  (m1 == 2 && m2 == 4 && m3 == 4) ||
                                  (m1 == 3 && m2 == 3 && m3 == 3);
            if (klt) return tag(fork_name(), dets);
            if (boundary) return tag(fork_name(), dets, {"not-klt"});
            return std::nullopt;
        }
        if (fork->legs.size() == 4 && dets == std::vector<BigInt>{2, 2, 2, 2})
            return tag(fork_name(), dets, {"not-klt"});
        return std::nullopt;
    }

    // Double fork: two branch vertices carrying two (-2)-tips each, joined
    // by a chain, all self-intersections <= -2.
    {
        if (shape::has_multi_edge(g) || !g.connected()) return std::nullopt;
        std::vector<std::size_t> branch;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const int d = shape::simple_degree(g, i);
            if (d > 3) return std::nullopt;
            if (d == 3) branch.push_back(i);
        }
        if (branch.size() != 2) return std::nullopt;
        for (const auto& c : g.curves())
            if (c.self_int > -2) return std::nullopt;
        int tips = 0;
        for (std::size_t b : branch) {
            int local = 0;
            for (std::size_t nb : g.neighbours(b)) {
                if (shape::simple_degree(g, nb) == 1) {
                    if (g.curve(nb).self_int != -2) return std::nullopt;
                    ++local;
                }
            }
            if (local != 2) return std::nullopt;
            tips += local;
        }
        if (tips == 4 && g.size() >= 6) return tag("double-fork", {}, {"not-klt"});
    }
    return std::nullopt;
}

// Classifier for log canonical foliated singularities (the eps = 0 ladder).
inline std::optional<FamilyTag> classify_foliated_lc(const DecoratedGraph& g) {
    auto tag = [&](std::string fam, std::vector<BigInt> params = {},
                   std::vector<std::string> notes = {}) {
        return FamilyTag{Theorem::FOL_LC, "FOL_LC/" + fam, std::move(params), std::move(notes)};
    };
    if (g.empty()) return std::nullopt;

    if (g.size() == 1) {
        const Curve& c = g.curve(std::size_t{0});
        if (is_egl_nodal(g, 0)) return tag("5", {}, {"canonical"});
        if (is_minus1_f_curve(c) && c.self_int <= -2)
            return tag("1", {BigInt(-c.self_int)}, {"terminal", "canonical"});
        if (is_minus2_f_curve(c)) return tag("2", {BigInt(-c.self_int)}, {"canonical"});
        if (!c.invariant && c.tangency == 0 && !c.nodal) return tag("6");
        return std::nullopt;
    }

    if (shape::is_cycle(g)) {
        if (is_egl_cycle(g)) return tag("5", {}, {"canonical"});
        return std::nullopt;
    }

    if (auto order = shape::path_order(g)) {
        std::vector<std::size_t> fwd = *order;
        std::vector<std::size_t> bwd(fwd.rbegin(), fwd.rend());
        for (const auto& o : {fwd, bwd}) {
            if (is_f_chain_sequence(g, o))
                return tag("1", {shape::leg_determinant(g, o)}, {"terminal", "canonical"});
        }
        if (detail::all_minus2_f(g, fwd))
            return tag("2", {shape::leg_determinant(g, fwd)}, {"canonical"});
        if (g.size() == 3) {
            const Curve& mid = g.curve(fwd[1]);
            if (detail::z3_core(mid) && detail::arm_kind(g, {fwd[0]}) == detail::ArmKind::A &&
                detail::arm_kind(g, {fwd[2]}) == detail::ArmKind::A)
                return tag("3", {}, {"canonical"});
        }
        if (auto sc = detail::star_chain(g)) return tag("6", detail::sorted_leg_dets(g, sc->sides));
        return std::nullopt;
    }

    if (auto fork = detail::single_fork(g)) {
        const Curve& center = g.curve(fork->center);
        // Dihedral graph: bad-tail core with two (-1)-arms and a (-2)-F chain.
        if (detail::z3_core(center) && fork->legs.size() == 3) {
            int arm_count = 0;
            bool xi_ok = false;
            for (const auto& leg : fork->legs) {
                if (detail::arm_kind(g, leg) == detail::ArmKind::A) ++arm_count;
                else if (detail::all_minus2_f(g, leg)) xi_ok = true;
            }
            if (arm_count == 2 && xi_ok) return tag("4", {}, {"canonical"});
            return std::nullopt;
        }
        // F-star graph: any negative definite leg types.
        if (!center.invariant && !center.nodal && center.tangency == 0) {
            for (const auto& leg : fork->legs)
                if (!is_f_chain_sequence(g, leg)) return std::nullopt;
            return tag("7", detail::sorted_leg_dets(g, fork->legs));
        }
    }
    return std::nullopt;
}

inline std::optional<FamilyTag> classify(const DecoratedGraph& g, Theorem t, const Rational& lo,
                                         const Rational& hi) {
    switch (t) {
        case Theorem::MAIN_LC: return classify_main_lc(g, lo, hi);
        case Theorem::MAIN_CAN: return classify_main_canonical(g, lo, hi);
        case Theorem::SURF_LC: return classify_surface_lc(g);
        case Theorem::FOL_LC: return classify_foliated_lc(g);
    }
    return std::nullopt;
}

}  // namespace folsing
