#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "folsing/eps_affine.hpp"
#include "folsing/linalg.hpp"

namespace folsing {

// One exceptional curve with its foliation decorations.  Exactly one of
// z_index / tangency is meaningful, matching the invariance flag.
struct Curve {
    std::string id;
    int self_int = -1;   // C^2, always negative
    int genus = 0;       // genus of the smooth model
    bool nodal = false;  // irreducible rational curve with one node
    bool invariant = true;
    int z_index = 0;   // Z(F,C), used iff invariant
    int tangency = 0;  // tang(F,C), used iff not invariant

    // Arithmetic genus: the node raises p_a by one.
    int pa() const { return genus + (nodal ? 1 : 0); }
};

struct Edge {
    std::string a;
    std::string b;
    int multiplicity = 1;
};

struct Degrees {
    int d = 0;   // (E - C) . C
    int d1 = 0;  // edges to non-invariant neighbours
    int d2 = 0;  // edges to invariant neighbours
};

// Weighted dual graph of an exceptional configuration.  Curves are kept in
// the declared order; edges carry multiplicities (2 encodes a 2-cycle).
// Immutable in spirit: all operations are const.
class DecoratedGraph {
public:
    DecoratedGraph() = default;
    DecoratedGraph(std::vector<Curve> curves, std::vector<Edge> edges)
        : curves_(std::move(curves)), edges_(std::move(edges)) {
        for (std::size_t i = 0; i < curves_.size(); ++i) {
            if (!index_.emplace(curves_[i].id, i).second)
                throw std::invalid_argument("DecoratedGraph: duplicate curve id " + curves_[i].id);
        }
        for (const auto& e : edges_) {
            if (e.a == e.b) throw std::invalid_argument("DecoratedGraph: self-edge on " + e.a);
            if (e.multiplicity < 1) throw std::invalid_argument("DecoratedGraph: bad multiplicity");
            index_of(e.a);
            index_of(e.b);
        }
    }

    std::size_t size() const { return curves_.size(); }
    bool empty() const { return curves_.empty(); }
    const std::vector<Curve>& curves() const { return curves_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Curve& curve(std::size_t i) const { return curves_.at(i); }
    const Curve& curve(const std::string& id) const { return curves_[index_of(id)]; }

    std::size_t index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw std::out_of_range("DecoratedGraph: unknown curve id " + id);
        return it->second;
    }
    bool contains(const std::string& id) const { return index_.count(id) != 0; }

    // Total edge multiplicity between two distinct curves.
    int adjacency(std::size_t i, std::size_t j) const {
        int total = 0;
        for (const auto& e : edges_) {
            const std::size_t a = index_of(e.a);
            const std::size_t b = index_of(e.b);
            if ((a == i && b == j) || (a == j && b == i)) total += e.multiplicity;
        }
        return total;
    }

    IntMatrix intersection_matrix() const {
        const std::size_t n = curves_.size();
        IntMatrix m(n, std::vector<BigInt>(n, 0));
        for (std::size_t i = 0; i < n; ++i) m[i][i] = curves_[i].self_int;
        for (const auto& e : edges_) {
            const std::size_t a = index_of(e.a);
            const std::size_t b = index_of(e.b);
            m[a][b] += e.multiplicity;
            m[b][a] += e.multiplicity;
        }
        return m;
    }

    Degrees degrees(const std::string& id) const { return degrees(index_of(id)); }
    Degrees degrees(std::size_t i) const {
        Degrees deg;
        for (const auto& e : edges_) {
            const std::size_t a = index_of(e.a);
            const std::size_t b = index_of(e.b);
            std::size_t other;
            if (a == i) other = b;
            else if (b == i) other = a;
            else continue;
            deg.d += e.multiplicity;
            if (curves_[other].invariant) deg.d2 += e.multiplicity;
            else deg.d1 += e.multiplicity;
        }
        return deg;
    }

    std::vector<std::size_t> neighbours(std::size_t i) const {
        std::vector<std::size_t> out;
        for (const auto& e : edges_) {
            const std::size_t a = index_of(e.a);
            const std::size_t b = index_of(e.b);
            if (a == i) out.push_back(b);
            else if (b == i) out.push_back(a);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool connected() const {
        if (curves_.empty()) return true;
        std::vector<bool> seen(curves_.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t visited = 1;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : neighbours(v)) {
                if (!seen[w]) {
                    seen[w] = true;
                    ++visited;
                    stack.push_back(w);
                }
            }
        }
        return visited == curves_.size();
    }

private:
    std::vector<Curve> curves_;
    std::vector<Edge> edges_;
    std::map<std::string, std::size_t> index_;
};

// Divisor supported on (a subset of) the curves of a graph.
using Divisor = std::map<std::string, EpsAffine>;

// Realizability filters a decorated graph must pass to qualify as the
// exceptional configuration of a minimal resolution.
enum class GraphFilter {
    ND,   // negative definite intersection matrix
    R1,   // smooth rational invariant curve carries at least one singularity
    R2,   // Z(F,C) counts every intersection with an invariant neighbour
    R3,   // invariant trees need a separatrix leaving the tree
    MIN,  // invariant curves are not (-1)-curves
};

struct Violation {
    GraphFilter filter;
    std::string detail;
};

namespace detail {

// Connected components of the subgraph spanned by invariant curves.
inline std::vector<std::vector<std::size_t>> invariant_components(const DecoratedGraph& g) {
    std::vector<std::vector<std::size_t>> comps;
    std::vector<bool> seen(g.size(), false);
    for (std::size_t s = 0; s < g.size(); ++s) {
        if (seen[s] || !g.curve(s).invariant) continue;
        std::vector<std::size_t> comp;
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (std::size_t w : g.neighbours(v)) {
                if (!seen[w] && g.curve(w).invariant) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

}  // namespace detail

// Runs the requested filters and returns every violation found.
inline std::vector<Violation> validate(const DecoratedGraph& g,
                                       const std::vector<GraphFilter>& filters) {
    std::vector<Violation> out;
    auto wants = [&](GraphFilter f) {
        return std::find(filters.begin(), filters.end(), f) != filters.end();
    };

    if (wants(GraphFilter::ND)) {
        if (!is_negative_definite(g.intersection_matrix()))
            out.push_back({GraphFilter::ND, "intersection matrix is not negative definite"});
    }

    for (std::size_t i = 0; i < g.size(); ++i) {
        const Curve& c = g.curve(i);
        if (!c.invariant) continue;
        // A smooth invariant curve with C^2 < 0 carries a singularity: the
        // Camacho-Sad residues along C must sum to C^2 != 0.  Nodal curves
        // are exempt (the node is not counted by the Z convention used here).
        if (wants(GraphFilter::R1) && !c.nodal && c.self_int < 0 && c.z_index < 1) {
            out.push_back({GraphFilter::R1, c.id + ": invariant smooth curve with Z = 0"});
        }
        if (wants(GraphFilter::R2)) {
            const Degrees deg = g.degrees(i);
            if (c.z_index < deg.d2)
                out.push_back({GraphFilter::R2, c.id + ": Z < number of invariant neighbours"});
        }
        if (wants(GraphFilter::MIN) && c.self_int > -2) {
            out.push_back({GraphFilter::MIN, c.id + ": invariant (-1)-curve"});
        }
    }

    if (wants(GraphFilter::R3)) {
        for (const auto& comp : detail::invariant_components(g)) {
            bool has_nodal = false;
            int z_sum = 0;
            int edge_mult = 0;
            bool simple = true;
            for (std::size_t v : comp) {
                if (g.curve(v).nodal) has_nodal = true;
                z_sum += g.curve(v).z_index;
            }
            for (std::size_t a = 0; a < comp.size(); ++a) {
                for (std::size_t b = a + 1; b < comp.size(); ++b) {
                    const int mult = g.adjacency(comp[a], comp[b]);
                    if (mult > 1) simple = false;
                    edge_mult += mult;
                }
            }
            const bool is_tree = simple && edge_mult == static_cast<int>(comp.size()) - 1;
            if (has_nodal || !is_tree) continue;  // separatrix theorem needs an NC tree
            if (z_sum < 2 * edge_mult + 1) {
                out.push_back({GraphFilter::R3,
                               "invariant tree at " + g.curve(comp.front()).id +
                                   ": total Z leaves no room for a separatrix"});
            }
        }
    }

    return out;
}

inline std::vector<GraphFilter> all_filters() {
    return {GraphFilter::ND, GraphFilter::R1, GraphFilter::R2, GraphFilter::R3, GraphFilter::MIN};
}

inline bool passes_filters(const DecoratedGraph& g) { return validate(g, all_filters()).empty(); }

}  // namespace folsing
