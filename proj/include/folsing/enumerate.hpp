#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "folsing/adjoint.hpp"
#include "folsing/graph.hpp"
#include "folsing/patterns.hpp"

namespace folsing {

// Generation bounds.  Enumeration is desk-scale by design: isomorphism is
// handled by scanning vertex permutations, which is fine up to 8 curves.
struct Bounds {
    int max_curves = 4;
    int min_self = -4;
    int max_z = 4;
    int max_tang = 1;
    bool allow_nodal = true;
    bool allow_genus1 = true;
    int max_edge_mult = 2;
};

namespace enum_detail {

constexpr int kMaxN = 8;

struct Topology {
    int n = 0;
    std::array<std::array<int, kMaxN>, kMaxN> adj{};    // edge multiplicities
    std::vector<std::array<int, kMaxN>> automorphisms;  // adjacency-preserving perms
    std::string key;                                    // canonical adjacency string
};

inline bool topo_connected(const Topology& t) {
    if (t.n == 0) return false;
    std::array<bool, kMaxN> seen{};
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < t.n; ++w) {
            if (t.adj[v][w] > 0 && !seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == t.n;
}

inline std::string topo_key(const Topology& t, const std::array<int, kMaxN>& perm) {
    std::string key;
    key.reserve(static_cast<std::size_t>(t.n * (t.n - 1) / 2));
    for (int i = 0; i < t.n; ++i)
        for (int j = i + 1; j < t.n; ++j)
            key.push_back(static_cast<char>('0' + t.adj[perm[i]][perm[j]]));
    return key;
}

// All connected multigraph topologies on n vertices up to isomorphism,
// with their automorphism groups.
inline std::vector<Topology> connected_topologies(int n, int max_mult) {
    std::vector<Topology> out;
    if (n == 1) {
        Topology t;
        t.n = 1;
        t.automorphisms.push_back({0});
        t.key = "";
        out.push_back(t);
        return out;
    }
    const int slots = n * (n - 1) / 2;
    std::vector<int> assign(slots, 0);
    std::array<int, kMaxN> identity{};
    std::iota(identity.begin(), identity.begin() + n, 0);
    while (true) {
        Topology t;
        t.n = n;
        int s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                t.adj[i][j] = t.adj[j][i] = assign[s];
                ++s;
            }
        if (topo_connected(t)) {
            const std::string self_key = topo_key(t, identity);
            bool minimal = true;
            std::array<int, kMaxN> perm = identity;
            std::vector<std::array<int, kMaxN>> auts;
            do {
                const std::string k = topo_key(t, perm);
                if (k < self_key) {
                    minimal = false;
                    break;
                }
                if (k == self_key) auts.push_back(perm);
            } while (std::next_permutation(perm.begin(), perm.begin() + n));
            if (minimal) {
                t.automorphisms = std::move(auts);
                t.key = self_key;
                out.push_back(t);
            }
        }
        int carry = 0;
        while (carry < slots && ++assign[carry] > max_mult) assign[carry++] = 0;
        if (carry == slots) break;
    }
    return out;
}

struct Decoration {
    int self = -1;
    bool invariant = false;
    int z = 0;
    int tang = 0;
    int genus = 0;
    bool nodal = false;
};

using DecArray = std::array<Decoration, kMaxN>;

inline DecoratedGraph materialize(const Topology& t, const DecArray& dec) {
    std::vector<Curve> curves;
    for (int i = 0; i < t.n; ++i) {
        Curve c;
        c.id = "E" + std::to_string(i + 1);
        c.self_int = dec[i].self;
        c.genus = dec[i].genus;
        c.nodal = dec[i].nodal;
        c.invariant = dec[i].invariant;
        c.z_index = dec[i].z;
        c.tangency = dec[i].tang;
        curves.push_back(c);
    }
    std::vector<Edge> edges;
    for (int i = 0; i < t.n; ++i)
        for (int j = i + 1; j < t.n; ++j)
            if (t.adj[i][j] > 0)
                edges.push_back({curves[static_cast<std::size_t>(i)].id,
                                 curves[static_cast<std::size_t>(j)].id, t.adj[i][j]});
    return DecoratedGraph(std::move(curves), std::move(edges));
}

// Field-major canonical key.  Only labelings equal to their own key are
// emitted, so this doubles as the dedup criterion.
inline std::string decoration_key(const Topology& t, const DecArray& dec) {
    std::string key = t.key;
    key.push_back('|');
    for (int i = 0; i < t.n; ++i) key.push_back(static_cast<char>('a' - dec[i].self));
    for (int i = 0; i < t.n; ++i) key.push_back(dec[i].invariant ? 'I' : 'N');
    for (int i = 0; i < t.n; ++i) key.push_back(static_cast<char>('0' + dec[i].z));
    for (int i = 0; i < t.n; ++i) key.push_back(static_cast<char>('0' + dec[i].tang));
    for (int i = 0; i < t.n; ++i) key.push_back(static_cast<char>('0' + dec[i].genus));
    for (int i = 0; i < t.n; ++i) key.push_back(dec[i].nodal ? '*' : '.');
    return key;
}

// Fraction-free leading-minor signs in int64; entries are tiny at desk scale.
inline bool nd_fast(const Topology& t, const std::array<int, kMaxN>& selfs) {
    std::array<std::array<std::int64_t, kMaxN>, kMaxN> m{};
    const int n = t.n;
    for (int i = 0; i < n; ++i) {
        m[i][i] = selfs[i];
        for (int j = 0; j < n; ++j)
            if (i != j) m[i][j] = t.adj[i][j];
    }
    std::int64_t prev = 1;
    for (int k = 0; k < n; ++k) {
        if (k > 0) {
            for (int i = k; i < n; ++i)
                for (int j = k; j < n; ++j)
                    m[i][j] = (m[i][j] * m[k - 1][k - 1] - m[i][k - 1] * m[k - 1][j]) / prev;
            prev = m[k - 1][k - 1];
        }
        const std::int64_t minor = m[k][k];  // k+1st leading principal minor
        if (k % 2 == 0 ? minor >= 0 : minor <= 0) return false;
    }
    return true;
}

}  // namespace enum_detail

struct GenerationStats {
    long long total_generated = 0;  // (topology, self-assignment) pairs examined
    long long nd_count = 0;         // of those, negative definite
    long long filter_pass = 0;      // decorated graphs emitted (one per iso class)
};

// Exhaustively streams every connected decorated graph within bounds passing
// ND + R1 + R2 + R3 + MIN, exactly once up to decorated-graph isomorphism.
// The visitor receives the canonical key plus a lazy handle on the graph.
class Enumerator {
public:
    struct Emitted {
        const enum_detail::Topology* topo;
        const enum_detail::DecArray* dec;
        DecoratedGraph materialize() const { return enum_detail::materialize(*topo, *dec); }
    };
    using Visitor = std::function<void(const std::string& key, const Emitted& g)>;

    explicit Enumerator(Bounds b) : b_(b) {}

    const GenerationStats& stats() const { return stats_; }

    void generate(const Visitor& visit) {
        stats_ = {};
        for (int n = 1; n <= std::min(b_.max_curves, enum_detail::kMaxN); ++n) {
            for (const auto& topo :
                 enum_detail::connected_topologies(n, std::min(b_.max_edge_mult, 2))) {
                generate_on_topology(topo, visit);
            }
        }
    }

    // Convenience for tests and small bounds: the full universe as a map.
    std::map<std::string, DecoratedGraph> collect() {
        std::map<std::string, DecoratedGraph> out;
        generate([&](const std::string& key, const Emitted& g) { out.emplace(key, g.materialize()); });
        return out;
    }

private:
    using Topology = enum_detail::Topology;
    using DecArray = enum_detail::DecArray;
    using Perm = std::array<int, enum_detail::kMaxN>;

    void generate_on_topology(const Topology& t, const Visitor& visit) {
        const int n = t.n;
        if (n == 1) {
            ++stats_.total_generated;
            ++stats_.nd_count;  // a single curve with C^2 < 0 is negative definite
            emit_singletons(t, visit);
            return;
        }
        std::array<int, enum_detail::kMaxN> selfs{};
        std::function<void(int)> self_loop = [&](int v) {
            if (v == n) {
                ++stats_.total_generated;
                if (!enum_detail::nd_fast(t, selfs)) return;
                ++stats_.nd_count;
                decorate(t, selfs, visit);
                return;
            }
            for (int s = b_.min_self; s <= -1; ++s) {
                selfs[v] = s;
                self_loop(v + 1);
            }
        };
        self_loop(0);
    }

    // Orbit-minimality pruning: a labeled assignment is emitted only when it
    // is the lexicographic minimum of its automorphism orbit, compared in the
    // same field-major order as the canonical key.
    enum class Cmp { LESS, EQUAL, GREATER };

    template <typename Field>
    static Cmp compare_field(const Perm& perm, int n, const Field& f) {
        for (int i = 0; i < n; ++i) {
            const auto permuted = f(perm[i]);
            const auto straight = f(i);
            if (permuted < straight) return Cmp::LESS;
            if (permuted > straight) return Cmp::GREATER;
        }
        return Cmp::EQUAL;
    }

    void decorate(const Topology& t, const std::array<int, enum_detail::kMaxN>& selfs,
                  const Visitor& visit) {
        const int n = t.n;

        // Stage 1: prune by self-intersections.
        std::vector<const Perm*> auts_self;
        for (const auto& perm : t.automorphisms) {
            const Cmp c = compare_field(perm, n, [&](int i) { return -selfs[i]; });
            if (c == Cmp::LESS) return;  // a smaller relabeling exists
            if (c == Cmp::EQUAL) auts_self.push_back(&perm);
        }

        for (int pattern = 0; pattern < (1 << n); ++pattern) {
            bool ok = true;
            for (int v = 0; v < n; ++v)
                if ((pattern >> v & 1) && selfs[v] > -2) ok = false;  // MIN
            if (!ok) continue;

            // Stage 2: prune by invariance pattern ('I' < 'N' in the key).
            std::vector<const Perm*> auts_pat;
            bool minimal = true;
            for (const Perm* perm : auts_self) {
                const Cmp c = compare_field(*perm, n,
                                          [&](int i) { return (pattern >> i & 1) ? 0 : 1; });
                if (c == Cmp::LESS) {
                    minimal = false;
                    break;
                }
                if (c == Cmp::EQUAL) auts_pat.push_back(perm);
            }
            if (!minimal) continue;

            std::array<int, enum_detail::kMaxN> d2{};
            for (int v = 0; v < n; ++v)
                for (int w = 0; w < n; ++w)
                    if (w != v && (pattern >> w & 1)) d2[v] += t.adj[v][w];

            DecArray dec{};
            for (int v = 0; v < n; ++v) {
                dec[v].self = selfs[v];
                dec[v].invariant = (pattern >> v & 1) != 0;
            }

            std::function<void(int)> index_loop = [&](int v) {
                if (v == n) {
                    // Stage 3: final orbit-minimality over z then tang.
                    for (const Perm* perm : auts_pat) {
                        Cmp c = compare_field(*perm, n, [&](int i) { return dec[i].z; });
                        if (c == Cmp::EQUAL)
                            c = compare_field(*perm, n, [&](int i) { return dec[i].tang; });
                        if (c == Cmp::LESS) return;
                    }
                    if (!r3_fast(t, dec)) return;
                    ++stats_.filter_pass;
                    visit(enum_detail::decoration_key(t, dec), Emitted{&t, &dec});
                    return;
                }
                if (dec[v].invariant) {
                    // R1 and R2 are baked into the range.
                    for (int z = std::max(1, d2[v]); z <= b_.max_z; ++z) {
                        dec[v].z = z;
                        index_loop(v + 1);
                    }
                } else {
                    for (int tg = 0; tg <= b_.max_tang; ++tg) {
                        dec[v].tang = tg;
                        index_loop(v + 1);
                    }
                }
            };
            index_loop(0);
        }
    }

    // Single-curve graphs, including the nodal and genus-1 decorations that
    // only matter with d(C) = 0.
    void emit_singletons(const Topology& t, const Visitor& visit) {
        using enum_detail::Decoration;
        DecArray dec{};
        auto push = [&](const Decoration& d) {
            dec[0] = d;
            ++stats_.filter_pass;
            visit(enum_detail::decoration_key(t, dec), Emitted{&t, &dec});
        };
        for (int self = b_.min_self; self <= -1; ++self) {
            if (self <= -2) {
                for (int z = 1; z <= b_.max_z; ++z) push({self, true, z, 0, 0, false});
                if (b_.allow_nodal) push({self, true, 0, 0, 0, true});
                if (b_.allow_genus1)
                    for (int z = 1; z <= b_.max_z; ++z) push({self, true, z, 0, 1, false});
            }
            for (int tg = 0; tg <= b_.max_tang; ++tg) {
                push({self, false, 0, tg, 0, false});
                if (b_.allow_genus1) push({self, false, 0, tg, 1, false});
            }
        }
    }

    bool r3_fast(const Topology& t, const DecArray& dec) {
        const int n = t.n;
        std::array<bool, enum_detail::kMaxN> seen{};
        for (int s = 0; s < n; ++s) {
            if (seen[s] || !dec[s].invariant) continue;
            std::array<int, enum_detail::kMaxN> comp{};
            int comp_size = 0;
            std::vector<int> stack{s};
            seen[s] = true;
            while (!stack.empty()) {
                const int v = stack.back();
                stack.pop_back();
                comp[comp_size++] = v;
                for (int w = 0; w < n; ++w)
                    if (w != v && t.adj[v][w] > 0 && dec[w].invariant && !seen[w]) {
                        seen[w] = true;
                        stack.push_back(w);
                    }
            }
            bool nodal = false;
            bool simple = true;
            int edges = 0;
            int z_sum = 0;
            for (int a = 0; a < comp_size; ++a) {
                if (dec[comp[a]].nodal) nodal = true;
                z_sum += dec[comp[a]].z;
                for (int b2 = a + 1; b2 < comp_size; ++b2) {
                    const int m = t.adj[comp[a]][comp[b2]];
                    if (m > 1) simple = false;
                    edges += m;
                }
            }
            const bool tree = simple && edges == comp_size - 1;
            if (nodal || !tree) continue;  // separatrix theorem needs an NC tree
            if (z_sum < 2 * edges + 1) return false;
        }
        return true;
    }

    Bounds b_;
    GenerationStats stats_;
};

// ---------------------------------------------------------------------------
// Sweep harnesses
// ---------------------------------------------------------------------------

// How many canonical keys the report lists retain; counts are always exact.
constexpr std::size_t kMaxStoredKeys = 1u << 20;

struct SweepReport {
    GenerationStats stats;
    long long lc_count = 0;                    // graphs grading true
    std::vector<std::string> lc_set;           // their keys (truncated if huge)
    bool lc_set_truncated = false;
    std::map<std::string, long long> matched;  // family -> count over the universe
    long long unmatched_count = 0;
    std::vector<std::string> unmatched_lc;     // graded true, no family
    long long failing_count = 0;
    std::vector<std::string> family_instances_failing_lc;  // family matched, grade false

    bool complete() const { return unmatched_count == 0; }
    bool sound() const { return failing_count == 0; }
};

namespace enum_detail {

inline bool theorem_grade(const DecoratedGraph& g, Theorem t, const Rational& lo,
                          const Rational& hi) {
    switch (t) {
        case Theorem::MAIN_LC: return grade({g, Convention::ADJOINT}, lo, hi).lc;
        case Theorem::MAIN_CAN: return grade({g, Convention::ADJOINT}, lo, hi).canonical;
        case Theorem::SURF_LC: return grade({g, Convention::SURFACE}).lc;
        case Theorem::FOL_LC: return grade({g, Convention::FOLIATED}).lc;
    }
    return false;
}

// The surface ladder only sees self-intersections, genus and nodes, so sweep
// results can be cached by shape.
inline std::string shape_key(const Topology& t, const DecArray& dec) {
    std::string key = t.key;
    key.push_back('|');
    for (int i = 0; i < t.n; ++i) key.push_back(static_cast<char>('a' - dec[i].self));
    for (int i = 0; i < t.n; ++i) key.push_back(static_cast<char>('0' + dec[i].genus));
    for (int i = 0; i < t.n; ++i) key.push_back(dec[i].nodal ? '*' : '.');
    return key;
}

}  // namespace enum_detail

// Exhaustive check of one classification theorem over the bounded universe:
// every graph that grades must match a family (completeness) and, for the lc
// theorems, every family instance must grade (soundness).  The canonical
// ladder has eps-dependent thresholds inside its families, so for MAIN_CAN
// the failing list is informational rather than expected-empty.
inline SweepReport verify_theorem(const Bounds& b, Theorem theorem, const Rational& lo,
                                  const Rational& hi, int jobs = 1) {
    const int workers = std::max(1, jobs);
    std::vector<SweepReport> parts(static_cast<std::size_t>(workers));
    std::vector<GenerationStats> part_stats(static_cast<std::size_t>(workers));

    auto run_part = [&](int w) {
        SweepReport& rep = parts[static_cast<std::size_t>(w)];
        struct Cached {
            bool graded;
            std::optional<FamilyTag> family;
        };
        std::unordered_map<std::string, Cached> shape_cache;
        const bool by_shape = theorem == Theorem::SURF_LC;
        long long index = 0;
        Enumerator en(b);
        en.generate([&](const std::string& key, const Enumerator::Emitted& g) {
            if (index++ % workers != w) return;
            Cached row;
            if (by_shape) {
                const std::string sk = enum_detail::shape_key(*g.topo, *g.dec);
                auto it = shape_cache.find(sk);
                if (it == shape_cache.end()) {
                    const DecoratedGraph dg = g.materialize();
                    row.graded = enum_detail::theorem_grade(dg, theorem, lo, hi);
                    row.family = classify(dg, theorem, lo, hi);
                    shape_cache.emplace(sk, row);
                } else {
                    row = it->second;
                }
            } else {
                const DecoratedGraph dg = g.materialize();
                row.graded = enum_detail::theorem_grade(dg, theorem, lo, hi);
                row.family = classify(dg, theorem, lo, hi);
            }
            if (row.graded) {
                ++rep.lc_count;
                if (rep.lc_set.size() < kMaxStoredKeys) rep.lc_set.push_back(key);
                else rep.lc_set_truncated = true;
            }
            if (row.family) ++rep.matched[row.family->family];
            if (row.graded && !row.family) {
                ++rep.unmatched_count;
                if (rep.unmatched_lc.size() < kMaxStoredKeys) rep.unmatched_lc.push_back(key);
            }
            if (!row.graded && row.family) {
                ++rep.failing_count;
                if (rep.family_instances_failing_lc.size() < kMaxStoredKeys)
                    rep.family_instances_failing_lc.push_back(key);
            }
        });
        part_stats[static_cast<std::size_t>(w)] = en.stats();
    };

    if (workers == 1) {
        run_part(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_part, w);
        for (auto& th : pool) th.join();
    }

    // Deterministic merge: each emission lands in exactly one part by stream
    // index, and the merged lists are re-sorted by canonical key.
    SweepReport rep;
    rep.stats = part_stats[0];
    for (int w = 0; w < workers; ++w) {
        const SweepReport& p = parts[static_cast<std::size_t>(w)];
        rep.lc_count += p.lc_count;
        rep.lc_set_truncated = rep.lc_set_truncated || p.lc_set_truncated;
        rep.unmatched_count += p.unmatched_count;
        rep.failing_count += p.failing_count;
        for (const auto& [fam, cnt] : p.matched) rep.matched[fam] += cnt;
        rep.lc_set.insert(rep.lc_set.end(), p.lc_set.begin(), p.lc_set.end());
        rep.unmatched_lc.insert(rep.unmatched_lc.end(), p.unmatched_lc.begin(),
                                p.unmatched_lc.end());
        rep.family_instances_failing_lc.insert(rep.family_instances_failing_lc.end(),
                                               p.family_instances_failing_lc.begin(),
                                               p.family_instances_failing_lc.end());
    }
    std::sort(rep.lc_set.begin(), rep.lc_set.end());
    std::sort(rep.unmatched_lc.begin(), rep.unmatched_lc.end());
    std::sort(rep.family_instances_failing_lc.begin(), rep.family_instances_failing_lc.end());
    if (rep.lc_set.size() > kMaxStoredKeys) {
        rep.lc_set.resize(kMaxStoredKeys);
        rep.lc_set_truncated = true;
    }
    return rep;
}

struct CrossCheckReport {
    GenerationStats stats;
    long long lc_checked = 0;
    long long canonical_checked = 0;
    std::vector<std::string> lc_counterexamples;         // adjoint-lc but not fol-lc/surf-lc
    std::vector<std::string> klt_counterexamples;        // adjoint-klt but not surf-klt
    std::vector<std::string> canonical_counterexamples;  // adjoint-can but not fol-lc/surf-klt

    bool clean() const {
        return lc_counterexamples.empty() && klt_counterexamples.empty() &&
               canonical_counterexamples.empty();
    }
};

// Desk-scale check of the interpolation statement: adjoint-lc on (0,1/5)
// forces foliated-lc and surface-lc (plus surface-klt under adjoint-klt),
// and adjoint-canonical on (0,1/4) forces foliated-lc and surface-klt.
inline CrossCheckReport cross_check_prop15(const Bounds& b, int jobs = 1) {
    const int workers = std::max(1, jobs);
    std::vector<CrossCheckReport> parts(static_cast<std::size_t>(workers));
    std::vector<GenerationStats> part_stats(static_cast<std::size_t>(workers));
    const Rational zero(0), fifth(1, 5), quarter(1, 4);

    auto run_part = [&](int w) {
        CrossCheckReport& rep = parts[static_cast<std::size_t>(w)];
        long long index = 0;
        Enumerator en(b);
        en.generate([&](const std::string& key, const Enumerator::Emitted& g) {
            if (index++ % workers != w) return;
            const DecoratedGraph dg = g.materialize();
            const GradeVerdict adj_lc = grade({dg, Convention::ADJOINT}, zero, fifth);
            const GradeVerdict adj_can = grade({dg, Convention::ADJOINT}, zero, quarter);
            if (!adj_lc.lc && !adj_can.canonical) return;
            const GradeVerdict fol = grade({dg, Convention::FOLIATED});
            const GradeVerdict surf = grade({dg, Convention::SURFACE});
            if (adj_lc.lc) {
                ++rep.lc_checked;
                if (!fol.lc || !surf.lc) rep.lc_counterexamples.push_back(key);
                if (adj_lc.klt && !surf.klt) rep.klt_counterexamples.push_back(key);
            }
            if (adj_can.canonical) {
                ++rep.canonical_checked;
                if (!fol.lc || !surf.klt) rep.canonical_counterexamples.push_back(key);
            }
        });
        part_stats[static_cast<std::size_t>(w)] = en.stats();
    };

    if (workers == 1) {
        run_part(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_part, w);
        for (auto& th : pool) th.join();
    }

    CrossCheckReport rep;
    rep.stats = part_stats[0];
    for (const auto& p : parts) {
        rep.lc_checked += p.lc_checked;
        rep.canonical_checked += p.canonical_checked;
        rep.lc_counterexamples.insert(rep.lc_counterexamples.end(), p.lc_counterexamples.begin(),
                                      p.lc_counterexamples.end());
        rep.klt_counterexamples.insert(rep.klt_counterexamples.end(),
                                       p.klt_counterexamples.begin(), p.klt_counterexamples.end());
        rep.canonical_counterexamples.insert(rep.canonical_counterexamples.end(),
                                             p.canonical_counterexamples.begin(),
                                             p.canonical_counterexamples.end());
    }
    std::sort(rep.lc_counterexamples.begin(), rep.lc_counterexamples.end());
    std::sort(rep.klt_counterexamples.begin(), rep.klt_counterexamples.end());
    std::sort(rep.canonical_counterexamples.begin(), rep.canonical_counterexamples.end());
    return rep;
}

}  // namespace folsing
