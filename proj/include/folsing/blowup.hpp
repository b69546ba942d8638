#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "folsing/eps_affine.hpp"
#include "folsing/graph.hpp"
#include "folsing/poly.hpp"
#include "folsing/vector_field.hpp"

namespace folsing {

// ---------------------------------------------------------------------------
// Singularity classification
// ---------------------------------------------------------------------------

enum class SingStatus { REGULAR, REDUCED_NONDEGENERATE, REDUCED_SADDLE_NODE, NON_REDUCED };

inline const char* to_string(SingStatus s) {
    switch (s) {
        case SingStatus::REGULAR: return "REGULAR";
        case SingStatus::REDUCED_NONDEGENERATE: return "REDUCED_NONDEGENERATE";
        case SingStatus::REDUCED_SADDLE_NODE: return "REDUCED_SADDLE_NODE";
        case SingStatus::NON_REDUCED: return "NON_REDUCED";
    }
    return "?";
}

struct SingularityInfo {
    SingStatus status = SingStatus::REGULAR;
    Rational trace;
    Rational det;
    bool disc_is_square = false;
    std::optional<std::pair<Rational, Rational>> eigenvalues;  // when rational
};

// Decides the reduced-ness of a singular point from its rational linear
// part.  A ratio in Q+ forces rational eigenvalues (the discriminant of a
// rational quadratic with rationally-proportional roots is a square), so the
// square test on trace^2 - 4 det settles the question exactly.
inline SingularityInfo classify_linear_part(const Rational& trace, const Rational& det) {
    SingularityInfo info;
    info.trace = trace;
    info.det = det;
    const Rational disc = trace * trace - Rational(4) * det;
    Rational root;
    info.disc_is_square = is_perfect_square(disc, &root);
    if (info.disc_is_square)
        info.eigenvalues = {{(trace + root) / Rational(2), (trace - root) / Rational(2)}};
    if (det.is_zero()) {
        info.status =
            trace.is_zero() ? SingStatus::NON_REDUCED : SingStatus::REDUCED_SADDLE_NODE;
        return info;
    }
    if (!info.disc_is_square) {
        // Irrational or complex conjugate eigenvalues: the ratio can only be
        // rational when it is -1, never in Q+.
        info.status = SingStatus::REDUCED_NONDEGENERATE;
        return info;
    }
    // Rational nonzero eigenvalues: the ratio is positive iff det > 0.
    info.status = det.sign() > 0 ? SingStatus::NON_REDUCED : SingStatus::REDUCED_NONDEGENERATE;
    return info;
}

// Status of the (possibly non-singular) origin of the field (a, b).
inline SingularityInfo classify_point(const BiPoly& a, const BiPoly& b) {
    const Rational zero(0);
    if (!a.eval(zero, zero).is_zero() || !b.eval(zero, zero).is_zero()) {
        SingularityInfo info;
        info.status = SingStatus::REGULAR;
        return info;
    }
    const Rational au = a.partial_x().eval(zero, zero);
    const Rational av = a.partial_y().eval(zero, zero);
    const Rational bu = b.partial_x().eval(zero, zero);
    const Rational bv = b.partial_y().eval(zero, zero);
    return classify_linear_part(au + bv, au * bv - av * bu);
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ReductionFailure { DEPTH_EXCEEDED, IRRATIONAL_CENTER, UNSUPPORTED_LOCAL_DATA };

struct ReductionError : std::runtime_error {
    ReductionError(ReductionFailure kind_, const std::string& msg)
        : std::runtime_error(msg), kind(kind_) {}
    ReductionFailure kind;
};

struct IndexMismatchError : std::logic_error {
    using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Resolution data
// ---------------------------------------------------------------------------

struct ExceptionalCurve {
    std::string id;
    int kf = 0;        // coefficient in the total transform of K_F
    int kx = 0;        // coefficient in the total transform of K_X
    int self_int = -1;
    bool invariant = true;
    // Direct index bookkeeping, filled during reduction.
    int z_direct = 0;
    int tang_direct = 0;
    bool has_cluster = false;  // carries singularities at non-rational points
};

struct BlowupStep {
    int new_curve;                  // index into curves
    int divided_power = 0;          // k: exceptional power divided out
    int multiplicity = 0;           // a(q): algebraic multiplicity at the center
    int l_invariant = 0;            // l(q) = a(q) + 1 for a dicritical blowup
    std::vector<int> center_on;     // prior curves through the center
};

// A surviving local point record.  The fields present the final foliation
// near the point (the point is at the origin of its chart).
struct FinalPoint {
    BiPoly a, b;
    std::optional<int> axis_u;  // curve with local equation u = 0
    std::optional<int> axis_v;  // curve with local equation v = 0
    SingularityInfo info;
    bool is_singular = true;    // false: tangency point on a dicritical curve
    long seq = 0;
    std::string where;          // human-readable breadcrumb
};

struct ClusterNote {
    int curve;
    std::string factor;  // the defining polynomial of the non-rational locus
    std::string status;
};

struct ResolutionTree {
    bool regular_germ = false;
    std::vector<ExceptionalCurve> curves;
    std::vector<std::pair<int, int>> edges;
    std::vector<BlowupStep> steps;
    std::vector<FinalPoint> final_points;
    std::vector<ClusterNote> clusters;

    IntMatrix intersection_matrix() const {
        const std::size_t n = curves.size();
        IntMatrix m(n, std::vector<BigInt>(n, 0));
        for (std::size_t i = 0; i < n; ++i) m[i][i] = curves[i].self_int;
        for (const auto& [x, y] : edges) {
            m[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] += 1;
            m[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] += 1;
        }
        return m;
    }
};

// ---------------------------------------------------------------------------
// The reduction engine
// ---------------------------------------------------------------------------

namespace blowup_detail {

struct ActivePoint {
    BiPoly a, b;
    std::optional<int> axis_u, axis_v;
    SingularityInfo info;
    bool is_singular = true;
    long seq = 0;
    std::string where;
};

inline int ord_x_or_inf(const BiPoly& p) { return p.is_zero() ? 1 << 20 : p.ord_x(); }
inline int ord_y_or_inf(const BiPoly& p) { return p.is_zero() ? 1 << 20 : p.ord_y(); }

// Extended Euclid in Q[t]: returns (g, s) with s*a = g mod m, g = gcd(a, m).
inline std::pair<UniPoly, UniPoly> inverse_mod(const UniPoly& a, const UniPoly& m) {
    UniPoly r0 = m, r1 = a.divmod(m).second;
    UniPoly s0 = UniPoly(), s1 = UniPoly::constant(Rational(1));
    while (!r1.is_zero()) {
        const auto [q, r2] = r0.divmod(r1);
        UniPoly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = r2;
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return {r0, s0};  // r0 = gcd, s0 * a == gcd (mod m)
}

class Engine {
public:
    Engine(PolyVectorField vf, int max_depth) : vf_(std::move(vf)), max_depth_(max_depth) {}

    ResolutionTree run() {
        const Rational zero(0);
        if (!vf_.singular_at_origin()) {
            tree_.regular_germ = true;
            return tree_;
        }
        ActivePoint origin;
        origin.a = vf_.a;
        origin.b = vf_.b;
        origin.info = classify_point(origin.a, origin.b);
        origin.seq = next_seq_++;
        origin.where = "origin";
        points_.push_back(std::move(origin));

        while (true) {
            int pick = -1;
            for (std::size_t i = 0; i < points_.size(); ++i) {
                if (points_[i].is_singular && points_[i].info.status == SingStatus::NON_REDUCED) {
                    if (pick < 0 || points_[i].seq < points_[static_cast<std::size_t>(pick)].seq)
                        pick = static_cast<int>(i);
                }
            }
            if (pick < 0) break;
            if (static_cast<int>(tree_.steps.size()) >= max_depth_)
                throw ReductionError(ReductionFailure::DEPTH_EXCEEDED,
                                     "reduction did not terminate within the blowup budget");
            blow_up(static_cast<std::size_t>(pick));
        }

        finish();
        return tree_;
    }

private:
    void blow_up(std::size_t index) {
        const ActivePoint rec = points_[static_cast<std::size_t>(index)];
        points_.erase(points_.begin() + static_cast<long>(index));

        const int mult = std::min(rec.a.is_zero() ? 1 << 20 : rec.a.min_total_degree(),
                                  rec.b.is_zero() ? 1 << 20 : rec.b.min_total_degree());

        // Chart U: (u, v) = (a, a b); the new curve is {a = 0}.
        BiPoly a_u = rec.a.subst_x_xy();
        BiPoly b_u = (rec.b.subst_x_xy() - BiPoly::y() * a_u).divide_by_x_power(1);
        const int k_u = std::min(ord_x_or_inf(a_u), ord_x_or_inf(b_u));
        a_u = a_u.is_zero() ? a_u : a_u.divide_by_x_power(k_u);
        b_u = b_u.is_zero() ? b_u : b_u.divide_by_x_power(k_u);

        // Chart V: (u, v) = (c d, d); the new curve is {d = 0}.
        BiPoly b_v = rec.b.subst_xy_y();
        BiPoly a_v = (rec.a.subst_xy_y() - BiPoly::x() * b_v).divide_by_y_power(1);
        const int k_v = std::min(ord_y_or_inf(a_v), ord_y_or_inf(b_v));
        a_v = a_v.is_zero() ? a_v : a_v.divide_by_y_power(k_v);
        b_v = b_v.is_zero() ? b_v : b_v.divide_by_y_power(k_v);

        if (k_u != k_v)
            throw IndexMismatchError("blowup charts disagree on the divided power");
        const int k = k_u;

        const bool invariant = ord_x_or_inf(a_u) >= 1;
        if (invariant != (ord_y_or_inf(b_v) >= 1))
            throw IndexMismatchError("blowup charts disagree on invariance");

        // Ledger updates.
        ExceptionalCurve curve;
        const int e = static_cast<int>(tree_.curves.size());
        curve.id = "E" + std::to_string(e + 1);
        curve.kf = -k;
        curve.kx = 1;
        curve.invariant = invariant;
        std::vector<int> through;
        for (const auto& axis : {rec.axis_u, rec.axis_v}) {
            if (!axis) continue;
            through.push_back(*axis);
            curve.kf += tree_.curves[static_cast<std::size_t>(*axis)].kf;
            curve.kx += tree_.curves[static_cast<std::size_t>(*axis)].kx;
            tree_.curves[static_cast<std::size_t>(*axis)].self_int -= 1;
        }
        tree_.curves.push_back(curve);
        if (rec.axis_u && rec.axis_v) {
            std::erase_if(tree_.edges, [&](const std::pair<int, int>& ed) {
                return (ed.first == *rec.axis_u && ed.second == *rec.axis_v) ||
                       (ed.first == *rec.axis_v && ed.second == *rec.axis_u);
            });
        }
        for (int c : through) tree_.edges.push_back({c, e});

        BlowupStep step;
        step.new_curve = e;
        step.divided_power = k;
        step.multiplicity = mult;
        step.l_invariant = mult + (invariant ? 0 : 1);
        step.center_on = through;
        tree_.steps.push_back(step);

        const std::string here = "E" + std::to_string(e + 1);
        scan_new_curve(e, a_u, b_u, rec.axis_v, a_v, b_v, rec.axis_u, here);
    }

    // Registers the singular and tangency points on a freshly created curve.
    // In chart U the curve is {u = 0} with v-axis curve `cv`; the curve's
    // point at infinity is the origin of chart V, where it is {v = 0} with
    // u-axis curve `cu`.
    void scan_new_curve(int e, const BiPoly& a_u, const BiPoly& b_u, std::optional<int> cv,
                        const BiPoly& a_v, const BiPoly& b_v, std::optional<int> cu,
                        const std::string& where) {
        const bool invariant = tree_.curves[static_cast<std::size_t>(e)].invariant;

        // Finite points: zeros of the along-curve data in chart U.
        const UniPoly probe = invariant ? b_u.restrict_x0() : a_u.restrict_x0();
        if (probe.is_zero())
            throw IndexMismatchError("saturation lost along the new exceptional curve");
        RationalRoots rr;
        try {
            rr = rational_roots(probe);
        } catch (const std::domain_error& err) {
            throw ReductionError(ReductionFailure::UNSUPPORTED_LOCAL_DATA, err.what());
        }
        for (const auto& [root, mult] : rr.roots) {
            ActivePoint p;
            p.a = a_u.shift_y(root);
            p.b = b_u.shift_y(root);
            p.axis_u = e;
            p.axis_v = (root.is_zero()) ? cv : std::nullopt;
            if (invariant) {
                p.is_singular = true;
            } else {
                // On a dicritical curve a zero of the transverse component is
                // singular only if the tangent component vanishes too.
                p.is_singular = b_u.restrict_x0().eval(root).is_zero();
            }
            p.info = p.is_singular ? classify_point(p.a, p.b) : SingularityInfo{};
            p.seq = next_seq_++;
            p.where = where + " at parameter " + root.str();
            points_.push_back(std::move(p));
            (void)mult;
        }
        if (rr.residual.degree() >= 1) handle_cluster(e, a_u, b_u, rr.residual, invariant);

        // The point at infinity: the origin of chart V.
        const Rational zero(0);
        const Rational tangent_at_inf = invariant ? a_v.restrict_y0().eval(zero)
                                                  : b_v.restrict_y0().eval(zero);
        if (tangent_at_inf.is_zero()) {
            ActivePoint p;
            p.a = a_v;
            p.b = b_v;
            p.axis_u = cu;
            p.axis_v = e;
            if (invariant) {
                p.is_singular = true;
            } else {
                p.is_singular = a_v.restrict_y0().eval(zero).is_zero();
            }
            p.info = p.is_singular ? classify_point(p.a, p.b) : SingularityInfo{};
            p.seq = next_seq_++;
            p.where = where + " at infinity";
            points_.push_back(std::move(p));
        }
    }

    // Singularities of the foliation at non-rational points of the curve.
    // They are fine as long as they are reduced; a non-reduced one would be
    // a blowup center outside the supported input class.
    void handle_cluster(int e, const BiPoly& a_u, const BiPoly& b_u, const UniPoly& residual,
                        bool invariant) {
        ExceptionalCurve& curve = tree_.curves[static_cast<std::size_t>(e)];
        UniPoly q_sf = residual.div_exact(UniPoly::gcd(residual, residual.derivative()));

        if (invariant) {
            curve.z_direct += residual.degree();
            curve.has_cluster = true;
            cluster_status(a_u, b_u, q_sf, e);
        } else {
            curve.tang_direct += residual.degree();
            curve.has_cluster = true;
            // Only the points where the tangent component also vanishes are
            // singular; the rest are plain tangency points.
            const UniPoly tangent = b_u.restrict_x0();
            const UniPoly common = UniPoly::gcd(q_sf, tangent);
            if (common.degree() >= 1) cluster_status(a_u, b_u, common, e);
        }
    }

    void cluster_status(const BiPoly& a_u, const BiPoly& b_u, const UniPoly& q, int e) {
        // Jacobian entries restricted to the curve, as polynomials in the
        // curve parameter.
        const UniPoly au = a_u.partial_x().restrict_x0();
        const UniPoly av = a_u.partial_y().restrict_x0();
        const UniPoly bu = b_u.partial_x().restrict_x0();
        const UniPoly bv = b_u.partial_y().restrict_x0();
        const UniPoly trace = au + bv;
        const UniPoly det = au * bv - av * bu;

        const std::string id = tree_.curves[static_cast<std::size_t>(e)].id;
        auto note = [&](const std::string& status) {
            tree_.clusters.push_back({e, q.str(), status});
        };

        const UniPoly det_mod = det.divmod(q).second;
        const UniPoly g1 = UniPoly::gcd(q, det_mod);
        if (g1.degree() >= 1) {
            // Degenerate linear part on this sub-locus; nilpotent means a
            // non-reduced center at a non-rational point.
            const UniPoly tr_mod = trace.divmod(g1).second;
            const UniPoly h = UniPoly::gcd(g1, tr_mod);
            if (h.degree() >= 1)
                throw ReductionError(ReductionFailure::IRRATIONAL_CENTER,
                                     "non-reduced singular point with non-rational coordinates on " +
                                         id);
        }
        const UniPoly q1 = q.div_exact(g1.degree() >= 1 ? g1 : UniPoly::constant(Rational(1)));
        if (q1.degree() >= 1) {
            const UniPoly r = (trace * trace).divmod(q1).second;
            const UniPoly w = det.divmod(q1).second;
            const auto [g, winv] = inverse_mod(w, q1);
            if (g.degree() >= 1)
                throw ReductionError(ReductionFailure::UNSUPPORTED_LOCAL_DATA,
                                     "cluster determinant split failed on " + id);
            const UniPoly s = (r * winv * (Rational(1) / g.coeff(0))).divmod(q1).second;
            auto ratio_positive_rational = [&](const Rational& c) {
                if (c < Rational(4)) return false;
                return is_perfect_square(c * (c - Rational(4)));
            };
            if (s.is_constant()) {
                if (ratio_positive_rational(s.coeff(0)))
                    throw ReductionError(
                        ReductionFailure::IRRATIONAL_CENTER,
                        "non-reduced singular point with non-rational coordinates on " + id);
            } else {
                UniPoly res = resultant_minus_parameter(q1, s);
                if (res.is_zero())
                    throw ReductionError(ReductionFailure::UNSUPPORTED_LOCAL_DATA,
                                         "degenerate eigenvalue-ratio resultant on " + id);
                RationalRoots cands;
                try {
                    cands = rational_roots(res);
                } catch (const std::domain_error& err) {
                    throw ReductionError(ReductionFailure::UNSUPPORTED_LOCAL_DATA, err.what());
                }
                for (const auto& [c, mult] : cands.roots) {
                    (void)mult;
                    if (ratio_positive_rational(c))
                        throw ReductionError(
                            ReductionFailure::IRRATIONAL_CENTER,
                            "non-reduced singular point with non-rational coordinates on " + id);
                }
            }
        }
        note("reduced");
    }

    // Sum the per-point index contributions into the per-curve totals and
    // archive the surviving points.
    void finish() {
        for (const auto& p : points_) {
            auto contribute = [&](int curve_index, bool from_u_axis) {
                ExceptionalCurve& c = tree_.curves[static_cast<std::size_t>(curve_index)];
                const UniPoly tangent = from_u_axis ? p.b.restrict_x0() : p.a.restrict_y0();
                const UniPoly transverse = from_u_axis ? p.a.restrict_x0() : p.b.restrict_y0();
                const Rational zero(0);
                if (c.invariant) {
                    if (p.is_singular) c.z_direct += tangent.root_multiplicity(zero);
                } else {
                    c.tang_direct += transverse.root_multiplicity(zero);
                }
            };
            if (p.axis_u) contribute(*p.axis_u, true);
            if (p.axis_v) contribute(*p.axis_v, false);
            tree_.final_points.push_back(
                {p.a, p.b, p.axis_u, p.axis_v, p.info, p.is_singular, p.seq, p.where});
        }
    }

    PolyVectorField vf_;
    int max_depth_;
    ResolutionTree tree_;
    std::vector<ActivePoint> points_;
    long next_seq_ = 0;
};

}  // namespace blowup_detail

// Seidenberg reduction: blow up non-reduced points until every singularity
// on the exceptional locus is reduced.
inline ResolutionTree reduce(const PolyVectorField& vf, int max_depth = 64) {
    blowup_detail::Engine engine(vf, max_depth);
    return engine.run();
}

// Raw adjoint discrepancies straight from the ledgers: kf_i + eps kx_i.
inline Divisor ledger_discrepancies(const ResolutionTree& t) {
    Divisor out;
    for (const auto& c : t.curves)
        out[c.id] = EpsAffine(Rational(c.kf), Rational(c.kx));
    return out;
}

inline Divisor ledger_discrepancies_at(const ResolutionTree& t, const Rational& eps) {
    Divisor out;
    for (const auto& c : t.curves)
        out[c.id] = EpsAffine(Rational(c.kf) + Rational(c.kx) * eps);
    return out;
}

// The decorated dual graph, with every index computed two ways: directly from
// the local data collected during reduction, and numerically from the K_F and
// K_X ledgers through the index formulas.  A disagreement is an engine bug
// and is reported as such.
inline DecoratedGraph extract_graph(const ResolutionTree& t) {
    if (t.regular_germ || t.curves.empty()) return DecoratedGraph();
    const std::size_t n = t.curves.size();
    const IntMatrix m = t.intersection_matrix();

    std::vector<Curve> curves;
    for (std::size_t i = 0; i < n; ++i) {
        const ExceptionalCurve& ec = t.curves[i];
        BigInt kf_dot = 0;
        BigInt kx_dot = 0;
        for (std::size_t j = 0; j < n; ++j) {
            kf_dot += BigInt(t.curves[j].kf) * m[j][i];
            kx_dot += BigInt(t.curves[j].kx) * m[j][i];
        }
        // Adjunction for the K_X ledger: K_X . E_i = -2 - E_i^2.
        if (kx_dot != BigInt(-2 - ec.self_int))
            throw IndexMismatchError("K_X ledger fails adjunction on " + ec.id);

        Curve c;
        c.id = ec.id;
        c.self_int = ec.self_int;
        c.invariant = ec.invariant;
        if (ec.invariant) {
            const BigInt z_formula = kf_dot + 2;  // Z = K_F.C + 2 - 2 p_a, p_a = 0
            if (z_formula != ec.z_direct)
                throw IndexMismatchError("Z index mismatch on " + ec.id + ": ledger " +
                                         z_formula.str() + " vs direct " +
                                         std::to_string(ec.z_direct));
            c.z_index = ec.z_direct;
        } else {
            const BigInt tang_formula = kf_dot + ec.self_int;  // tang = K_F.C + C^2
            if (tang_formula != ec.tang_direct)
                throw IndexMismatchError("tangency mismatch on " + ec.id + ": ledger " +
                                         tang_formula.str() + " vs direct " +
                                         std::to_string(ec.tang_direct));
            c.tangency = ec.tang_direct;
        }
        curves.push_back(c);
    }
    std::vector<Edge> edges;
    for (const auto& [x, y] : t.edges)
        edges.push_back({t.curves[static_cast<std::size_t>(x)].id,
                         t.curves[static_cast<std::size_t>(y)].id, 1});
    return DecoratedGraph(curves, edges);
}

// ---------------------------------------------------------------------------
// Camacho-Sad verification
// ---------------------------------------------------------------------------

struct CamachoSadEntry {
    std::string curve;
    enum class Result { OK, SKIPPED, MISMATCH } result;
    Rational sum;        // meaningful for OK / MISMATCH
    int self_int = 0;
    std::string reason;  // for SKIPPED
};

struct CamachoSadReport {
    std::vector<CamachoSadEntry> entries;
    bool all_consistent() const {
        for (const auto& e : entries)
            if (e.result == CamachoSadEntry::Result::MISMATCH) return false;
        return true;
    }
};

// Per invariant exceptional curve: the sum over its singularities of
// (transverse eigenvalue) / (tangent eigenvalue) must equal C^2.  Curves
// carrying saddle-nodes or non-rational singular points are skipped.
inline CamachoSadReport camacho_sad_check(const ResolutionTree& t) {
    CamachoSadReport report;
    const Rational zero(0);
    for (std::size_t i = 0; i < t.curves.size(); ++i) {
        const ExceptionalCurve& ec = t.curves[i];
        if (!ec.invariant) continue;
        CamachoSadEntry entry;
        entry.curve = ec.id;
        entry.self_int = ec.self_int;
        if (ec.has_cluster) {
            entry.result = CamachoSadEntry::Result::SKIPPED;
            entry.reason = "singular point with non-rational coordinates";
            report.entries.push_back(entry);
            continue;
        }
        bool skipped = false;
        Rational sum(0);
        for (const auto& p : t.final_points) {
            const bool on_u = p.axis_u && *p.axis_u == static_cast<int>(i);
            const bool on_v = p.axis_v && *p.axis_v == static_cast<int>(i);
            if (!on_u && !on_v) continue;
            if (!p.is_singular) continue;
            if (p.info.status != SingStatus::REDUCED_NONDEGENERATE) {
                entry.result = CamachoSadEntry::Result::SKIPPED;
                entry.reason = std::string("singularity of status ") + to_string(p.info.status);
                skipped = true;
                break;
            }
            const Rational au = p.a.partial_x().eval(zero, zero);
            const Rational bv = p.b.partial_y().eval(zero, zero);
            // Along {u=0} the tangent eigenvalue is bv; along {v=0} it is au.
            sum += on_u ? au / bv : bv / au;
        }
        if (skipped) {
            report.entries.push_back(entry);
            continue;
        }
        entry.sum = sum;
        entry.result = sum == Rational(ec.self_int) ? CamachoSadEntry::Result::OK
                                                    : CamachoSadEntry::Result::MISMATCH;
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace folsing
