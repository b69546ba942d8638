#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "folsing/eps_affine.hpp"
#include "folsing/graph.hpp"
#include "folsing/linalg.hpp"

namespace folsing {

// Which canonical divisor is being pulled back across the resolution:
//   ADJOINT  : K_F + E^{non-inv} + eps (K_X + E)
//   FOLIATED : K_F + E^{non-inv}              (equals ADJOINT at eps = 0)
//   SURFACE  : K_X + E
enum class Convention { ADJOINT, FOLIATED, SURFACE };

inline const char* to_string(Convention c) {
    switch (c) {
        case Convention::ADJOINT: return "adjoint";
        case Convention::FOLIATED: return "foliated";
        case Convention::SURFACE: return "surface";
    }
    return "?";
}

struct AdjointContext {
    DecoratedGraph graph;
    Convention convention = Convention::ADJOINT;
};

// K.C from the decorations alone.  Invariant curves use
//   K.C = (1+eps)(2p_a - 2 + d) + Z - d2,
// non-invariant ones
//   K.C = tang + eps(2p_a - 2) + d1 + eps d.
inline EpsAffine adjoint_degree(const AdjointContext& ctx, const std::string& id) {
    const Curve& c = ctx.graph.curve(id);
    const Degrees deg = ctx.graph.degrees(id);
    const int two_pa_minus_2 = 2 * c.pa() - 2;
    switch (ctx.convention) {
        case Convention::ADJOINT:
            if (c.invariant) {
                const int base = two_pa_minus_2 + deg.d;
                return EpsAffine(Rational(base + c.z_index - deg.d2), Rational(base));
            }
            return EpsAffine(Rational(c.tangency + deg.d1), Rational(two_pa_minus_2 + deg.d));
        case Convention::FOLIATED:
            if (c.invariant)
                return EpsAffine(Rational(two_pa_minus_2 + deg.d + c.z_index - deg.d2));
            return EpsAffine(Rational(c.tangency + deg.d1));
        case Convention::SURFACE:
            return EpsAffine(Rational(two_pa_minus_2 + deg.d));
    }
    throw std::logic_error("adjoint_degree: bad convention");
}

// iota(E) + eps for ADJOINT, iota(E) for FOLIATED, 1 for SURFACE: the shift
// between the log normalization (lc iff a_i >= 0) and the raw discrepancy
// of the contracted germ.
inline EpsAffine log_raw_shift(Convention conv, const Curve& c) {
    const int iota = c.invariant ? 0 : 1;
    switch (conv) {
        case Convention::ADJOINT: return EpsAffine(Rational(iota), Rational(1));
        case Convention::FOLIATED: return EpsAffine(Rational(iota));
        case Convention::SURFACE: return EpsAffine(Rational(1));
    }
    throw std::logic_error("log_raw_shift: bad convention");
}

struct DiscrepancyResult {
    Divisor log_coeffs;  // a_i with  sum_i a_i E_i.E_j = K.E_j
    Divisor raw_coeffs;  // b_i = a_i - (iota(E_i) + eps), per convention
};

// Solves the discrepancy system exactly.  Requires a negative definite graph.
inline DiscrepancyResult discrepancies(const AdjointContext& ctx) {
    const DecoratedGraph& g = ctx.graph;
    const IntMatrix m = g.intersection_matrix();
    if (!is_negative_definite(m))
        throw std::invalid_argument("discrepancies: graph is not negative definite");
    std::vector<EpsAffine> rhs(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) rhs[j] = adjoint_degree(ctx, g.curve(j).id);
    const auto a = solve_linear(m, rhs);
    DiscrepancyResult out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Curve& c = g.curve(i);
        out.log_coeffs[c.id] = a[i];
        out.raw_coeffs[c.id] = a[i] - log_raw_shift(ctx.convention, c);
    }
    return out;
}

// Verdicts on the four-rung ladder, with the first failing curve as witness.
struct GradeVerdict {
    bool terminal = true;
    bool canonical = true;
    bool klt = true;
    bool lc = true;
    std::optional<std::string> terminal_witness;
    std::optional<std::string> canonical_witness;
    std::optional<std::string> klt_witness;
    std::optional<std::string> lc_witness;
};

namespace detail {

template <typename NonNeg, typename Pos>
GradeVerdict grade_impl(const DecoratedGraph& g, const DiscrepancyResult& d, NonNeg nonneg,
                        Pos pos) {
    GradeVerdict v;
    for (const auto& c : g.curves()) {
        const EpsAffine& log = d.log_coeffs.at(c.id);
        const EpsAffine& raw = d.raw_coeffs.at(c.id);
        if (v.lc && !nonneg(log)) {
            v.lc = false;
            v.lc_witness = c.id;
        }
        if (v.klt && !pos(log)) {
            v.klt = false;
            v.klt_witness = c.id;
        }
        if (v.canonical && !nonneg(raw)) {
            v.canonical = false;
            v.canonical_witness = c.id;
        }
        if (v.terminal && !pos(raw)) {
            v.terminal = false;
            v.terminal_witness = c.id;
        }
    }
    return v;
}

}  // namespace detail

// Grades over the open interval (lo, hi).  For FOLIATED and SURFACE the
// coefficients are constant in eps and the interval is immaterial.
inline GradeVerdict grade(const AdjointContext& ctx, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::invalid_argument("grade: requires lo < hi");
    const DiscrepancyResult d = discrepancies(ctx);
    return detail::grade_impl(
        ctx.graph, d,
        [&](const EpsAffine& a) { return nonnegative_on(sign_on_interval(a, lo, hi)); },
        [&](const EpsAffine& a) { return positive_on(sign_on_interval(a, lo, hi)); });
}

inline GradeVerdict grade(const AdjointContext& ctx) {
    if (ctx.convention == Convention::ADJOINT)
        throw std::invalid_argument("grade: ADJOINT convention needs an eps interval");
    return grade(ctx, Rational(0), Rational(1));
}

// Grades at one exact parameter value.
inline GradeVerdict point_grade(const AdjointContext& ctx, const Rational& e) {
    if (ctx.convention == Convention::ADJOINT && !(Rational(0) < e))
        throw std::invalid_argument("point_grade: requires eps > 0");
    const DiscrepancyResult d = discrepancies(ctx);
    const Rational zero(0);
    return detail::grade_impl(
        ctx.graph, d, [&](const EpsAffine& a) { return a.eval(e) >= zero; },
        [&](const EpsAffine& a) { return a.eval(e) > zero; });
}

// General (eps, delta)-grading: holds iff a_i >= (iota(E_i) + eps)(-1 + delta)
// for every exceptional curve, throughout the open interval.
inline bool grade_delta(const AdjointContext& ctx, const Rational& delta, const Rational& lo,
                        const Rational& hi, std::optional<std::string>* witness = nullptr) {
    if (ctx.convention != Convention::ADJOINT)
        throw std::invalid_argument("grade_delta: only the ADJOINT convention carries delta");
    const DiscrepancyResult d = discrepancies(ctx);
    const Rational shift = delta - Rational(1);
    for (const auto& c : ctx.graph.curves()) {
        const int iota = c.invariant ? 0 : 1;
        const EpsAffine threshold(Rational(iota) * shift, shift);
        const EpsAffine margin = d.raw_coeffs.at(c.id) - threshold;
        if (!nonnegative_on(sign_on_interval(margin, lo, hi))) {
            if (witness) *witness = c.id;
            return false;
        }
    }
    return true;
}

}  // namespace folsing
