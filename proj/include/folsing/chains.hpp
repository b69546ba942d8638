#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "folsing/eps_affine.hpp"
#include "folsing/graph.hpp"
#include "folsing/linalg.hpp"

namespace folsing {

// Determinant sequences attached to a chain C_1..C_r.  With e_i = -C_i^2,
//   mu_k     = det(-C_i.C_j) over indices 1..k-1,
//   lambda_l = det(-C_i.C_j) over indices l+1..r,
// padded by mu_0 = mu_1 = lambda_r = lambda_{r+1} = 1, and
// n = lambda_0 = mu_{r+1} is the full determinant.
struct ChainData {
    std::vector<std::string> ids;   // chain order C_1..C_r
    std::vector<int> e;             // e_i = -C_i^2
    std::vector<BigInt> lambda;     // lambda_0..lambda_{r+1}
    std::vector<BigInt> mu;         // mu_0..mu_{r+1}
    BigInt n;

    std::size_t length() const { return ids.size(); }
};

namespace detail {

inline void require_chain(const DecoratedGraph& g, const std::vector<std::string>& ids) {
    if (ids.empty()) throw std::invalid_argument("chain: empty curve list");
    std::vector<std::size_t> idx;
    idx.reserve(ids.size());
    for (const auto& id : ids) idx.push_back(g.index_of(id));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            const int m = g.adjacency(idx[i], idx[j]);
            const int expected = (j == i + 1) ? 1 : 0;
            if (m != expected)
                throw std::invalid_argument("chain: curves " + ids[i] + ", " + ids[j] +
                                            " break the chain adjacency pattern");
        }
    }
}

}  // namespace detail

// The lambda/mu sequences of a chain, via their three-term recursions.
// The determinant identity lambda_i*mu_{i+1} - lambda_{i+1}*mu_i = n holds
// for the result; tests check it against literal minors.
inline ChainData lambda_mu(const DecoratedGraph& g, const std::vector<std::string>& ids) {
    detail::require_chain(g, ids);
    ChainData out;
    out.ids = ids;
    const std::size_t r = ids.size();
    out.e.reserve(r);
    for (const auto& id : ids) {
        const int self = g.curve(id).self_int;
        if (self >= 0) throw std::invalid_argument("chain: curve " + id + " has C^2 >= 0");
        out.e.push_back(-self);
    }

    // Inner entries follow the minor recursion with a virtual 0 beyond the
    // chain; the stored boundary entries lambda_{r+1} = mu_0 = 1 are the
    // padding convention the callers expect.
    out.lambda.assign(r + 2, BigInt(1));
    {
        BigInt next(0), cur(1);  // lambda_{i+1}, lambda_i walking down from i = r
        for (std::size_t i = r; i >= 1; --i) {
            BigInt prev = BigInt(out.e[i - 1]) * cur - next;
            out.lambda[i - 1] = prev;
            next = cur;
            cur = std::move(prev);
        }
    }
    out.mu.assign(r + 2, BigInt(1));
    {
        BigInt prev(0), cur(1);  // mu_{i-1}, mu_i walking up from i = 1
        for (std::size_t i = 1; i <= r; ++i) {
            BigInt next = BigInt(out.e[i - 1]) * cur - prev;
            out.mu[i + 1] = next;
            prev = cur;
            cur = std::move(next);
        }
    }
    out.n = out.lambda[0];
    if (out.n != out.mu[r + 1])
        throw std::logic_error("lambda_mu: endpoint determinants disagree");
    return out;
}

// The unique divisor M supported on `support` with M.C_i = d_dot(C_i) for
// every support curve.  Requires the support intersection matrix to be
// negative definite.
inline Divisor m_divisor(const DecoratedGraph& g, const std::vector<std::string>& support,
                         const Divisor& d_dot) {
    const std::size_t r = support.size();
    IntMatrix m(r, std::vector<BigInt>(r, 0));
    std::vector<EpsAffine> rhs(r);
    for (std::size_t i = 0; i < r; ++i) {
        m[i][i] = g.curve(support[i]).self_int;
        for (std::size_t j = i + 1; j < r; ++j) {
            const int a = g.adjacency(g.index_of(support[i]), g.index_of(support[j]));
            m[i][j] = a;
            m[j][i] = a;
        }
        auto it = d_dot.find(support[i]);
        if (it == d_dot.end())
            throw std::invalid_argument("m_divisor: missing D.C value for " + support[i]);
        rhs[i] = it->second;
    }
    if (!is_negative_definite(m))
        throw std::invalid_argument("m_divisor: support is not negative definite");
    const auto x = solve_linear(m, rhs);
    Divisor out;
    for (std::size_t i = 0; i < r; ++i) out[support[i]] = x[i];
    return out;
}

// Closed form for the chain coefficients,
//   gamma_i = (lambda_i/n) * sum_{k<=i} mu_k (-D.C_k)
//           + (mu_i/n)     * sum_{k>i}  lambda_k (-D.C_k).
// Used as an internal cross-check against the dense solve.
inline std::vector<EpsAffine> chain_gamma_closed_form(const ChainData& cd,
                                                      const std::vector<EpsAffine>& d_dot) {
    const std::size_t r = cd.length();
    if (d_dot.size() != r) throw std::invalid_argument("chain_gamma_closed_form: size mismatch");
    std::vector<EpsAffine> gamma(r);
    const Rational n(cd.n);
    for (std::size_t i = 1; i <= r; ++i) {
        EpsAffine head, tail;
        for (std::size_t k = 1; k <= i; ++k) head += (-d_dot[k - 1]) * Rational(cd.mu[k]);
        for (std::size_t k = i + 1; k <= r; ++k) tail += (-d_dot[k - 1]) * Rational(cd.lambda[k]);
        gamma[i - 1] = head * (Rational(cd.lambda[i]) / n) + tail * (Rational(cd.mu[i]) / n);
    }
    return gamma;
}

// Chain-extension test: for a D^{>0}-chain F and a curve c meeting only the
// last curve of F once, F + c stays a D^{>0}-chain iff D.c < M(D,F).c holds
// strictly throughout the open interval.
inline bool extend_chain_test(const DecoratedGraph& g, const std::vector<std::string>& chain,
                              const std::string& c, const Divisor& d_dot, const Rational& lo,
                              const Rational& hi) {
    detail::require_chain(g, chain);
    const std::size_t ci = g.index_of(c);
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const int m = g.adjacency(ci, g.index_of(chain[k]));
        const int expected = (k + 1 == chain.size()) ? 1 : 0;
        if (m != expected)
            throw std::invalid_argument("extend_chain_test: " + c +
                                        " must meet exactly the last chain curve once");
    }
    const Divisor M = m_divisor(g, chain, d_dot);
    for (const auto& [id, coeff] : M) {
        if (!positive_on(sign_on_interval(coeff, lo, hi)))
            throw std::invalid_argument("extend_chain_test: chain is not a D>0-chain on the interval");
    }
    // M(D,F).c picks up the coefficient of the last chain curve.
    const EpsAffine m_dot_c = M.at(chain.back());
    auto it = d_dot.find(c);
    if (it == d_dot.end()) throw std::invalid_argument("extend_chain_test: missing D.c value");
    return negative_on(sign_on_interval(it->second - m_dot_c, lo, hi));
}

// Diagnostics for a special chain (D.C_1 < 0, D.C_i >= 0 for i >= 2).
struct SpecialChainReport {
    ChainData chain;
    std::vector<EpsAffine> gamma;   // coefficients of M(D,F)
    bool positive_chain = false;    // sum mu_k D.C_k < 0 on the interval
    bool gamma_bounds_hold = false; // gamma_k <= (-D.C_1) lambda_k / n
    bool nested_increasing = false; // 0 < M(D,F_1) < ... < M(D,F_r)
};

inline SpecialChainReport special_chain_bounds(const DecoratedGraph& g,
                                               const std::vector<std::string>& chain,
                                               const Divisor& d_dot, const Rational& lo,
                                               const Rational& hi) {
    SpecialChainReport rep;
    rep.chain = lambda_mu(g, chain);
    const std::size_t r = chain.size();

    std::vector<EpsAffine> dot(r);
    for (std::size_t i = 0; i < r; ++i) dot[i] = d_dot.at(chain[i]);
    if (!negative_on(sign_on_interval(dot[0], lo, hi)))
        throw std::invalid_argument("special_chain_bounds: requires D.C_1 < 0 on the interval");
    for (std::size_t i = 1; i < r; ++i) {
        if (!nonnegative_on(sign_on_interval(dot[i], lo, hi)))
            throw std::invalid_argument("special_chain_bounds: requires D.C_i >= 0 for i >= 2");
    }

    const Divisor M = m_divisor(g, chain, d_dot);
    rep.gamma.resize(r);
    for (std::size_t i = 0; i < r; ++i) rep.gamma[i] = M.at(chain[i]);

    // Positivity criterion: sum_k mu_k D.C_k < 0.
    EpsAffine crit;
    for (std::size_t k = 1; k <= r; ++k) crit += dot[k - 1] * Rational(rep.chain.mu[k]);
    rep.positive_chain = negative_on(sign_on_interval(crit, lo, hi));

    // gamma_k <= (-D.C_1) lambda_k / n.
    rep.gamma_bounds_hold = true;
    for (std::size_t k = 1; k <= r; ++k) {
        const EpsAffine bound = (-dot[0]) * (Rational(rep.chain.lambda[k]) / Rational(rep.chain.n));
        if (!nonnegative_on(sign_on_interval(bound - rep.gamma[k - 1], lo, hi))) {
            rep.gamma_bounds_hold = false;
            break;
        }
    }

    // Nested sub-chains: each M(D,F_k) positive and componentwise below the next.
    rep.nested_increasing = true;
    std::vector<EpsAffine> prev;
    for (std::size_t k = 1; k <= r && rep.nested_increasing; ++k) {
        std::vector<std::string> sub(chain.begin(), chain.begin() + static_cast<long>(k));
        const Divisor Mk = m_divisor(g, sub, d_dot);
        std::vector<EpsAffine> cur(k);
        for (std::size_t i = 0; i < k; ++i) cur[i] = Mk.at(sub[i]);
        for (std::size_t i = 0; i < k; ++i) {
            const EpsAffine delta = (i < prev.size()) ? cur[i] - prev[i] : cur[i];
            if (!positive_on(sign_on_interval(delta, lo, hi))) {
                rep.nested_increasing = false;
                break;
            }
        }
        prev = std::move(cur);
    }
    return rep;
}

}  // namespace folsing
