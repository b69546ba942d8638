#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "folsing/eps_affine.hpp"
#include "folsing/rational.hpp"

namespace folsing {

using IntMatrix = std::vector<std::vector<BigInt>>;

inline bool is_symmetric(const IntMatrix& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m[i][j] != m[j][i]) return false;
    return true;
}

// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
inline BigInt determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// Leading principal minor of order k (1-based size).
inline BigInt leading_minor(const IntMatrix& m, std::size_t k) {
    IntMatrix sub(k, std::vector<BigInt>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[i][j];
    return determinant(std::move(sub));
}

// Sylvester criterion for negative definiteness:
// (-1)^k * (k-th leading principal minor) > 0 for every k.
inline bool is_negative_definite(const IntMatrix& m) {
    if (!is_symmetric(m)) throw std::invalid_argument("is_negative_definite: matrix not symmetric");
    if (m.empty()) return true;
    const std::size_t n = m.size();
    for (std::size_t k = 1; k <= n; ++k) {
        const BigInt d = leading_minor(m, k);
        if (k % 2 == 1 ? d >= 0 : d <= 0) return false;
    }
    return true;
}

// Solves M x = rhs for an invertible integer matrix M with rational right-hand
// side, by fraction-free elimination on an integer augmented matrix (rhs
// denominators cleared first) and a single exact division pass at the end.
inline std::vector<Rational> solve_linear(const IntMatrix& m, const std::vector<Rational>& rhs) {
    const std::size_t n = m.size();
    if (rhs.size() != n) throw std::invalid_argument("solve_linear: dimension mismatch");
    if (n == 0) return {};

    BigInt scale(1);
    for (const auto& r : rhs) scale = boost::multiprecision::lcm(scale, r.den());

    IntMatrix a(n, std::vector<BigInt>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("solve_linear: matrix not square");
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
        a[i][n] = rhs[i].num() * (scale / rhs[i].den());
    }

    BigInt prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) throw std::domain_error("solve_linear: singular matrix");
            std::swap(a[k], a[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    if (a[n - 1][n - 1] == 0) throw std::domain_error("solve_linear: singular matrix");

    // Back-substitute in the scaled system, then undo the rhs scaling.
    std::vector<Rational> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rational sum(a[ii][n]);
        for (std::size_t j = ii + 1; j < n; ++j) sum -= Rational(a[ii][j]) * x[j];
        x[ii] = sum / Rational(a[ii][ii]);
    }
    for (auto& xi : x) xi /= Rational(scale);
    return x;
}

// Componentwise eps-affine solve: the matrix is eps-independent, so solving
// the constant and eps parts separately gives the exact affine solution.
inline std::vector<EpsAffine> solve_linear(const IntMatrix& m, const std::vector<EpsAffine>& rhs) {
    std::vector<Rational> c(rhs.size()), e(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        c[i] = rhs[i].const_part();
        e[i] = rhs[i].eps_part();
    }
    const auto xc = solve_linear(m, c);
    const auto xe = solve_linear(m, e);
    std::vector<EpsAffine> x(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) x[i] = EpsAffine(xc[i], xe[i]);
    return x;
}

}  // namespace folsing
