#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "folsing/rational.hpp"

namespace folsing {

// ---------------------------------------------------------------------------
// Univariate polynomials over Q (dense, exact)
// ---------------------------------------------------------------------------

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(Rational v) { return UniPoly({std::move(v)}); }
    static UniPoly monomial(const Rational& v, std::size_t power) {
        std::vector<Rational> c(power + 1);
        c[power] = v;
        return UniPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& lead() const {
        if (c_.empty()) throw std::domain_error("UniPoly: zero polynomial has no lead");
        return c_.back();
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(BigInt(i));
        return UniPoly(std::move(d));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return UniPoly(std::move(c));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return UniPoly(std::move(c));
    }
    UniPoly operator-() const {
        std::vector<Rational> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator*(const UniPoly& a, const Rational& s) {
        std::vector<Rational> c(a.c_.size());
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i] * s;
        return UniPoly(std::move(c));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    // Euclidean division: *this = q * d + r with deg r < deg d.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw std::domain_error("UniPoly: division by zero");
        UniPoly r = *this;
        std::vector<Rational> q(std::max<std::size_t>(c_.size(), 1), Rational(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            const std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
            const Rational f = r.lead() / d.lead();
            q[shift] = f;
            r = r - UniPoly::monomial(f, shift) * d;
        }
        return {UniPoly(std::move(q)), r};
    }

    UniPoly div_exact(const UniPoly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw std::domain_error("UniPoly: inexact division");
        return q;
    }

    // Monic gcd.
    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            UniPoly r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a * (Rational(1) / a.lead());
    }

    // Multiplicity of the root x0 (0 when x0 is not a root).
    int root_multiplicity(const Rational& x0) const {
        if (is_zero()) throw std::domain_error("UniPoly: zero polynomial");
        const UniPoly lin({{-x0}, {Rational(1)}});
        UniPoly rest = *this;
        int mult = 0;
        while (!rest.is_zero() && rest.eval(x0).is_zero()) {
            rest = rest.div_exact(lin);
            ++mult;
        }
        return mult;
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += c_[i].sign() > 0 ? " + " : " - ";
            else if (c_[i].sign() < 0) s += "-";
            const Rational a = abs(c_[i]);
            if (i == 0 || !(a == Rational(1))) s += a.str();
            if (i > 0) {
                if (!(a == Rational(1))) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

// Divisors of |n| found by trial division; gives up (nullopt) past the cap,
// which bounds the supported coefficient size for rational root extraction.
inline std::optional<std::vector<BigInt>> all_divisors(BigInt n, const BigInt& cap = BigInt(1000000)) {
    if (n < 0) n = -n;
    if (n == 0) return std::nullopt;
    std::vector<std::pair<BigInt, int>> factors;
    BigInt rest = n;
    for (BigInt p = 2; p * p <= rest; ++p) {
        if (p > cap) return std::nullopt;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e > 0) factors.push_back({p, e});
    }
    if (rest > 1) factors.push_back({rest, 1});
    std::vector<BigInt> divs{1};
    for (const auto& [p, e] : factors) {
        const std::size_t base = divs.size();
        BigInt pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

struct RationalRoots {
    std::vector<std::pair<Rational, int>> roots;  // (root, multiplicity)
    UniPoly residual;                             // no rational roots remain
};

// Exact rational root extraction via integer root bounds on the primitive
// integer model.  Throws when the leading/trailing coefficients are beyond
// the trial-division cap (outside the supported input class).
inline RationalRoots rational_roots(const UniPoly& f) {
    if (f.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
    RationalRoots out;
    UniPoly rest = f;

    // Factor out the root at 0 first.
    int zero_mult = 0;
    while (!rest.is_zero() && rest.coeff(0).is_zero() && rest.degree() > 0) {
        std::vector<Rational> shifted(rest.coeffs().begin() + 1, rest.coeffs().end());
        rest = UniPoly(std::move(shifted));
        ++zero_mult;
    }
    if (zero_mult > 0) out.roots.push_back({Rational(0), zero_mult});

    if (rest.degree() >= 1) {
        // Clear denominators to an integer polynomial.
        BigInt scale(1);
        for (const auto& c : rest.coeffs())
            scale = boost::multiprecision::lcm(scale, c.den());
        std::vector<BigInt> ic;
        for (const auto& c : rest.coeffs()) ic.push_back(c.num() * (scale / c.den()));
        BigInt content = 0;
        for (const auto& v : ic) content = boost::multiprecision::gcd(content, v);
        if (content > 1)
            for (auto& v : ic) v /= content;

        const auto ps = all_divisors(ic.front());
        const auto qs = all_divisors(ic.back());
        if (!ps || !qs)
            throw std::domain_error("rational_roots: coefficients exceed the supported size");
        for (const BigInt& p : *ps) {
            for (const BigInt& q : *qs) {
                for (int sign = 1; sign >= -1; sign -= 2) {
                    const Rational cand(sign > 0 ? p : -p, q);
                    if (rest.is_zero() || rest.degree() < 1) break;
                    if (!rest.eval(cand).is_zero()) continue;
                    int mult = 0;
                    UniPoly lin({{-cand}, {Rational(1)}});
                    while (true) {
                        auto [qq, rr] = rest.divmod(lin);
                        if (!rr.is_zero()) break;
                        rest = qq;
                        ++mult;
                        if (rest.is_zero() || !rest.eval(cand).is_zero()) break;
                    }
                    if (mult > 0) out.roots.push_back({cand, mult});
                }
            }
        }
    }
    out.residual = rest;
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// Resultant Res_t(f(t), g(t) - c) as a polynomial in the parameter c,
// computed by fraction-free elimination on the Sylvester matrix over Q[c].
inline UniPoly resultant_minus_parameter(const UniPoly& f, const UniPoly& g) {
    const int m = f.degree();
    const int n = std::max(g.degree(), 1);  // g - c has degree >= 1 in t unless g constant
    if (m < 1) throw std::invalid_argument("resultant_minus_parameter: deg f must be >= 1");
    // Rows: n shifted copies of f (entries in Q), m shifted copies of g - c
    // (entries linear in c).
    const int size = m + n;
    std::vector<std::vector<UniPoly>> s(static_cast<std::size_t>(size),
                                        std::vector<UniPoly>(static_cast<std::size_t>(size)));
    for (int row = 0; row < n; ++row)
        for (int k = 0; k <= m; ++k)
            s[row][row + k] = UniPoly::constant(f.coeff(static_cast<std::size_t>(m - k)));
    for (int row = 0; row < m; ++row) {
        for (int k = 0; k <= n; ++k) {
            Rational coeff = g.coeff(static_cast<std::size_t>(n - k));
            UniPoly entry = UniPoly::constant(coeff);
            if (n - k == 0) entry = entry - UniPoly::monomial(Rational(1), 1);  // constant - c
            s[n + row][row + k] = entry;
        }
    }
    // Bareiss over Q[c].
    UniPoly prev = UniPoly::constant(Rational(1));
    int sign = 1;
    for (int k = 0; k + 1 < size; ++k) {
        if (s[k][k].is_zero()) {
            int piv = k + 1;
            while (piv < size && s[piv][k].is_zero()) ++piv;
            if (piv == size) return UniPoly();
            std::swap(s[k], s[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                s[i][j] = (s[i][j] * s[k][k] - s[i][k] * s[k][j]).div_exact(prev);
            }
            s[i][k] = UniPoly();
        }
        prev = s[k][k];
    }
    UniPoly det = s[static_cast<std::size_t>(size - 1)][static_cast<std::size_t>(size - 1)];
    return sign > 0 ? det : -det;
}

// ---------------------------------------------------------------------------
// Sparse bivariate polynomials over Q
// ---------------------------------------------------------------------------

class BiPoly {
public:
    using Exponents = std::pair<int, int>;  // (x power, y power)

    BiPoly() = default;
    static BiPoly constant(const Rational& v) {
        BiPoly p;
        p.set(0, 0, v);
        return p;
    }
    static BiPoly x() { return monomial(1, 0, Rational(1)); }
    static BiPoly y() { return monomial(0, 1, Rational(1)); }
    static BiPoly monomial(int i, int j, const Rational& v) {
        BiPoly p;
        p.set(i, j, v);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    Rational coeff(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void set(int i, int j, const Rational& v) {
        if (v.is_zero()) terms_.erase({i, j});
        else terms_[{i, j}] = v;
    }
    void add_term(int i, int j, const Rational& v) { set(i, j, coeff(i, j) + v); }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        BiPoly out = a;
        for (const auto& [e, v] : b.terms_) out.add_term(e.first, e.second, v);
        return out;
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
        BiPoly out = a;
        for (const auto& [e, v] : b.terms_) out.add_term(e.first, e.second, -v);
        return out;
    }
    BiPoly operator-() const {
        BiPoly out;
        for (const auto& [e, v] : terms_) out.terms_[e] = -v;
        return out;
    }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly out;
        for (const auto& [ea, va] : a.terms_)
            for (const auto& [eb, vb] : b.terms_)
                out.add_term(ea.first + eb.first, ea.second + eb.second, va * vb);
        return out;
    }
    friend BiPoly operator*(const BiPoly& a, const Rational& s) {
        BiPoly out;
        if (s.is_zero()) return out;
        for (const auto& [e, v] : a.terms_) out.terms_[e] = v * s;
        return out;
    }
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

    Rational eval(const Rational& x0, const Rational& y0) const {
        Rational acc(0);
        for (const auto& [e, v] : terms_) {
            Rational t = v;
            for (int i = 0; i < e.first; ++i) t *= x0;
            for (int j = 0; j < e.second; ++j) t *= y0;
            acc += t;
        }
        return acc;
    }

    // Lowest total degree of a term (the algebraic multiplicity at 0).
    int min_total_degree() const {
        if (terms_.empty()) throw std::domain_error("BiPoly: zero polynomial");
        int best = -1;
        for (const auto& [e, v] : terms_) {
            const int d = e.first + e.second;
            if (best < 0 || d < best) best = d;
        }
        return best;
    }

    int ord_x() const {  // largest k with x^k dividing
        if (terms_.empty()) throw std::domain_error("BiPoly: zero polynomial");
        int best = -1;
        for (const auto& [e, v] : terms_)
            if (best < 0 || e.first < best) best = e.first;
        return best;
    }
    int ord_y() const {
        if (terms_.empty()) throw std::domain_error("BiPoly: zero polynomial");
        int best = -1;
        for (const auto& [e, v] : terms_)
            if (best < 0 || e.second < best) best = e.second;
        return best;
    }

    BiPoly divide_by_x_power(int k) const {
        BiPoly out;
        for (const auto& [e, v] : terms_) {
            if (e.first < k) throw std::domain_error("BiPoly: not divisible by x^k");
            out.terms_[{e.first - k, e.second}] = v;
        }
        return out;
    }
    BiPoly divide_by_y_power(int k) const {
        BiPoly out;
        for (const auto& [e, v] : terms_) {
            if (e.second < k) throw std::domain_error("BiPoly: not divisible by y^k");
            out.terms_[{e.first, e.second - k}] = v;
        }
        return out;
    }

    // Substitution x -> u, y -> u v (the first blowup chart).
    BiPoly subst_x_xy() const {
        BiPoly out;
        for (const auto& [e, v] : terms_) out.add_term(e.first + e.second, e.second, v);
        return out;
    }
    // Substitution x -> u v, y -> v (the second blowup chart).
    BiPoly subst_xy_y() const {
        BiPoly out;
        for (const auto& [e, v] : terms_) out.add_term(e.first, e.first + e.second, v);
        return out;
    }

    // y -> y + c.
    BiPoly shift_y(const Rational& c) const {
        if (c.is_zero()) return *this;
        BiPoly out;
        for (const auto& [e, v] : terms_) {
            // (y + c)^j expanded by the binomial theorem.
            Rational binom(1);
            Rational cpow(1);
            for (int k = e.second; k >= 0; --k) {
                out.add_term(e.first, k, v * binom * cpow);
                // next: k -> k-1: binom *= k / (j - k + 1), cpow *= c
                if (k > 0) {
                    binom *= Rational(BigInt(k));
                    binom /= Rational(BigInt(e.second - k + 1));
                    cpow *= c;
                }
            }
        }
        return out;
    }
    BiPoly shift_x(const Rational& c) const { return swap_xy().shift_y(c).swap_xy(); }

    BiPoly swap_xy() const {
        BiPoly out;
        for (const auto& [e, v] : terms_) out.terms_[{e.second, e.first}] = v;
        return out;
    }

    // Restrictions to the axes.
    UniPoly restrict_x0() const {  // p(0, t)
        std::vector<Rational> c;
        for (const auto& [e, v] : terms_) {
            if (e.first != 0) continue;
            if (static_cast<std::size_t>(e.second) >= c.size())
                c.resize(static_cast<std::size_t>(e.second) + 1);
            c[static_cast<std::size_t>(e.second)] = v;
        }
        return UniPoly(std::move(c));
    }
    UniPoly restrict_y0() const { return swap_xy().restrict_x0(); }

    BiPoly partial_x() const {
        BiPoly out;
        for (const auto& [e, v] : terms_)
            if (e.first > 0) out.terms_[{e.first - 1, e.second}] = v * Rational(BigInt(e.first));
        return out;
    }
    BiPoly partial_y() const {
        BiPoly out;
        for (const auto& [e, v] : terms_)
            if (e.second > 0) out.terms_[{e.first, e.second - 1}] = v * Rational(BigInt(e.second));
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, v] = *it;
            if (!s.empty()) s += v.sign() > 0 ? " + " : " - ";
            else if (v.sign() < 0) s += "-";
            const Rational a = abs(v);
            const bool has_var = e.first > 0 || e.second > 0;
            bool need_star = false;
            if (!has_var || !(a == Rational(1))) {
                s += a.str();
                need_star = has_var;
            }
            if (e.first > 0) {
                if (need_star) s += "*";
                s += "x";
                if (e.first > 1) s += "^" + std::to_string(e.first);
                need_star = true;
            }
            if (e.second > 0) {
                if (need_star) s += "*";
                s += "y";
                if (e.second > 1) s += "^" + std::to_string(e.second);
            }
        }
        return s;
    }

private:
    std::map<Exponents, Rational> terms_;
};

// ---------------------------------------------------------------------------
// Bivariate gcd (primitive PRS in y over Q[x]) for saturation
// ---------------------------------------------------------------------------

namespace poly_detail {

// Recursive form: coefficients in Q[x], indexed by the y power.
inline std::vector<UniPoly> to_recursive(const BiPoly& p) {
    std::vector<UniPoly> out;
    for (const auto& [e, v] : p.terms()) {
        if (static_cast<std::size_t>(e.second) >= out.size())
            out.resize(static_cast<std::size_t>(e.second) + 1);
    }
    for (std::size_t j = 0; j < out.size(); ++j) {
        std::vector<Rational> c;
        for (const auto& [e, v] : p.terms()) {
            if (static_cast<std::size_t>(e.second) != j) continue;
            if (static_cast<std::size_t>(e.first) >= c.size())
                c.resize(static_cast<std::size_t>(e.first) + 1);
            c[static_cast<std::size_t>(e.first)] = v;
        }
        out[j] = UniPoly(std::move(c));
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

inline BiPoly from_recursive(const std::vector<UniPoly>& rec) {
    BiPoly p;
    for (std::size_t j = 0; j < rec.size(); ++j)
        for (std::size_t i = 0; i < rec[j].coeffs().size(); ++i)
            p.add_term(static_cast<int>(i), static_cast<int>(j), rec[j].coeff(i));
    return p;
}

inline UniPoly content_y(const std::vector<UniPoly>& rec) {
    UniPoly g;
    for (const auto& c : rec) g = UniPoly::gcd(g, c);
    return g;
}

inline std::vector<UniPoly> divide_content(const std::vector<UniPoly>& rec, const UniPoly& g) {
    std::vector<UniPoly> out(rec.size());
    for (std::size_t i = 0; i < rec.size(); ++i)
        out[i] = rec[i].is_zero() ? UniPoly() : rec[i].div_exact(g);
    return out;
}

// Pseudo-remainder of a by b in y.
inline std::vector<UniPoly> pseudo_rem(std::vector<UniPoly> a, const std::vector<UniPoly>& b) {
    const int db = static_cast<int>(b.size()) - 1;
    const UniPoly lead_b = b.back();
    while (static_cast<int>(a.size()) - 1 >= db) {
        const int da = static_cast<int>(a.size()) - 1;
        const UniPoly lead_a = a.back();
        // a := lead_b * a - lead_a * y^{da-db} * b
        std::vector<UniPoly> next(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) next[i] = lead_b * a[i];
        for (std::size_t i = 0; i < b.size(); ++i) {
            const std::size_t k = i + static_cast<std::size_t>(da - db);
            next[k] = next[k] - lead_a * b[i];
        }
        while (!next.empty() && next.back().is_zero()) next.pop_back();
        a = std::move(next);
        if (a.empty()) break;
    }
    return a;
}

}  // namespace poly_detail

// gcd of two bivariate polynomials, normalized with content 1 in y and a
// monic-in-x leading coefficient convention; the zero cases follow gcd(a,0)=a.
inline BiPoly bipoly_gcd(const BiPoly& pa, const BiPoly& pb) {
    using namespace poly_detail;
    if (pa.is_zero()) return pb;
    if (pb.is_zero()) return pa;
    auto a = to_recursive(pa);
    auto b = to_recursive(pb);
    const UniPoly ca = content_y(a);
    const UniPoly cb = content_y(b);
    a = divide_content(a, ca);
    b = divide_content(b, cb);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        auto r = pseudo_rem(a, b);
        a = std::move(b);
        if (!r.empty()) {
            const UniPoly cr = content_y(r);
            r = divide_content(r, cr);
        }
        b = std::move(r);
    }
    // a is the primitive gcd in y; include the gcd of the contents.
    const UniPoly cont = UniPoly::gcd(ca, cb);
    std::vector<UniPoly> result(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) result[i] = a[i] * cont;
    if (result.empty()) return BiPoly();
    BiPoly g = from_recursive(result);
    // Normalize the overall scalar: make the leading term's coefficient 1.
    const auto& last = *g.terms().rbegin();
    return g * (Rational(1) / last.second);
}

// Exact bivariate division (throws if not divisible).
inline BiPoly bipoly_div_exact(const BiPoly& pa, const BiPoly& pb) {
    using namespace poly_detail;
    if (pb.is_zero()) throw std::domain_error("bipoly_div_exact: division by zero");
    if (pa.is_zero()) return BiPoly();
    auto a = to_recursive(pa);
    const auto b = to_recursive(pb);
    std::vector<UniPoly> q(a.size());
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const UniPoly qc = a.back().div_exact(b.back());
        q[shift] = q[shift] + qc;
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] = a[shift + i] - qc * b[i];
        }
        while (!a.empty() && a.back().is_zero()) a.pop_back();
    }
    if (!a.empty()) throw std::domain_error("bipoly_div_exact: inexact division");
    return from_recursive(q);
}

}  // namespace folsing
