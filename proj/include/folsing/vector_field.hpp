#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "folsing/poly.hpp"

namespace folsing {

// Polynomial vector field A d/dx + B d/dy with A, B coprime (saturated).
struct PolyVectorField {
    BiPoly a;  // d/dx component
    BiPoly b;  // d/dy component

    bool singular_at_origin() const {
        return a.eval(Rational(0), Rational(0)).is_zero() &&
               b.eval(Rational(0), Rational(0)).is_zero();
    }
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

namespace vf_detail {

// Recursive-descent parser for polynomial expressions in x, y with rational
// coefficients, the operators + - * ^ and parentheses.
class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    std::size_t position() const { return pos_; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    // True if the parser sits at the given keyword (consumed on match).
    bool accept_word(std::string_view word) {
        skip_ws();
        if (text_.substr(pos_, word.size()) != word) return false;
        const std::size_t after = pos_ + word.size();
        if (after < text_.size() && std::isalnum(static_cast<unsigned char>(text_[after])))
            return false;
        pos_ = after;
        return true;
    }

    bool peek_word(std::string_view word) {
        const std::size_t save = pos_;
        const bool ok = accept_word(word);
        pos_ = save;
        return ok;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    // expr ::= term (('+'|'-') term)*
    BiPoly parse_expr() {
        BiPoly acc = parse_term();
        while (true) {
            skip_ws();
            // A '+'/'-' followed by a poly ending in dx/dy belongs to the
            // form level, so the caller must split first; here we stop on
            // the differential keywords.
            if (peek_word("dx") || peek_word("dy") || peek_word("d/dx") || peek_word("d/dy"))
                return acc;
            const char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + parse_term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }

    // term ::= factor ('*' factor)*
    BiPoly parse_term() {
        BiPoly acc = parse_factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = acc * parse_factor();
            } else {
                return acc;
            }
        }
    }

    // factor ::= atom ('^' integer)?
    BiPoly parse_factor() {
        BiPoly base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            const long e = parse_integer();
            if (e < 0) throw ParseError("negative exponent", pos_);
            BiPoly acc = BiPoly::constant(Rational(1));
            for (long i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        return base;
    }

    // atom ::= number | 'x' | 'y' | '(' expr ')' | '-' atom
    BiPoly parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            BiPoly inner = parse_expr();
            expect(')');
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return -parse_atom();
        }
        if (c == 'x') {
            ++pos_;
            return BiPoly::x();
        }
        if (c == 'y') {
            ++pos_;
            return BiPoly::y();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const long n = parse_integer();
            skip_ws();
            if (peek() == '/') {
                // Rational literal p/q; a slash not followed by a digit is
                // left for the d/dx keywords.
                const std::size_t save = pos_;
                ++pos_;
                skip_ws();
                if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    const long d = parse_integer();
                    if (d == 0) throw ParseError("zero denominator", pos_);
                    return BiPoly::constant(Rational(BigInt(n), BigInt(d)));
                }
                pos_ = save;
            }
            return BiPoly::constant(Rational(BigInt(n)));
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    long parse_integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected an integer", pos_);
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace vf_detail

// Parses a germ description:
//   form ::= "omega:" poly "dx" ("+"|"-") poly "dy"
//          | "v:"     poly "d/dx" ("+"|"-") poly "d/dy"
// A 1-form P dx + Q dy is converted to the tangent vector field (Q, -P).
// Common polynomial factors are removed and the sign is normalized so the
// smallest present monomial has positive coefficient.
inline PolyVectorField parse_vf(std::string_view text) {
    vf_detail::PolyParser p(text);
    bool is_form = false;
    if (p.accept_word("omega")) {
        p.expect(':');
        is_form = true;
    } else if (p.accept_word("v")) {
        p.expect(':');
    } else {
        throw ParseError("expected 'omega:' or 'v:'", p.position());
    }

    const BiPoly first = p.parse_expr();
    if (is_form ? !p.accept_word("dx") : !p.accept_word("d/dx"))
        throw ParseError(is_form ? "expected 'dx'" : "expected 'd/dx'", p.position());

    int sign = 1;
    if (p.peek() == '+') p.expect('+');
    else if (p.peek() == '-') {
        p.expect('-');
        sign = -1;
    } else {
        throw ParseError("expected '+' or '-' between the two components", p.position());
    }

    BiPoly second = p.parse_expr();
    if (sign < 0) second = -second;
    if (is_form ? !p.accept_word("dy") : !p.accept_word("d/dy"))
        throw ParseError(is_form ? "expected 'dy'" : "expected 'd/dy'", p.position());
    if (!p.at_end()) throw ParseError("trailing input", p.position());

    PolyVectorField vf;
    if (is_form) {
        // omega(v) = 0 for omega = P dx + Q dy gives v = (Q, -P).
        vf.a = second;
        vf.b = -first;
    } else {
        vf.a = first;
        vf.b = second;
    }

    if (vf.a.is_zero() && vf.b.is_zero())
        throw ParseError("the zero field does not define a foliation", 0);

    // Saturate.
    const BiPoly g = bipoly_gcd(vf.a, vf.b);
    const bool g_constant =
        g.terms().size() == 1 && g.terms().begin()->first == BiPoly::Exponents{0, 0};
    if (!g_constant) {
        if (!vf.a.is_zero()) vf.a = bipoly_div_exact(vf.a, g);
        if (!vf.b.is_zero()) vf.b = bipoly_div_exact(vf.b, g);
    }

    // Deterministic sign: the smallest monomial present (scanning the d/dx
    // component first) gets a positive coefficient.
    const BiPoly* lead = !vf.a.is_zero() ? &vf.a : &vf.b;
    if (lead->terms().begin()->second.sign() < 0) {
        vf.a = -vf.a;
        vf.b = -vf.b;
    }
    return vf;
}

}  // namespace folsing
