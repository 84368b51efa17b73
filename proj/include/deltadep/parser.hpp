#ifndef DELTADEP_PARSER_HPP
#define DELTADEP_PARSER_HPP

#include <deltadep/diffpoly.hpp>
#include <deltadep/poly.hpp>
#include <deltadep/rational.hpp>

#include <cctype>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deltadep {

/*
 * Text format for differential polynomials:
 *
 *   sum    := ['+' | '-'] term (('+' | '-') term)*
 *   term   := factor ('*' factor)*
 *   factor := primary ['^' INT]
 *   primary:= INT ['/' INT] | coord | '(' sum ')'
 *   coord  := ('d' K ['^' INT])* VAR
 *
 * so `d1^2 d2 y0` is δ_1^2 δ_2 y_0 and `(d1 y0)^3` or `d1 y0^3` is its cube.
 * Whitespace only separates tokens.
 */

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

namespace detail {

class PolyParser {
public:
    using Resolver = std::function<std::optional<std::size_t>(const std::string&)>;

    PolyParser(std::string_view text, AmbientPtr ambient, Resolver resolve)
        : text_(text), ambient_(std::move(ambient)), resolve_(std::move(resolve)) {
        advance();
    }

    DiffPoly parse() {
        if (tok_.kind == Kind::End) throw ParseError("empty expression", tok_.pos);
        DiffPoly p = parse_sum();
        if (tok_.kind != Kind::End) throw ParseError("unexpected '" + tok_.text + "'", tok_.pos);
        return p;
    }

private:
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

    struct Token {
        Kind kind = Kind::End;
        std::string text;
        std::size_t pos = 0;
    };

    static constexpr std::uint32_t kMaxExponent = 10000;

    void advance() {
        while (p_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[p_]))) ++p_;
        tok_ = Token{Kind::End, "", p_};
        if (p_ >= text_.size()) return;
        char ch = text_[p_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = p_;
            while (p_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p_]))) ++p_;
            tok_ = Token{Kind::Number, std::string(text_.substr(start, p_ - start)), start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = p_;
            while (p_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[p_])) || text_[p_] == '_'))
                ++p_;
            tok_ = Token{Kind::Ident, std::string(text_.substr(start, p_ - start)), start};
            return;
        }
        Kind k;
        switch (ch) {
            case '+': k = Kind::Plus; break;
            case '-': k = Kind::Minus; break;
            case '*': k = Kind::Star; break;
            case '/': k = Kind::Slash; break;
            case '^': k = Kind::Caret; break;
            case '(': k = Kind::LParen; break;
            case ')': k = Kind::RParen; break;
            default: throw ParseError(std::string("unexpected character '") + ch + "'", p_);
        }
        tok_ = Token{k, std::string(1, ch), p_};
        ++p_;
    }

    Token expect(Kind k, const char* what) {
        if (tok_.kind != k) {
            throw ParseError(std::string("expected ") + what + (tok_.kind == Kind::End ? " but input ended" : ", found '" + tok_.text + "'"),
                             tok_.pos);
        }
        Token t = tok_;
        advance();
        return t;
    }

    std::uint32_t parse_small_int(const char* what) {
        Token t = expect(Kind::Number, what);
        if (t.text.size() > 9 || std::stoul(t.text) > kMaxExponent)
            throw ParseError(std::string(what) + " too large", t.pos);
        return static_cast<std::uint32_t>(std::stoul(t.text));
    }

    static bool is_operator(const std::string& ident) {
        if (ident.size() < 2 || ident[0] != 'd') return false;
        for (std::size_t i = 1; i < ident.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(ident[i]))) return false;
        return true;
    }

    DiffPoly parse_sum() {
        bool negate = false;
        if (tok_.kind == Kind::Plus || tok_.kind == Kind::Minus) {
            negate = tok_.kind == Kind::Minus;
            advance();
        }
        DiffPoly acc = parse_term();
        if (negate) acc = -acc;
        while (tok_.kind == Kind::Plus || tok_.kind == Kind::Minus) {
            bool minus = tok_.kind == Kind::Minus;
            advance();
            DiffPoly t = parse_term();
            if (minus) acc -= t; else acc += t;
        }
        return acc;
    }

    DiffPoly parse_term() {
        DiffPoly acc = parse_factor();
        while (tok_.kind == Kind::Star) {
            advance();
            acc *= parse_factor();
        }
        return acc;
    }

    DiffPoly parse_factor() {
        DiffPoly base = parse_primary();
        if (tok_.kind == Kind::Caret) {
            advance();
            base = pow(base, parse_small_int("exponent"));
        }
        return base;
    }

    DiffPoly parse_primary() {
        switch (tok_.kind) {
            case Kind::Number: {
                Token num = tok_;
                advance();
                std::string lit = num.text;
                if (tok_.kind == Kind::Slash) {
                    advance();
                    Token den = expect(Kind::Number, "denominator");
                    if (std::all_of(den.text.begin(), den.text.end(), [](char c) { return c == '0'; }))
                        throw ParseError("zero denominator", den.pos);
                    lit += "/" + den.text;
                }
                return DiffPoly::constant(ambient_, parse_rational(lit));
            }
            case Kind::LParen: {
                advance();
                DiffPoly inner = parse_sum();
                expect(Kind::RParen, "')'");
                return inner;
            }
            case Kind::Ident: return parse_coordinate();
            case Kind::End: throw ParseError("unexpected end of input", tok_.pos);
            default: throw ParseError("unexpected '" + tok_.text + "'", tok_.pos);
        }
    }

    DiffPoly parse_coordinate() {
        const std::size_t m = ambient_->m;
        MultiIndex alpha(m);
        while (tok_.kind == Kind::Ident && is_operator(tok_.text)) {
            Token op = tok_;
            if (op.text.size() > 9) throw ParseError("derivation index too large", op.pos);
            auto k = std::stoul(op.text.substr(1));
            if (k == 0 || k > m)
                throw ParseError("derivation index " + std::to_string(k) + " out of range 1.." + std::to_string(m), op.pos);
            advance();
            std::uint32_t power = 1;
            if (tok_.kind == Kind::Caret) {
                advance();
                power = parse_small_int("operator power");
            }
            alpha = alpha.incremented(k - 1, power);
        }
        Token var = expect(Kind::Ident, "variable");
        if (is_operator(var.text)) throw ParseError("expected variable after operator", var.pos);
        auto idx = resolve_(var.text);
        if (!idx) throw ParseError("unknown variable '" + var.text + "'", var.pos);
        return DiffPoly::coordinate(ambient_, *idx, std::move(alpha));
    }

    std::string_view text_;
    AmbientPtr ambient_;
    Resolver resolve_;
    std::size_t p_ = 0;
    Token tok_;
};

}  // namespace detail

inline DiffPoly parse(std::string_view text, const AmbientPtr& ambient) {
    return detail::PolyParser(text, ambient, [&](const std::string& name) { return ambient->index_of(name); }).parse();
}

inline DiffPoly parse(std::string_view text, std::size_t m, std::vector<std::string> variables) {
    return parse(text, make_ambient(m, std::move(variables)));
}

/// Polynomial in x1..xm (plain `x` when m = 1); derivative operators are rejected.
inline Poly parse_poly(std::string_view text, std::size_t m) {
    auto ambient = Ambient::indexed(m, m, "x");
    for (std::size_t j = 0; j < m; ++j) ambient.variables[j] = "x" + std::to_string(j + 1);
    auto amb = std::make_shared<const Ambient>(std::move(ambient));
    auto resolve = [&](const std::string& name) -> std::optional<std::size_t> {
        if (m == 1 && name == "x") return 0;
        return amb->index_of(name);
    };
    DiffPoly dp = detail::PolyParser(text, amb, resolve).parse();
    if (dp.max_operator_order() > 0) throw ParseError("derivative operators are not allowed in a function", 0);
    Poly out(m);
    for (const auto& [mono, c] : dp.terms()) {
        MultiIndex e(m);
        for (const auto& [coord, exp] : mono.factors()) e = e.incremented(coord.variable, exp);
        out.add_term(e, c);
    }
    return out;
}

/// `d1^2 d2 y0`.
inline std::string render_coordinate(const DerivativeCoordinate& c, const Ambient& ambient) {
    std::string out;
    for (std::size_t j = 0; j < c.index.size(); ++j) {
        if (c.index[j] == 0) continue;
        out += "d" + std::to_string(j + 1);
        if (c.index[j] > 1) out += "^" + std::to_string(c.index[j]);
        out += ' ';
    }
    return out + ambient.variables.at(c.variable);
}

inline std::string render(const DiffMonomial& mono, const Ambient& ambient) {
    std::string out;
    for (const auto& [coord, e] : mono.factors()) {
        if (!out.empty()) out += "*";
        std::string c = render_coordinate(coord, ambient);
        if (e == 1) {
            out += c;
        } else if (coord.index.is_zero()) {
            out += c + "^" + std::to_string(e);
        } else {
            out += "(" + c + ")^" + std::to_string(e);
        }
    }
    return out;
}

/// Canonical text: terms in ascending monomial order, reduced coefficients,
/// ` + ` / ` - ` between terms. parse(render(p)) == p.
inline std::string render(const DiffPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : p.terms()) {
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        Rational mag = abs(c);
        if (mono.is_one()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += render(mono, p.ambient());
        } else {
            out += to_string(mag) + "*" + render(mono, p.ambient());
        }
    }
    return out;
}

}  // namespace deltadep

#endif  // DELTADEP_PARSER_HPP
