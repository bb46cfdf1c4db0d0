#include "freelin/parse.hpp"

#include <cctype>
#include <cstdint>
#include <vector>

#include "freelin/errors.hpp"

namespace freelin {

FreePoly ParsedPoly::as_free() const {
    if (uses_parameters) throw InvalidInput("expression uses torus parameters");
    FreePoly out(poly.n(), poly.ring().base);
    for (const auto& [w, c] : poly.terms()) out.add_term(w, c.coeff(ExpVec(poly.ring().r, 0)));
    return out;
}

namespace {

struct Token {
    enum class Kind { Number, Gen, Param, Plus, Minus, Star, Caret, LParen, RParen, End };
    Kind kind = Kind::End;
    Rat number;   // Number
    int index = 0;  // Gen / Param (1-based)
    std::size_t pos = 0;
};

[[noreturn]] void fail(std::size_t pos, const std::string& what) {
    throw InvalidInput("parse error at offset " + std::to_string(pos) + ": " + what);
}

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.pos = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            std::string num = s.substr(i, j - i);
            // a slash directly between digit runs is part of a rational literal
            if (j < s.size() && s[j] == '/' && j + 1 < s.size() &&
                std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
                std::size_t k = j + 1;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                num += s.substr(j, k - j);
                j = k;
            }
            t.kind = Token::Kind::Number;
            t.number = parse_rational(num);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i + 1;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            int idx = (j == i + 1) ? 1 : std::stoi(s.substr(i + 1, j - i - 1));
            if (idx < 1) fail(i, "indices are 1-based");
            if (c == 'z' || c == 'x') {
                t.kind = Token::Kind::Gen;
            } else if (c == 't') {
                t.kind = Token::Kind::Param;
            } else {
                fail(i, std::string("unknown symbol '") + c + "'");
            }
            t.index = idx;
            i = j;
        } else {
            switch (c) {
                case '+': t.kind = Token::Kind::Plus; break;
                case '-': t.kind = Token::Kind::Minus; break;
                case '*': t.kind = Token::Kind::Star; break;
                case '^': t.kind = Token::Kind::Caret; break;
                case '(': t.kind = Token::Kind::LParen; break;
                case ')': t.kind = Token::Kind::RParen; break;
                default: fail(i, std::string("unexpected character '") + c + "'");
            }
            ++i;
        }
        out.push_back(t);
    }
    out.push_back(Token{Token::Kind::End, Rat(0), 0, s.size()});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, int n, LRing ring)
        : toks_(std::move(toks)), n_(n), ring_(ring) {}

    LFreePoly parse() {
        LFreePoly v = expr();
        if (peek().kind != Token::Kind::End) fail(peek().pos, "trailing input");
        return v;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    bool accept(Token::Kind k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }

    LFreePoly expr() {
        bool neg = false;
        while (true) {
            if (accept(Token::Kind::Minus))
                neg = !neg;
            else if (!accept(Token::Kind::Plus))
                break;
        }
        LFreePoly v = term();
        if (neg) v = -v;
        while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
            bool minus = next().kind == Token::Kind::Minus;
            LFreePoly rhs = term();
            v = minus ? v - rhs : v + rhs;
        }
        return v;
    }

    LFreePoly term() {
        LFreePoly v = factor();
        while (accept(Token::Kind::Star)) v = v * factor();
        return v;
    }

    LFreePoly factor() {
        std::size_t pos = peek().pos;
        LFreePoly base = primary();
        if (!accept(Token::Kind::Caret)) return base;
        bool neg = accept(Token::Kind::Minus);
        if (peek().kind != Token::Kind::Number) fail(peek().pos, "expected an exponent");
        Token e = next();
        if (boost::multiprecision::denominator(e.number) != 1)
            fail(e.pos, "exponent must be an integer");
        std::int64_t k = static_cast<std::int64_t>(boost::multiprecision::numerator(e.number));
        if (neg) k = -k;
        return power(base, k, pos);
    }

    LFreePoly primary() {
        Token t = next();
        switch (t.kind) {
            case Token::Kind::Number:
                return LFreePoly::constant(
                    LaurentScalar::constant(Scalar(t.number, ring_.base), ring_), n_);
            case Token::Kind::Gen:
                return LFreePoly::gen(t.index, n_, ring_);
            case Token::Kind::Param: {
                ExpVec e(ring_.r, 0);
                e[t.index - 1] = 1;
                return LFreePoly::constant(
                    LaurentScalar::monomial(e, Scalar::one(ring_.base), ring_), n_);
            }
            case Token::Kind::Minus:
                return -factor();
            case Token::Kind::LParen: {
                LFreePoly v = expr();
                if (!accept(Token::Kind::RParen)) fail(peek().pos, "expected ')'");
                return v;
            }
            default:
                fail(t.pos, "expected a number, generator, parameter, or '('");
        }
    }

    LFreePoly power(const LFreePoly& base, std::int64_t k, std::size_t pos) {
        if (k >= 0) {
            LFreePoly v = LFreePoly::one(n_, ring_);
            for (std::int64_t j = 0; j < k; ++j) v = v * base;
            return v;
        }
        // negative exponents invert single parameter monomials only
        if (base.terms().size() != 1) fail(pos, "negative power of a non-monomial");
        const auto& [w, c] = *base.terms().begin();
        if (!w.empty()) fail(pos, "negative power of a generator");
        if (!c.is_monomial()) fail(pos, "negative power of a non-monomial coefficient");
        const auto& [e, s] = *c.terms().begin();
        LaurentScalar inv = LaurentScalar::monomial(e, s.inverse(), ring_).invert_parameters();
        LFreePoly v = LFreePoly::one(n_, ring_);
        LFreePoly f = LFreePoly::constant(inv, n_);
        for (std::int64_t j = 0; j < -k; ++j) v = v * f;
        return v;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int n_;
    LRing ring_;
};

}  // namespace

ParsedPoly parse_surface(const std::string& text, QRing base) {
    std::vector<Token> toks = tokenize(text);
    int n = 0, r = 0;
    for (const auto& t : toks) {
        if (t.kind == Token::Kind::Gen) n = std::max(n, t.index);
        if (t.kind == Token::Kind::Param) r = std::max(r, t.index);
    }
    bool uses_t = r > 0;
    LRing ring{base, std::max(r, 1)};
    Parser p(std::move(toks), n, ring);
    return ParsedPoly{p.parse(), uses_t};
}

}  // namespace freelin
