#include "ec/poly_text.hpp"

#include <cctype>

namespace ec::field {

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skipWs() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skipWs();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skipWs();
        return pos < s.size() ? s[pos] : '\0';
    }

    [[noreturn]] void bad(const std::string& why) {
        fail(ErrorKind::BadInput, why + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    uint64_t integer() {
        skipWs();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) bad("expected number");
        std::string digits;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
        return std::stoull(digits);
    }

    RatFunc primary() {
        char c = peek();
        if (c == '(') {
            eat('(');
            RatFunc e = expr();
            if (!eat(')')) bad("expected ')'");
            return e;
        }
        if (c == '-') {
            eat('-');
            return -primary();
        }
        if (c == 'X' || c == 'x') {
            ++pos;
            uint64_t idx = integer();
            if (idx == 0) bad("variables are 1-based");
            return RatFunc::var(static_cast<int>(idx - 1));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            uint64_t n = integer();
            return RatFunc::constant(Rat(Int(n)));
        }
        bad("expected factor");
    }

    RatFunc factor() {
        RatFunc base = primary();
        if (eat('^')) {
            uint64_t e = integer();
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    RatFunc term() {
        RatFunc acc = factor();
        while (true) {
            if (eat('*')) {
                acc = acc * factor();
            } else if (eat('/')) {
                acc = acc / factor();
            } else {
                break;
            }
        }
        return acc;
    }

    RatFunc expr() {
        RatFunc acc = term();
        while (true) {
            if (eat('+')) {
                acc = acc + term();
            } else if (eat('-')) {
                acc = acc - term();
            } else {
                break;
            }
        }
        return acc;
    }
};

} // namespace

RatFunc parseRatFunc(const std::string& text) {
    Parser p(text);
    RatFunc r = p.expr();
    p.skipWs();
    if (p.pos != text.size()) p.bad("trailing input");
    return r;
}

MPoly parsePoly(const std::string& text) {
    RatFunc r = parseRatFunc(text);
    if (!r.isPolynomial()) fail(ErrorKind::BadInput, "expected a polynomial, got '" + r.str() + "'");
    auto q = r.num().divideExact(r.den());
    return *q;
}

} // namespace ec::field
