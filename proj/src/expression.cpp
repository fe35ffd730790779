#include "levy/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace levy {

namespace {

struct Parser {
    const std::string& src;
    std::size_t pos = 0;

    explicit Parser(const std::string& s) : src(s) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw SpecParseError(what, static_cast<long>(pos));
    }

    RealFn parse() {
        RealFn e = expr();
        skip_ws();
        if (pos != src.size()) fail("unexpected trailing input");
        return e;
    }

    RealFn expr() {
        RealFn lhs = term();
        while (true) {
            if (accept('+')) {
                RealFn rhs = term();
                lhs = [lhs, rhs](double r) { return lhs(r) + rhs(r); };
            } else if (accept('-')) {
                RealFn rhs = term();
                lhs = [lhs, rhs](double r) { return lhs(r) - rhs(r); };
            } else {
                return lhs;
            }
        }
    }

    RealFn term() {
        RealFn lhs = unary();
        while (true) {
            if (accept('*')) {
                RealFn rhs = unary();
                lhs = [lhs, rhs](double r) { return lhs(r) * rhs(r); };
            } else if (accept('/')) {
                RealFn rhs = unary();
                lhs = [lhs, rhs](double r) { return lhs(r) / rhs(r); };
            } else {
                return lhs;
            }
        }
    }

    RealFn unary() {
        if (accept('-')) {
            RealFn inner = unary();
            return [inner](double r) { return -inner(r); };
        }
        return power();
    }

    RealFn power() {
        RealFn base = primary();
        if (accept('^')) {
            RealFn exponent = unary(); // right-associative, binds -x as exponent
            return [base, exponent](double r) { return std::pow(base(r), exponent(r)); };
        }
        return base;
    }

    RealFn primary() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of expression");
        const char c = src[pos];
        if (c == '(') {
            ++pos;
            RealFn inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("expected a number, 'r', a function call or '('");
    }

    RealFn number() {
        const char* begin = src.c_str() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos += static_cast<std::size_t>(end - begin);
        return [v](double) { return v; };
    }

    RealFn identifier() {
        const std::size_t start = pos;
        while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                    src[pos] == '_'))
            ++pos;
        const std::string name = src.substr(start, pos - start);
        if (name == "r") return [](double r) { return r; };
        auto args = [&](int want) {
            if (!accept('(')) {
                pos = start;
                fail("expected '(' after function name");
            }
            std::vector<RealFn> out;
            out.push_back(expr());
            while (accept(',')) out.push_back(expr());
            if (!accept(')')) fail("expected ')' to close the argument list");
            if (static_cast<int>(out.size()) != want) {
                pos = start;
                fail("'" + name + "' takes " + std::to_string(want) + " argument(s)");
            }
            return out;
        };
        if (name == "exp") {
            auto a = args(1);
            RealFn f = a[0];
            return [f](double r) { return std::exp(f(r)); };
        }
        if (name == "log") {
            auto a = args(1);
            RealFn f = a[0];
            return [f](double r) { return std::log(f(r)); };
        }
        if (name == "abs") {
            auto a = args(1);
            RealFn f = a[0];
            return [f](double r) { return std::abs(f(r)); };
        }
        if (name == "pow") {
            auto a = args(2);
            RealFn f = a[0], g = a[1];
            return [f, g](double r) { return std::pow(f(r), g(r)); };
        }
        if (name == "min") {
            auto a = args(2);
            RealFn f = a[0], g = a[1];
            return [f, g](double r) { return std::min(f(r), g(r)); };
        }
        if (name == "max") {
            auto a = args(2);
            RealFn f = a[0], g = a[1];
            return [f, g](double r) { return std::max(f(r), g(r)); };
        }
        pos = start;
        fail("unknown identifier '" + name + "'");
    }
};

} // namespace

RealFn compile_expression(const std::string& text) {
    Parser p(text);
    return p.parse();
}

std::string caret_diagnostic(const std::string& text, long position) {
    std::string out = text + "\n";
    const long n = std::min<long>(position, static_cast<long>(text.size()));
    for (long i = 0; i < n; ++i) out += ' ';
    out += '^';
    return out;
}

} // namespace levy
