#include <cctype>

#include "cforge/parser.hpp"

namespace cforge {

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

    ScalarExpr parse() {
        ScalarExpr e = expr();
        if (!at_end()) fail("unexpected trailing input");
        return e;
    }

    ScalarExpr expr() {
        ScalarExpr e = term();
        for (;;) {
            if (accept('+'))
                e += term();
            else if (accept('-'))
                e -= term();
            else
                return e;
        }
    }

    ScalarExpr term() {
        ScalarExpr e = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos;
                e *= factor();
            } else if (c == '/') {
                std::size_t at = pos;
                ++pos;
                ScalarExpr rhs = factor();
                if (rhs.is_zero()) throw parse_error("division by zero", at);
                e /= rhs;
            } else {
                return e;
            }
        }
    }

    ScalarExpr factor() {
        if (accept('-')) return -factor();
        ScalarExpr e = primary();
        if (peek() == '^') {
            std::size_t at = pos;
            ++pos;
            skip_ws();
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                throw parse_error("exponent must be a nonnegative integer", at);
            long n = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                n = n * 10 + (text[pos] - '0');
                if (n > 1000) throw parse_error("exponent too large", at);
                ++pos;
            }
            e = e.pow(static_cast<int>(n));
        }
        return e;
    }

    ScalarExpr primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            ScalarExpr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            mpq_class v(std::string(text.substr(start, pos - start)));
            return ScalarExpr(GaussRat(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string_view name = text.substr(start, pos - start);
            if (name == "R") return ScalarExpr::root();
            if (name == "i") return ScalarExpr::imaginary();
            for (int v = 0; v < NVARS; ++v)
                if (name == var_name(v)) return ScalarExpr::gen(v);
            throw parse_error("unknown identifier '" + std::string(name) + "'", start);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

ScalarExpr parse_expr(std::string_view text) {
    Parser p{text};
    return p.parse();
}

std::string print_expr(const ScalarExpr& e) { return to_string(e); }

}  // namespace cforge
