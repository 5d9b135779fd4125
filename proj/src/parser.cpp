#include "pertdef/parser.hpp"

#include <cctype>

namespace pertdef {

namespace {

class Parser {
public:
    Parser(const std::string& text, int num_vars) : text_(text), n_(num_vars) {}

    Polynomial parse() {
        Polynomial p = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    const std::string& text_;
    int n_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Polynomial expression() {
        Polynomial acc = eat('-') ? -term() : (eat('+'), term());
        for (;;) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            if (eat('*')) {
                acc = acc * factor();
            } else if (eat('/')) {
                const std::size_t at = pos_;
                Polynomial d = factor();
                if (d.degree() != 0) throw ParseError("division only by a rational constant", at);
                if (d.is_zero()) throw ParseError("division by zero", at);
                const Rational c = d.terms().begin()->second;
                acc = (Rational(1) / c) * acc;
            } else {
                return acc;
            }
        }
    }

    Polynomial factor() {
        Polynomial base = primary();
        if (eat('^')) {
            skip_ws();
            const std::size_t at = pos_;
            long e = integer_literal();
            if (e < 0) throw ParseError("negative exponent", at);
            Polynomial acc = Polynomial::constant(n_, 1);
            for (long i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        return base;
    }

    Polynomial primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expression();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (c == 'x') {
            ++pos_;
            const std::size_t at = pos_;
            long idx = integer_literal();
            if (idx < 1 || idx > n_)
                throw ParseError("unknown variable x" + std::to_string(idx), at);
            return Polynomial::variable(n_, static_cast<int>(idx));
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Polynomial::constant(n_, Rational(integer_big()));
        fail(std::string("unexpected character '") + c + "'");
    }

    long integer_literal() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        return std::stol(text_.substr(start, pos_ - start));
    }

    Integer integer_big() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        return Integer(text_.substr(start, pos_ - start));
    }
};

} // namespace

Polynomial parse_poly(const std::string& text, int num_vars) {
    return Parser(text, num_vars).parse();
}

} // namespace pertdef
