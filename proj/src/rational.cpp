#include "pertdef/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace pertdef {

std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

Rational parse_rational(const std::string& text) {
    auto bad = [&] { throw std::invalid_argument("malformed rational: '" + text + "'"); };
    if (text.empty()) bad();
    std::size_t pos = 0;
    auto read_int = [&]() -> Integer {
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) bad();
        return Integer(text.substr(start, pos - start));
    };
    Integer num = read_int();
    Integer den = 1;
    if (pos < text.size()) {
        if (text[pos] != '/') bad();
        ++pos;
        den = read_int();
        if (pos != text.size()) bad();
        if (den == 0) throw std::invalid_argument("zero denominator in rational: '" + text + "'");
    }
    return Rational(num, den);
}

} // namespace pertdef
