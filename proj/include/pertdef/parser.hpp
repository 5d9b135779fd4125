#ifndef PERTDEF_PARSER_HPP
#define PERTDEF_PARSER_HPP

#include <stdexcept>
#include <string>

#include "pertdef/polynomial.hpp"

namespace pertdef {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& message, std::size_t pos)
        : std::runtime_error(message + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Polynomial expressions in x1..xN: integer literals, + - * / ^ and
// parentheses. '/' only by a subexpression that evaluates to a nonzero
// constant; no implicit multiplication.
Polynomial parse_poly(const std::string& text, int num_vars);

} // namespace pertdef

#endif
