#ifndef FOLIAGE_PARSE_HPP
#define FOLIAGE_PARSE_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "foliage/polynomial.hpp"
#include "foliage/vector_field.hpp"

namespace foliage {

/// Syntax error inside a polynomial or vector-field expression. `column` is
/// 1-based within the expression text.
class ExpressionError : public std::runtime_error {
 public:
  ExpressionError(const std::string& message, std::size_t column);
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Exact value of a decimal literal such as "0.25", "3" or "1.5e-3".
Rational parse_decimal(std::string_view literal);

// Grammar (whitespace ignored):
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*     divisor must be a constant
//   factor  := ('+' | '-') factor | primary ('^' integer)?
//   primary := number | variable | basis | '(' expr ')'
// Variables are x1..xn, x/y/z when n <= 3, or the supplied aliases; a basis
// symbol is 'd' followed by a variable name and denotes d/dx.

Polynomial parse_polynomial(std::string_view text, const VariableNames& names);

/// Every term must carry exactly one basis symbol, e.g. "x*dy - y*dx",
/// "(x + y)^2*dx" or "1/2*x^2*dx". The literal "0" is the zero field.
VectorField parse_vector_field(std::string_view text, const VariableNames& names);

}  // namespace foliage

#endif  // FOLIAGE_PARSE_HPP
