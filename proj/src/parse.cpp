#include "foliage/parse.hpp"

#include <cctype>
#include <optional>

namespace foliage {

ExpressionError::ExpressionError(const std::string& message, std::size_t column)
    : std::runtime_error(message + " (column " + std::to_string(column) + ")"),
      column_(column) {}

Rational parse_decimal(std::string_view literal) {
  std::size_t i = 0;
  std::string digits;
  long exponent = 0;
  while (i < literal.size() && std::isdigit(static_cast<unsigned char>(literal[i]))) {
    digits += literal[i++];
  }
  if (i < literal.size() && literal[i] == '.') {
    ++i;
    while (i < literal.size() && std::isdigit(static_cast<unsigned char>(literal[i]))) {
      digits += literal[i++];
      --exponent;
    }
  }
  if (digits.empty()) throw ExpressionError("malformed number '" + std::string(literal) + "'", 1);
  if (i < literal.size() && (literal[i] == 'e' || literal[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < literal.size() && (literal[i] == '+' || literal[i] == '-')) neg = literal[i++] == '-';
    std::string ex;
    while (i < literal.size() && std::isdigit(static_cast<unsigned char>(literal[i]))) {
      ex += literal[i++];
    }
    if (ex.empty() || ex.size() > 6) {
      throw ExpressionError("malformed exponent in '" + std::string(literal) + "'", 1);
    }
    exponent += neg ? -std::stol(ex) : std::stol(ex);
  }
  if (i != literal.size()) {
    throw ExpressionError("malformed number '" + std::string(literal) + "'", i + 1);
  }
  mpz_class numerator(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational value = exponent < 0 ? Rational(numerator, scale) : Rational(numerator * scale);
  value.canonicalize();
  return value;
}

namespace {

// A parsed sub-expression is either a scalar polynomial or a vector field.
struct Value {
  Polynomial scalar;
  std::optional<VectorField> field;

  bool is_field() const { return field.has_value(); }
};

class Parser {
 public:
  Parser(std::string_view text, const VariableNames& names)
      : text_(text), names_(names), n_(names.dimension()) {}

  Value parse() {
    Value v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ExpressionError(what, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value add(Value a, const Value& b, bool subtract) {
    if (a.is_field() != b.is_field()) {
      // 0 is the only scalar that may be combined with a field.
      const Value& scalar_side = a.is_field() ? b : a;
      if (!scalar_side.scalar.is_zero()) fail("cannot add a scalar to a vector field");
      if (!a.is_field()) a.field = VectorField(n_);
    }
    if (a.is_field()) {
      if (b.is_field()) {
        if (subtract) *a.field -= *b.field; else *a.field += *b.field;
      }
    } else {
      if (subtract) a.scalar -= b.scalar; else a.scalar += b.scalar;
    }
    return a;
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+')) {
        v = add(std::move(v), term(), false);
      } else if (accept('-')) {
        v = add(std::move(v), term(), true);
      } else {
        return v;
      }
    }
  }

  Value multiply(Value a, const Value& b) {
    if (a.is_field() && b.is_field()) fail("product of two vector fields");
    if (a.is_field()) {
      a.field = b.scalar * *a.field;
      return a;
    }
    if (b.is_field()) return Value{Polynomial(n_), a.scalar * *b.field};
    a.scalar = a.scalar * b.scalar;
    return a;
  }

  Value term() {
    Value v = factor();
    for (;;) {
      if (accept('*')) {
        v = multiply(std::move(v), factor());
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Value d = factor();
        if (d.is_field() || d.scalar.degree() > 0 || d.scalar.is_zero()) {
          pos_ = at;
          fail("divisor must be a nonzero constant");
        }
        const Rational inv = 1 / d.scalar.coefficient(Exponent(n_, 0));
        if (v.is_field()) {
          v.field = inv * *v.field;
        } else {
          v.scalar *= inv;
        }
      } else {
        return v;
      }
    }
  }

  Value factor() {
    if (accept('-')) {
      Value v = factor();
      if (v.is_field()) v.field = -*v.field; else v.scalar = -v.scalar;
      return v;
    }
    if (accept('+')) return factor();
    Value base = primary();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer");
      if (pos_ - start > 4) fail("exponent too large");
      const unsigned k = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      if (base.is_field()) fail("cannot raise a vector field to a power");
      base.scalar = base.scalar.pow(k);
    }
    return base;
  }

  Value primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
        if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
          pos_ = look;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
      }
      try {
        return Value{Polynomial::constant(n_, parse_decimal(text_.substr(start, pos_ - start))), {}};
      } catch (const ExpressionError&) {
        pos_ = start;
        fail("malformed number");
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string ident(text_.substr(start, pos_ - start));
      if (std::size_t k = names_.index_of(ident); k < n_) {
        return Value{Polynomial::variable(n_, k), {}};
      }
      if (ident.size() > 1 && ident[0] == 'd') {
        if (std::size_t k = names_.index_of(ident.substr(1)); k < n_) {
          return Value{Polynomial(n_), VectorField::coordinate(n_, k)};
        }
      }
      pos_ = start;
      fail("unknown symbol '" + ident + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const VariableNames& names_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VariableNames& names) {
  Value v = Parser(text, names).parse();
  if (v.is_field()) throw ExpressionError("expected a polynomial, found a vector field", 1);
  return v.scalar;
}

VectorField parse_vector_field(std::string_view text, const VariableNames& names) {
  Value v = Parser(text, names).parse();
  if (!v.is_field()) {
    if (v.scalar.is_zero()) return VectorField(names.dimension());
    throw ExpressionError("expected a vector field (terms need a basis symbol such as dx)", 1);
  }
  return *v.field;
}

}  // namespace foliage
