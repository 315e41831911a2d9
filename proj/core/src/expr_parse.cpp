// Recursive-descent parser for the coefficient expression grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?        exponent must fold to an integer
//   primary := number | 'pi' | variable | func '(' expr ')' | '(' expr ')'

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "hopfwave/errors.hpp"
#include "hopfwave/expr.hpp"

namespace hopfwave {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("operator or end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(pos_, expected, std::string(text_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = lhs + parse_term();
      else if (accept('-'))
        lhs = lhs - parse_term();
      else
        return lhs;
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = lhs * parse_unary();
      else if (accept('/'))
        lhs = lhs / parse_unary();
      else
        return lhs;
    }
  }

  Expr parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    skip_ws();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    Expr exponent = parse_unary();
    if (!exponent.is_constant()) {
      pos_ = at + 1;
      fail("integer constant exponent");
    }
    const double n = exponent.constant_value();
    if (n != std::nearbyint(n) || std::abs(n) > 64.0) {
      pos_ = at + 1;
      fail("integer constant exponent");
    }
    return Expr::power(base, static_cast<int>(n));
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("number, identifier or '('");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail("number, identifier or '('");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      pos_ = start;
      fail("number");
    }
    return Expr::constant(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    static constexpr std::pair<std::string_view, Func> funcs[] = {
        {"sin", Func::sin}, {"cos", Func::cos}, {"exp", Func::exp}, {"sqrt", Func::sqrt}, {"tanh", Func::tanh}};
    for (const auto& [fname, f] : funcs) {
      if (name == fname) {
        expect('(');
        Expr arg = parse_expr();
        expect(')');
        return Expr::call(f, arg);
      }
    }
    if (name == "pi") return Expr::pi();
    if (auto v = var_from_name(name)) return Expr::variable(*v);
    throw UnknownIdentifier(start, std::string(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace hopfwave
