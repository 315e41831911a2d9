#pragma once

// Coefficient expression language.
//
// Expressions are immutable trees over the variables x, lambda, u1..u4 with
// the named constant pi, the functions sin, cos, exp, sqrt, tanh and the
// operators + - * / and ^ (integer exponent only).  Derivatives of any order
// are produced by symbolic rewriting, so Taylor coefficients of the
// nonlinearity are exact up to floating point evaluation.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hopfwave {

enum class Var : std::uint8_t { x = 0, lambda = 1, u1 = 2, u2 = 3, u3 = 4, u4 = 5 };

inline constexpr std::size_t kVarCount = 6;

/// u1..u4 in order, index j -> u_{j+1}.
inline constexpr std::array<Var, 4> kStateVars = {Var::u1, Var::u2, Var::u3, Var::u4};

std::string_view var_name(Var v);
std::optional<Var> var_from_name(std::string_view name);

/// Values of all variables; unbound variables default to zero.
struct Bindings {
  std::array<double, kVarCount> values{};

  Bindings() = default;
  Bindings(double x, double lambda, double u1 = 0.0, double u2 = 0.0, double u3 = 0.0,
           double u4 = 0.0)
      : values{x, lambda, u1, u2, u3, u4} {}

  double& operator[](Var v) { return values[static_cast<std::size_t>(v)]; }
  double operator[](Var v) const { return values[static_cast<std::size_t>(v)]; }
};

enum class Func : std::uint8_t { sin, cos, exp, sqrt, tanh };

class CompiledExpr;

class Expr {
 public:
  enum class Kind : std::uint8_t { constant, variable, neg, add, sub, mul, div, pow, call };

  struct Node;

  /// The zero constant.
  Expr();

  static Expr constant(double value);
  static Expr pi();
  static Expr variable(Var v);
  static Expr call(Func f, Expr arg);
  static Expr power(Expr base, int exponent);

  Kind kind() const;
  bool is_constant() const;
  /// Value of a constant node; only valid when is_constant().
  double constant_value() const;

  double eval(const Bindings& b) const;
  double operator()(const Bindings& b) const { return eval(b); }

  /// d^order/d var^order, simplified by constant folding only.
  Expr diff(Var var, int order = 1) const;

  bool depends_on(Var v) const;
  std::string to_string() const;
  CompiledExpr compile() const;

  /// Number of nodes in the tree (shared subtrees counted once per use).
  std::size_t size() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  const Node& node() const { return *node_; }
  const std::shared_ptr<const Node>& node_ptr() const { return node_; }
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

 private:
  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  Kind kind;
  double value = 0.0;  // constant
  bool is_pi = false;  // constant printed as "pi"
  Var var = Var::x;    // variable
  Func func = Func::sin;
  int exponent = 0;  // pow
  std::shared_ptr<const Node> lhs;  // unary operand / left operand
  std::shared_ptr<const Node> rhs;
};

/// Parses `text`; throws SyntaxError or UnknownIdentifier.
Expr parse(std::string_view text);

/// Flat postfix form of an expression for repeated evaluation in hot loops.
class CompiledExpr {
 public:
  CompiledExpr() = default;

  double eval(const Bindings& b) const { return eval(std::span<const double, kVarCount>(b.values)); }
  double eval(std::span<const double, kVarCount> vars) const;

  std::size_t program_size() const { return code_.size(); }

 private:
  friend class Expr;
  enum class Op : std::uint8_t { push_const, push_var, neg, add, sub, mul, div, pow, sin, cos, exp, sqrt, tanh };
  struct Instr {
    Op op;
    std::uint8_t var = 0;
    int exponent = 0;
    double value = 0.0;
  };
  std::vector<Instr> code_;
  std::size_t max_depth_ = 0;
};

}  // namespace hopfwave
