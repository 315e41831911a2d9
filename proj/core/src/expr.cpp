#include "hopfwave/expr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "hopfwave/errors.hpp"

namespace hopfwave {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(Expr::Node n) { return std::make_shared<const Expr::Node>(std::move(n)); }

NodePtr make_const(double v) {
  Expr::Node n{Expr::Kind::constant};
  n.value = v;
  return make_node(std::move(n));
}

NodePtr make_binary(Expr::Kind k, NodePtr a, NodePtr b) {
  Expr::Node n{k};
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return make_node(std::move(n));
}

bool is_const(const NodePtr& n, double v) { return n->kind == Expr::Kind::constant && n->value == v; }
bool is_const(const NodePtr& n) { return n->kind == Expr::Kind::constant; }

double checked_div(double a, double b) {
  if (b == 0.0) throw DomainError("division by zero");
  return a / b;
}

double checked_pow(double base, int n) {
  if (n < 0 && base == 0.0) throw DomainError("zero raised to a negative power");
  double result = 1.0;
  double p = base;
  unsigned e = static_cast<unsigned>(n < 0 ? -static_cast<long>(n) : n);
  while (e != 0) {
    if (e & 1u) result *= p;
    p *= p;
    e >>= 1u;
  }
  return n < 0 ? 1.0 / result : result;
}

double apply_func(Func f, double a) {
  switch (f) {
    case Func::sin:
      return std::sin(a);
    case Func::cos:
      return std::cos(a);
    case Func::exp:
      return std::exp(a);
    case Func::sqrt:
      if (a < 0.0) throw DomainError("sqrt of negative argument");
      return std::sqrt(a);
    case Func::tanh:
      return std::tanh(a);
  }
  return 0.0;
}

const char* func_name(Func f) {
  switch (f) {
    case Func::sin:
      return "sin";
    case Func::cos:
      return "cos";
    case Func::exp:
      return "exp";
    case Func::sqrt:
      return "sqrt";
    case Func::tanh:
      return "tanh";
  }
  return "?";
}

double eval_node(const Expr::Node& n, const Bindings& b) {
  using K = Expr::Kind;
  switch (n.kind) {
    case K::constant:
      return n.value;
    case K::variable:
      return b[n.var];
    case K::neg:
      return -eval_node(*n.lhs, b);
    case K::add:
      return eval_node(*n.lhs, b) + eval_node(*n.rhs, b);
    case K::sub:
      return eval_node(*n.lhs, b) - eval_node(*n.rhs, b);
    case K::mul:
      return eval_node(*n.lhs, b) * eval_node(*n.rhs, b);
    case K::div:
      return checked_div(eval_node(*n.lhs, b), eval_node(*n.rhs, b));
    case K::pow:
      return checked_pow(eval_node(*n.lhs, b), n.exponent);
    case K::call:
      return apply_func(n.func, eval_node(*n.lhs, b));
  }
  return 0.0;
}

bool depends(const Expr::Node& n, Var v) {
  using K = Expr::Kind;
  switch (n.kind) {
    case K::constant:
      return false;
    case K::variable:
      return n.var == v;
    case K::neg:
    case K::pow:
    case K::call:
      return depends(*n.lhs, v);
    default:
      return depends(*n.lhs, v) || depends(*n.rhs, v);
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (v < 0.0) return "(" + s + ")";
  return s;
}

void print(const Expr::Node& n, std::string& out) {
  using K = Expr::Kind;
  switch (n.kind) {
    case K::constant:
      out += n.is_pi ? std::string("pi") : format_number(n.value);
      return;
    case K::variable:
      out += var_name(n.var);
      return;
    case K::neg:
      out += "(-";
      print(*n.lhs, out);
      out += ")";
      return;
    case K::pow:
      out += "(";
      print(*n.lhs, out);
      out += "^";
      out += n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent);
      out += ")";
      return;
    case K::call:
      out += func_name(n.func);
      out += "(";
      print(*n.lhs, out);
      out += ")";
      return;
    default: {
      const char* op = n.kind == K::add ? " + " : n.kind == K::sub ? " - " : n.kind == K::mul ? " * " : " / ";
      out += "(";
      print(*n.lhs, out);
      out += op;
      print(*n.rhs, out);
      out += ")";
    }
  }
}

std::size_t count(const Expr::Node& n) {
  std::size_t c = 1;
  if (n.lhs) c += count(*n.lhs);
  if (n.rhs) c += count(*n.rhs);
  return c;
}

}  // namespace

std::string_view var_name(Var v) {
  switch (v) {
    case Var::x:
      return "x";
    case Var::lambda:
      return "lambda";
    case Var::u1:
      return "u1";
    case Var::u2:
      return "u2";
    case Var::u3:
      return "u3";
    case Var::u4:
      return "u4";
  }
  return "?";
}

std::optional<Var> var_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kVarCount; ++i) {
    auto v = static_cast<Var>(i);
    if (var_name(v) == name) return v;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// construction

Expr::Expr() : node_(make_const(0.0)) {}

Expr Expr::constant(double value) { return Expr(make_const(value)); }

Expr Expr::pi() {
  Node n{Kind::constant};
  n.value = std::numbers::pi;
  n.is_pi = true;
  return Expr(make_node(std::move(n)));
}

Expr Expr::variable(Var v) {
  Node n{Kind::variable};
  n.var = v;
  return Expr(make_node(std::move(n)));
}

Expr Expr::call(Func f, Expr arg) {
  if (arg.is_constant() && f != Func::sqrt) return constant(apply_func(f, arg.constant_value()));
  if (arg.is_constant() && arg.constant_value() >= 0.0) return constant(std::sqrt(arg.constant_value()));
  Node n{Kind::call};
  n.func = f;
  n.lhs = arg.node_;
  return Expr(make_node(std::move(n)));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  if (base.is_constant() && (exponent > 0 || base.constant_value() != 0.0))
    return constant(checked_pow(base.constant_value(), exponent));
  Node n{Kind::pow};
  n.exponent = exponent;
  n.lhs = base.node_;
  return Expr(make_node(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
bool Expr::is_constant() const { return node_->kind == Kind::constant; }
double Expr::constant_value() const { return node_->value; }

Expr operator+(const Expr& a, const Expr& b) {
  const auto& l = a.node_ptr();
  const auto& r = b.node_ptr();
  if (is_const(l) && is_const(r)) return Expr::constant(l->value + r->value);
  if (is_const(l, 0.0)) return b;
  if (is_const(r, 0.0)) return a;
  return Expr(make_binary(Expr::Kind::add, l, r));
}

Expr operator-(const Expr& a, const Expr& b) {
  const auto& l = a.node_ptr();
  const auto& r = b.node_ptr();
  if (is_const(l) && is_const(r)) return Expr::constant(l->value - r->value);
  if (is_const(r, 0.0)) return a;
  if (is_const(l, 0.0)) return -b;
  return Expr(make_binary(Expr::Kind::sub, l, r));
}

Expr operator*(const Expr& a, const Expr& b) {
  const auto& l = a.node_ptr();
  const auto& r = b.node_ptr();
  if (is_const(l) && is_const(r)) return Expr::constant(l->value * r->value);
  if (is_const(l, 0.0) || is_const(r, 0.0)) return Expr::constant(0.0);
  if (is_const(l, 1.0)) return b;
  if (is_const(r, 1.0)) return a;
  if (is_const(l, -1.0)) return -b;
  if (is_const(r, -1.0)) return -a;
  return Expr(make_binary(Expr::Kind::mul, l, r));
}

Expr operator/(const Expr& a, const Expr& b) {
  const auto& l = a.node_ptr();
  const auto& r = b.node_ptr();
  // A constant zero divisor is kept so the error surfaces at evaluation time.
  if (is_const(l) && is_const(r) && r->value != 0.0) return Expr::constant(l->value / r->value);
  if (is_const(r, 1.0)) return a;
  return Expr(make_binary(Expr::Kind::div, l, r));
}

Expr operator-(const Expr& a) {
  const auto& n = a.node_ptr();
  if (is_const(n)) return Expr::constant(-n->value);
  if (n->kind == Expr::Kind::neg) return Expr(n->lhs);
  Expr::Node m{Expr::Kind::neg};
  m.lhs = n;
  return Expr(make_node(std::move(m)));
}

// ---------------------------------------------------------------------------
// evaluation, inspection

double Expr::eval(const Bindings& b) const {
  const double v = eval_node(*node_, b);
  if (!std::isfinite(v)) throw DomainError("expression evaluated to a non-finite value: " + to_string());
  return v;
}

bool Expr::depends_on(Var v) const { return depends(*node_, v); }

std::string Expr::to_string() const {
  std::string out;
  print(*node_, out);
  return out;
}

std::size_t Expr::size() const { return count(*node_); }

// ---------------------------------------------------------------------------
// differentiation

namespace {

Expr diff_once(const Expr& e, Var v) {
  using K = Expr::Kind;
  const auto& n = e.node();
  if (!depends(n, v)) return Expr::constant(0.0);
  switch (n.kind) {
    case K::constant:
      return Expr::constant(0.0);
    case K::variable:
      return Expr::constant(n.var == v ? 1.0 : 0.0);
    case K::neg:
      return -diff_once(Expr(n.lhs), v);
    case K::add:
      return diff_once(Expr(n.lhs), v) + diff_once(Expr(n.rhs), v);
    case K::sub:
      return diff_once(Expr(n.lhs), v) - diff_once(Expr(n.rhs), v);
    case K::mul: {
      Expr a(n.lhs), b(n.rhs);
      return diff_once(a, v) * b + a * diff_once(b, v);
    }
    case K::div: {
      Expr a(n.lhs), b(n.rhs);
      if (!b.depends_on(v)) return diff_once(a, v) / b;
      return (diff_once(a, v) * b - a * diff_once(b, v)) / Expr::power(b, 2);
    }
    case K::pow: {
      Expr a(n.lhs);
      return Expr::constant(n.exponent) * Expr::power(a, n.exponent - 1) * diff_once(a, v);
    }
    case K::call: {
      Expr a(n.lhs);
      Expr da = diff_once(a, v);
      switch (n.func) {
        case Func::sin:
          return Expr::call(Func::cos, a) * da;
        case Func::cos:
          return -(Expr::call(Func::sin, a) * da);
        case Func::exp:
          return e * da;
        case Func::sqrt:
          return da / (Expr::constant(2.0) * e);
        case Func::tanh:
          return (Expr::constant(1.0) - Expr::power(e, 2)) * da;
      }
    }
  }
  return Expr::constant(0.0);
}

}  // namespace

Expr Expr::diff(Var var, int order) const {
  if (order < 0) throw InvalidArgument("derivative order must be non-negative");
  Expr result = *this;
  for (int i = 0; i < order; ++i) result = diff_once(result, var);
  return result;
}

// ---------------------------------------------------------------------------
// compiled form

CompiledExpr Expr::compile() const {
  CompiledExpr c;
  struct Emitter {
    CompiledExpr& c;
    std::size_t depth = 0;
    void push(CompiledExpr::Instr in, int delta) {
      c.code_.push_back(in);
      depth = static_cast<std::size_t>(static_cast<long>(depth) + delta);
      c.max_depth_ = std::max(c.max_depth_, depth);
    }
    void run(const Node& n) {
      using Op = CompiledExpr::Op;
      switch (n.kind) {
        case Kind::constant:
          push({Op::push_const, 0, 0, n.value}, 1);
          return;
        case Kind::variable:
          push({Op::push_var, static_cast<std::uint8_t>(n.var), 0, 0.0}, 1);
          return;
        case Kind::neg:
          run(*n.lhs);
          push({Op::neg}, 0);
          return;
        case Kind::pow:
          run(*n.lhs);
          push({Op::pow, 0, n.exponent, 0.0}, 0);
          return;
        case Kind::call: {
          run(*n.lhs);
          static constexpr Op ops[] = {Op::sin, Op::cos, Op::exp, Op::sqrt, Op::tanh};
          push({ops[static_cast<int>(n.func)]}, 0);
          return;
        }
        case Kind::add:
        case Kind::sub:
        case Kind::mul:
        case Kind::div: {
          run(*n.lhs);
          run(*n.rhs);
          const Op op = n.kind == Kind::add   ? Op::add
                        : n.kind == Kind::sub ? Op::sub
                        : n.kind == Kind::mul ? Op::mul
                                              : Op::div;
          push({op}, -1);
          return;
        }
      }
    }
  } emitter{c};
  emitter.run(*node_);
  return c;
}

double CompiledExpr::eval(std::span<const double, kVarCount> vars) const {
  // Trees in this toolkit are small; a fixed stack avoids allocation per call.
  constexpr std::size_t kStack = 64;
  if (max_depth_ > kStack) throw DomainError("expression too deeply nested for compiled evaluation");
  double stack[kStack];
  std::size_t sp = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::push_const:
        stack[sp++] = in.value;
        break;
      case Op::push_var:
        stack[sp++] = vars[in.var];
        break;
      case Op::neg:
        stack[sp - 1] = -stack[sp - 1];
        break;
      case Op::add:
        --sp;
        stack[sp - 1] += stack[sp];
        break;
      case Op::sub:
        --sp;
        stack[sp - 1] -= stack[sp];
        break;
      case Op::mul:
        --sp;
        stack[sp - 1] *= stack[sp];
        break;
      case Op::div:
        --sp;
        stack[sp - 1] = checked_div(stack[sp - 1], stack[sp]);
        break;
      case Op::pow:
        stack[sp - 1] = checked_pow(stack[sp - 1], in.exponent);
        break;
      case Op::sin:
        stack[sp - 1] = std::sin(stack[sp - 1]);
        break;
      case Op::cos:
        stack[sp - 1] = std::cos(stack[sp - 1]);
        break;
      case Op::exp:
        stack[sp - 1] = std::exp(stack[sp - 1]);
        break;
      case Op::sqrt:
        stack[sp - 1] = apply_func(Func::sqrt, stack[sp - 1]);
        break;
      case Op::tanh:
        stack[sp - 1] = std::tanh(stack[sp - 1]);
        break;
    }
  }
  const double v = sp == 1 ? stack[0] : 0.0;
  if (!std::isfinite(v)) throw DomainError("expression evaluated to a non-finite value");
  return v;
}

}  // namespace hopfwave
