#include "torusq/expr.hpp"

#include "torusq/error.hpp"

#include <algorithm>

namespace torusq {

struct Expr::Node {
  Op op = Op::Const;
  std::complex<double> value;
  std::size_t index = 0;
  unsigned exponent = 0;
  std::vector<Expr> children;
};

namespace {

std::shared_ptr<Expr::Node> node(Expr::Op op) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  return n;
}

}  // namespace

Expr::Expr() : node_(node(Op::Const)) {}

Expr Expr::constant(std::complex<double> c) {
  auto n = node(Op::Const);
  n->value = c;
  return Expr(n);
}

Expr Expr::s(std::size_t i) {
  auto n = node(Op::VarS);
  n->index = i;
  return Expr(n);
}

Expr Expr::x(std::size_t i) {
  auto n = node(Op::VarX);
  n->index = i;
  return Expr(n);
}

Expr Expr::add(std::vector<Expr> terms) {
  auto n = node(Op::Add);
  n->children = std::move(terms);
  return Expr(n);
}

Expr Expr::mul(std::vector<Expr> factors) {
  auto n = node(Op::Mul);
  n->children = std::move(factors);
  return Expr(n);
}

Expr Expr::sub(Expr a, Expr b) {
  auto n = node(Op::Sub);
  n->children = {std::move(a), std::move(b)};
  return Expr(n);
}

Expr Expr::neg(Expr a) {
  auto n = node(Op::Neg);
  n->children = {std::move(a)};
  return Expr(n);
}

Expr Expr::pow(Expr a, unsigned exponent) {
  auto n = node(Op::Pow);
  n->exponent = exponent;
  n->children = {std::move(a)};
  return Expr(n);
}

Expr Expr::exp(Expr a) {
  auto n = node(Op::Exp);
  n->children = {std::move(a)};
  return Expr(n);
}

Expr::Op Expr::op() const { return node_->op; }
std::complex<double> Expr::value() const { return node_->value; }
std::size_t Expr::index() const { return node_->index; }
unsigned Expr::exponent() const { return node_->exponent; }
const std::vector<Expr>& Expr::children() const { return node_->children; }

std::complex<double> Expr::eval(std::span<const double> s, std::span<const double> x) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::VarS:
      if (n.index >= s.size()) throw Error("s index out of range");
      return s[n.index];
    case Op::VarX:
      if (n.index >= x.size()) throw Error("x index out of range");
      return x[n.index];
    case Op::Add: {
      std::complex<double> acc = 0;
      for (const auto& c : n.children) acc += c.eval(s, x);
      return acc;
    }
    case Op::Mul: {
      std::complex<double> acc = 1;
      for (const auto& c : n.children) acc *= c.eval(s, x);
      return acc;
    }
    case Op::Sub: return n.children[0].eval(s, x) - n.children[1].eval(s, x);
    case Op::Neg: return -n.children[0].eval(s, x);
    case Op::Pow: {
      const std::complex<double> base = n.children[0].eval(s, x);
      std::complex<double> acc = 1;
      for (unsigned i = 0; i < n.exponent; ++i) acc *= base;
      return acc;
    }
    case Op::Exp: return std::exp(n.children[0].eval(s, x));
  }
  return 0;
}

std::size_t Expr::s_arity() const {
  if (op() == Op::VarS) return index() + 1;
  std::size_t out = 0;
  for (const auto& c : children()) out = std::max(out, c.s_arity());
  return out;
}

std::size_t Expr::x_arity() const {
  if (op() == Op::VarX) return index() + 1;
  std::size_t out = 0;
  for (const auto& c : children()) out = std::max(out, c.x_arity());
  return out;
}

Expr operator+(Expr a, Expr b) { return Expr::add({std::move(a), std::move(b)}); }
Expr operator-(Expr a, Expr b) { return Expr::sub(std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::mul({std::move(a), std::move(b)}); }

}  // namespace torusq
