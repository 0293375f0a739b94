// Small complex-valued expression trees over the quotient coordinates
// (s, x). No division, so every expression is smooth everywhere.
#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace torusq {

class Expr {
 public:
  enum class Op { Const, VarS, VarX, Add, Sub, Mul, Neg, Pow, Exp };

  Expr();  // the constant 0

  static Expr constant(std::complex<double> c);
  static Expr s(std::size_t i);
  static Expr x(std::size_t i);
  static Expr add(std::vector<Expr> terms);
  static Expr mul(std::vector<Expr> factors);
  static Expr sub(Expr a, Expr b);
  static Expr neg(Expr a);
  static Expr pow(Expr a, unsigned exponent);
  static Expr exp(Expr a);

  Op op() const;
  std::complex<double> value() const;  // Const
  std::size_t index() const;           // VarS, VarX
  unsigned exponent() const;           // Pow
  const std::vector<Expr>& children() const;

  std::complex<double> eval(std::span<const double> s, std::span<const double> x) const;

  // Largest variable index used plus one, per kind.
  std::size_t s_arity() const;
  std::size_t x_arity() const;

  struct Node;  // implementation detail

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);

}  // namespace torusq
