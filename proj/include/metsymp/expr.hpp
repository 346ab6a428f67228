#pragma once

// Immutable expression DAG over chart coordinates. Used for the component
// functions of built-in structures and for structures read from files.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "metsymp/jet.hpp"

namespace metsymp {

class Expr {
 public:
  enum class Op { constant, variable, neg, add, sub, mul, div, pow, exp, log, sin, cos, sqrt };

  Expr(double c);  // NOLINT(google-explicit-constructor): numeric literals are expressions
  static Expr var(int index);

  Op op() const;
  bool is_constant() const { return op() == Op::constant; }
  double constant_value() const;
  int var_index() const;

  double eval(std::span<const double> x) const;
  Jet eval(std::span<const Jet> x) const;

  std::string to_string(std::span<const std::string> names) const;

  struct Node;  // defined in expr.cpp

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& a, const Expr& b);
  friend Expr exp(const Expr& a);
  friend Expr log(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr sqrt(const Expr& a);

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(Op op, const Expr& a);
  static Expr make(Op op, const Expr& a, const Expr& b);

  std::shared_ptr<const Node> node_;
};

}  // namespace metsymp
