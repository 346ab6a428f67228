#pragma once

// Truncated multivariate Taylor arithmetic.
//
// A Jet stores the Taylor coefficients c_a = (d^a f)(p) / a! of a scalar
// function around a base point p, for every multi-index a with |a| <= order.
// Arithmetic on Jets is exact truncated polynomial arithmetic, so derivatives
// propagate through expressions without finite differencing. Monomials are
// kept in graded order, which makes the order-k layout a prefix of the
// order-(k+1) layout: truncation is a resize.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace metsymp {

inline constexpr int kMaxVars = 8;
inline constexpr int kMaxOrder = 4;

class JetLayout {
 public:
  using Exponents = std::array<std::uint8_t, kMaxVars>;

  struct MulTerm {
    std::uint16_t a, b, c;
  };
  struct DerivTerm {
    std::uint16_t src, dst;
    double factor;
  };

  // Layouts for every (vars, order) are built once and live for the process.
  static const JetLayout& get(int vars, int order);

  int vars() const { return vars_; }
  int order() const { return order_; }
  std::size_t size() const { return exps_.size(); }
  const Exponents& exponents(std::size_t i) const { return exps_[i]; }
  int degree(std::size_t i) const { return degree_[i]; }

  // Index of a monomial, or -1 when its degree exceeds order().
  int index_of(const Exponents& e) const;
  int index_of_var(int v) const { return 1 + v; }
  int index_of_pair(int i, int j) const;

  const std::vector<MulTerm>& mul_table() const { return mul_; }
  // Terms mapping this layout onto layout(vars, order - 1) for d/dx_v.
  const std::vector<DerivTerm>& deriv_table(int v) const { return deriv_[v]; }

 private:
  JetLayout(int vars, int order);
  friend struct JetLayoutTable;

  int vars_;
  int order_;
  std::vector<Exponents> exps_;
  std::vector<int> degree_;
  std::vector<MulTerm> mul_;
  std::vector<std::vector<DerivTerm>> deriv_;
  std::vector<int> pair_index_;
  std::vector<std::uint64_t> keys_;  // sorted monomial keys
  std::vector<int> key_index_;
};

class Jet {
 public:
  using Storage = boost::container::small_vector<double, 35>;

  Jet() : layout_(&JetLayout::get(1, 0)), c_(1, 0.0) {}
  Jet(const JetLayout& layout, double value);

  static Jet constant(int vars, int order, double value) {
    return Jet(JetLayout::get(vars, order), value);
  }
  // The coordinate function x_v expanded around base value `at`.
  static Jet variable(int vars, int order, int v, double at);

  const JetLayout& layout() const { return *layout_; }
  int vars() const { return layout_->vars(); }
  int order() const { return layout_->order(); }
  std::size_t size() const { return c_.size(); }

  double value() const { return c_[0]; }
  double coeff(std::size_t i) const { return c_[i]; }
  double& coeff(std::size_t i) { return c_[i]; }
  std::span<const double> coeffs() const { return {c_.data(), c_.size()}; }

  // First and second partial derivatives at the base point.
  double d(int v) const;
  double d2(int i, int j) const;

  // Exact partial derivative; the result has order() - 1.
  Jet partial(int v) const;
  Jet truncated(int order) const;
  Jet with_value(double v) const {
    Jet r = *this;
    r.c_[0] = v;
    return r;
  }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(double s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(double s);
  Jet& operator/=(double s) { return *this *= (1.0 / s); }

  friend Jet operator-(const Jet& a);
  friend Jet operator*(const Jet& a, const Jet& b);

  // f(a + v) = sum_k taylor[k] * v^k where v is the non-constant part.
  Jet apply_series(std::span<const double> taylor) const;

 private:
  Jet(const JetLayout* layout, Storage c) : layout_(layout), c_(std::move(c)) {}
  void match_order(const Jet& o);

  const JetLayout* layout_;
  Storage c_;

  friend Jet compose(const Jet& outer, std::span<const Jet> inner);
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, double s) { return a += s; }
inline Jet operator+(double s, Jet a) { return a += s; }
inline Jet operator-(Jet a, double s) { return a -= s; }
inline Jet operator-(double s, const Jet& a) { return -a + s; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
inline Jet operator/(Jet a, double s) { return a /= s; }
Jet operator/(double s, const Jet& a);

Jet recip(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, double r);
Jet pow(const Jet& a, int n);

// Substitutes y_k - y_k(0) = inner[k] - inner[k](0) into `outer`, a Taylor
// expansion in outer.vars() variables. Every inner jet shares one layout; the
// result is truncated to min(outer.order(), inner order).
Jet compose(const Jet& outer, std::span<const Jet> inner);

// Re-expresses a jet in `vars` >= j.vars() variables; variable v of `j`
// becomes variable var_map[v] of the result.
Jet embed(const Jet& j, int vars, std::span<const int> var_map);

// Value, gradient and Hessian of a scalar at a point.
struct Jet2 {
  double value = 0.0;
  std::vector<double> grad;
  std::vector<double> hess;  // row-major dim x dim
  int dim = 0;

  double h(int i, int j) const { return hess[static_cast<std::size_t>(i * dim + j)]; }
  static Jet2 from(const Jet& j);
};

}  // namespace metsymp
