#pragma once

// Small dense linear algebra over double or Jet entries. Pivoting decisions
// look at values only, so a Jet solve differentiates the double solve.

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "metsymp/errors.hpp"
#include "metsymp/jet.hpp"

namespace metsymp {

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

template <class S>
class SmallMatrix {
 public:
  SmallMatrix(int rows, int cols, const S& fill) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  Eigen::MatrixXd values() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = value_of((*this)(i, j));
    return m;
  }

 private:
  int rows_, cols_;
  std::vector<S> a_;
};

// 1-norm condition number, infinity when numerically singular.
inline double condition_estimate(const Eigen::MatrixXd& m) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) return INFINITY;
  const double n1 = m.cwiseAbs().colwise().sum().maxCoeff();
  const double ninv = lu.inverse().cwiseAbs().colwise().sum().maxCoeff();
  return n1 * ninv;
}

namespace detail {
constexpr double kSingularPivot = 1e-13;
}

// Solves A X = B for a square A; B holds `nrhs` right-hand sides column-wise.
template <class S>
SmallMatrix<S> solve(SmallMatrix<S> a, SmallMatrix<S> b) {
  const int n = a.rows();
  if (a.cols() != n || b.rows() != n) throw ShapeError("solve: dimension mismatch");
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(value_of(a(i, j))));
  const Eigen::MatrixXd original = a.values();
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(value_of(a(i, k))) > std::abs(value_of(a(piv, k)))) piv = i;
    if (!(std::abs(value_of(a(piv, k))) > detail::kSingularPivot * scale) || scale == 0.0) {
      const double cond = condition_estimate(original);
      throw SingularMatrixError("singular matrix (condition estimate " + std::to_string(cond) + ")", cond);
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      for (int j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv, j));
    }
    const S inv = 1.0 / a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const S f = a(i, k) * inv;
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (int j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    for (int j = 0; j < b.cols(); ++j) {
      S acc = b(k, j);
      for (int i = k + 1; i < n; ++i) acc -= a(k, i) * b(i, j);
      b(k, j) = acc / a(k, k);
    }
  }
  return b;
}

template <class S>
std::vector<S> solve(const SmallMatrix<S>& a, const std::vector<S>& rhs) {
  SmallMatrix<S> b(static_cast<int>(rhs.size()), 1, rhs.front());
  for (int i = 0; i < b.rows(); ++i) b(i, 0) = rhs[static_cast<std::size_t>(i)];
  SmallMatrix<S> x = solve(a, std::move(b));
  std::vector<S> out;
  out.reserve(rhs.size());
  for (int i = 0; i < x.rows(); ++i) out.push_back(x(i, 0));
  return out;
}

template <class S>
SmallMatrix<S> inverse(const SmallMatrix<S>& a, const S& zero, const S& one) {
  SmallMatrix<S> id(a.rows(), a.rows(), zero);
  for (int i = 0; i < a.rows(); ++i) id(i, i) = one;
  return solve(a, std::move(id));
}

}  // namespace metsymp
