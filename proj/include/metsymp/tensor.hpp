#pragma once

// Tensor fields on a chart and the exterior-calculus toolkit.
//
// Components are dense with a flat row-major index: contravariant slots come
// first, then covariant ones. A field is a kernel returning the Taylor jets of
// all components at a point up to a requested order; derived fields ask their
// inputs for one more order whenever they differentiate.
//
// Conventions: (dα)_{i0..ik} = Σ_j (-1)^j ∂_{ij} α_{i0..îj..ik} (no 1/(k+1)),
// α∧β = (k+l)!/(k! l!) Alt(α⊗β), i_X contracts the first slot. With these,
// dx∧dy(∂x,∂y) = 1 and Cartan's formula holds without extra factors.

#include <array>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "metsymp/chart.hpp"
#include "metsymp/expr.hpp"
#include "metsymp/jet.hpp"

namespace metsymp {

enum class Symmetry { none, symmetric, antisymmetric };

struct TensorType {
  int contra = 0;
  int co = 0;
  int rank() const { return contra + co; }
  bool operator==(const TensorType&) const = default;
};

inline constexpr int kMaxRank = 8;
using MultiIndex = std::array<int, kMaxRank>;

std::size_t ipow(int base, int exp);

template <class S>
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(int dim, TensorType type, const S& fill)
      : dim_(dim), type_(type), c_(ipow(dim, type.rank()), fill) {}

  int dim() const { return dim_; }
  TensorType type() const { return type_; }
  int rank() const { return type_.rank(); }
  std::size_t size() const { return c_.size(); }

  S& operator[](std::size_t i) { return c_[i]; }
  const S& operator[](std::size_t i) const { return c_[i]; }
  S& at(std::initializer_list<int> idx) { return c_[flat(idx)]; }
  const S& at(std::initializer_list<int> idx) const { return c_[flat(idx)]; }

  std::vector<S>& data() { return c_; }
  const std::vector<S>& data() const { return c_; }

  std::size_t flat(std::span<const int> idx) const {
    std::size_t f = 0;
    for (int i : idx) f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return f;
  }
  std::size_t flat(std::initializer_list<int> idx) const {
    return flat(std::span<const int>(idx.begin(), idx.size()));
  }
  MultiIndex digits(std::size_t f) const {
    MultiIndex d{};
    for (int s = rank() - 1; s >= 0; --s) {
      d[static_cast<std::size_t>(s)] = static_cast<int>(f % static_cast<std::size_t>(dim_));
      f /= static_cast<std::size_t>(dim_);
    }
    return d;
  }

 private:
  int dim_ = 0;
  TensorType type_{};
  std::vector<S> c_;
};

using TensorValue = DenseTensor<double>;
using TensorJets = DenseTensor<Jet>;

TensorValue values(const TensorJets& t);
TensorJets truncated(const TensorJets& t, int order);

// Jets of the coordinate functions around p.
std::vector<Jet> coordinate_jets(std::span<const double> p, int order);

class TensorField {
 public:
  using Kernel = std::function<TensorJets(std::span<const double> p, int order)>;

  TensorField(const Chart& chart, TensorType type, Symmetry symmetry, Kernel kernel);

  static TensorField from_exprs(const Chart& chart, TensorType type, Symmetry symmetry, std::vector<Expr> comps);
  static TensorField scalar(const Chart& chart, Expr f);
  static TensorField coordinate_vector(const Chart& chart, int i);
  static TensorField coordinate_form(const Chart& chart, int i);
  static TensorField zero(const Chart& chart, TensorType type, Symmetry symmetry = Symmetry::none);
  static TensorField identity(const Chart& chart);
  // A field with constant components.
  static TensorField constant(const Chart& chart, const TensorValue& value, Symmetry symmetry = Symmetry::none);

  const Chart& chart() const { return *chart_; }
  std::shared_ptr<const Chart> chart_ptr() const { return chart_; }
  TensorType type() const { return type_; }
  Symmetry symmetry() const { return symmetry_; }
  int dim() const { return chart_->dim(); }

  // Component jets of the requested order; throws DomainError outside the chart.
  TensorJets jets(std::span<const double> p, int order) const;
  TensorValue value(std::span<const double> p) const { return values(jets(p, 0)); }
  double component(std::span<const double> p, std::initializer_list<int> idx) const;

  // The field with its declared symmetry replaced (components are re-canonicalized).
  TensorField with_symmetry(Symmetry s) const;

 private:
  std::shared_ptr<const Chart> chart_;
  TensorType type_;
  Symmetry symmetry_;
  std::shared_ptr<const Kernel> kernel_;
};

// Maps between charts, given by coordinate expressions of the target
// coordinates in terms of source coordinates.
class SmoothMap {
 public:
  using Kernel = std::function<std::vector<Jet>(std::span<const double> p, int order)>;

  SmoothMap(const Chart& source, const Chart& target, Kernel kernel);
  static SmoothMap from_exprs(const Chart& source, const Chart& target, std::vector<Expr> coords);
  static SmoothMap identity(const Chart& chart);

  const Chart& source() const { return *source_; }
  const Chart& target() const { return *target_; }

  std::vector<Jet> jets(std::span<const double> p, int order) const;
  Point apply(std::span<const double> p) const;

 private:
  std::shared_ptr<const Chart> source_;
  std::shared_ptr<const Chart> target_;
  std::shared_ptr<const Kernel> kernel_;
};

// G ∘ F.
SmoothMap compose(const SmoothMap& g, const SmoothMap& f);

// Components of T at F(p), expanded in the source coordinates around p.
TensorJets field_along(const TensorField& t, const SmoothMap& f, std::span<const double> p, int order);

Jet2 jet_eval(const TensorField& f, std::span<const double> p);

TensorField operator+(const TensorField& a, const TensorField& b);
TensorField operator-(const TensorField& a, const TensorField& b);
TensorField operator*(double s, const TensorField& a);
// Pointwise product with a scalar field.
TensorField operator*(const TensorField& f, const TensorField& a);
TensorField tensor_product(const TensorField& a, const TensorField& b);
// Contracts contravariant slot `up` with covariant slot `down` (slot numbers
// counted within each group).
TensorField contract(const TensorField& t, int up, int down);
// (A X)^i = A^i_j X^j for a (1,1) field A and a vector field X.
TensorField apply(const TensorField& a, const TensorField& x);
// (A B)^i_k = A^i_j B^j_k.
TensorField compose11(const TensorField& a, const TensorField& b);

TensorField exterior_derivative(const TensorField& alpha);
TensorField wedge(const TensorField& alpha, const TensorField& beta);
TensorField interior_product(const TensorField& x, const TensorField& alpha);
TensorField lie_bracket(const TensorField& x, const TensorField& y);
TensorField lie_derivative(const TensorField& x, const TensorField& t);
TensorField pullback(const SmoothMap& f, const TensorField& t);

TensorField inverse_metric(const TensorField& g);
// Lowering turns contravariant slot `slot` into the first covariant slot;
// raising turns covariant slot `slot` into the first contravariant slot.
TensorField lower(const TensorField& g, const TensorField& t, int slot);
TensorField raise(const TensorField& g, const TensorField& t, int slot);

// Solves A(p) x = b(p) where A is any rank-2 field read as a matrix
// (first slot = row) and b a vector field.
std::vector<double> pointwise_solve(const TensorField& a, const TensorField& b, std::span<const double> p);

// Fields on M extended to M×ℝ (the extra coordinate last), with zero
// components along the new direction and no dependence on it.
TensorField lift_to_product(const TensorField& t, const Chart& product);

}  // namespace metsymp
