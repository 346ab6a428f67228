#pragma once

// Symplectizations M×ℝ of contact metric manifolds.
//
// The product chart carries the coordinates of M followed by t. With
// ω = ½·d(e^{2t}η) (core d), ξ_t = e^{−2t}ξ and η_t = e^{2t}η, the metric
// symplectization has
//   J = φ on slice directions, J^t_j = e^{2t}η_j, J^i_t = −e^{−2t}ξ^i,
//   ḡ(X,Y) = −ω(X,JY), i.e. ḡ(X,JY) = ω(X,Y),
// which makes ∂_t unit, orthogonal to the slices, Jξ_t = ∂_t and J∂_t = −ξ_t.

#include <span>

#include "metsymp/contact.hpp"

namespace metsymp {

inline constexpr Interval kDefaultTRange{-1.0, 1.0};

struct SymplecticMetricStructure {
  TensorField omega;
  TensorField g;
  TensorField J;

  const Chart& chart() const { return omega.chart(); }
};

struct MetricSymplectization : SymplecticMetricStructure {
  ContactMetricStructure base;
  Interval t_range;
  int t_index = 0;
  // Fields on the product chart.
  TensorField dt;     // ∂_t
  TensorField eta_t;  // e^{2t}η, no dt component
  TensorField xi_t;   // e^{−2t}ξ
  TensorField phi;    // φ, zero on ∂_t
};

MetricSymplectization build_metric_symplectization(const ContactMetricStructure& s, Interval t_range = kDefaultTRange);

// dω and the nondegeneracy coefficient of ω^n.
Report verify_symplectic(const TensorField& omega, const Samples& samples, Exec exec = Exec::parallel);
// J² = −I, ḡ(X,JY) = ω(X,Y), ḡ symmetric.
Report verify_compatible_triple(const SymplecticMetricStructure& b, const Samples& samples, Exec exec = Exec::parallel);
// ∂_t unit and slice-orthogonal, Jξ_t = ∂_t, J∂_t = −ξ_t, J = φ on Ker η_t,
// ḡ = g_t + dt², and the uniqueness witness for J∂_t.
Report verify_metric_symplectization(const MetricSymplectization& b, const Samples& samples, Exec exec = Exec::parallel);

Report verify_liouville(const TensorField& omega, const TensorField& y, const Samples& samples,
                        Exec exec = Exec::parallel);

struct SliceStructure {
  double t0 = 0.0;
  ContactMetricStructure structure;
};

// The structure induced on the slice t = t0, read off the restrictions of
// ω(∂_t,·), ḡ and J to the slice.
SliceStructure slice_structure(const MetricSymplectization& b, double t0);
// The embedding x ↦ (x, t0).
SmoothMap slice_embedding(const MetricSymplectization& b, double t0);

// (ι*(i_Yω), ι*ḡ, tangential part of J) for a unit Liouville field Y
// orthogonal to the hypersurface ι. Hypotheses are checked at `samples`
// (points of the source chart of ι).
ContactMetricStructure induced_contact_on_hypersurface(const SymplecticMetricStructure& b, const TensorField& y,
                                                       const SmoothMap& iota, const Samples& samples);

// J(X, f∂_t) = (φX − fξ, η(X)∂_t) on the product chart of `b`.
TensorField natural_acs(const MetricSymplectization& b);
// ω(J·,·) for an almost complex structure J.
TensorField acs_metric(const TensorField& omega, const TensorField& J);

// N^i_jk = N(∂_j, ∂_k)^i with N(X,Y) = [JX,JY] − J[JX,Y] − J[X,JY] − [X,Y].
TensorField nijenhuis(const TensorField& J);
Report nijenhuis_norm(const TensorField& J, const Samples& samples, double threshold = 1e-8,
                      Exec exec = Exec::parallel);

// Pullbacks of ω and ḡ of S's symplectization (t-range shifted by t′) under
// (x,t) ↦ (x,t+t′), compared with the symplectization of
// d_homothety(S, e^{2t′}) on `t_range`.
Report translation_isomorphism_check(const ContactMetricStructure& s, double t_shift, int samples,
                                     std::uint64_t seed, Interval t_range = kDefaultTRange,
                                     Exec exec = Exec::parallel);

}  // namespace metsymp
