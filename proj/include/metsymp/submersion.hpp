#pragma once

// The Riemannian submersion π₂: (M×ℝ, ḡ) → (ℝ, dt²) of a metric
// symplectization: vertical = slice directions, horizontal = ∂_t.
//
// O'Neill tensors are (1,2) fields with T_{E₁}E₂ = T^k_ij E₁^i E₂^j ∂_k.
// Curvature identities use ḡ(R̄(V₁,V₂)V₃,V₄) for the 4-tuple (V₁,V₂,V₃,V₄).

#include <optional>
#include <span>
#include <utility>

#include "metsymp/symplectization.hpp"

namespace metsymp {

// Horizontal and vertical projections as (1,1) fields.
TensorField horizontal_projection(const MetricSymplectization& b);
TensorField vertical_projection(const MetricSymplectization& b);

// (horizontal part, vertical part) of a vector at p.
std::pair<Vec, Vec> split(const MetricSymplectization& b, const Vec& v, std::span<const double> p);

TensorField oneill_T(const MetricSymplectization& b);
TensorField oneill_A(const MetricSymplectization& b);
Vec oneill_T(const MetricSymplectization& b, const Vec& e1, const Vec& e2, std::span<const double> p);
Vec oneill_A(const MetricSymplectization& b, const Vec& e1, const Vec& e2, std::span<const double> p);

struct SubmersionFrame {
  Point point;
  std::vector<Vec> vertical;  // ḡ-orthonormal basis of the slice directions, ξ_t first
  Vec horizontal;             // unit horizontal vector
};

SubmersionFrame submersion_frame(const MetricSymplectization& b, std::span<const double> p);

// T on vertical pairs and on (vertical, ∂_t), T_X = 0 for horizontal X, and A ≡ 0.
Report verify_lemma_T(const MetricSymplectization& b, const Samples& samples, Exec exec = Exec::parallel);
// The four curvature identities of a submersion with one-dimensional base
// and integrable horizontal distribution.
Report verify_oneill_curvature(const MetricSymplectization& b, const Samples& samples, Exec exec = Exec::parallel);
// The four relations between R̄ and the slice curvature R^t.
Report verify_currel(const MetricSymplectization& b, const Samples& samples, Exec exec = Exec::parallel);
// Ricci table in the frame {ξ_t, ∂_t, e_1, …, e_2n}. The e_i e_j row is
// checked with the commonly stated coefficient −(2n+4) and with −(2n+2).
Report verify_ricci_relations(const MetricSymplectization& b, const Samples& samples, Exec exec = Exec::parallel);

struct SymplectizationKmu {
  double t = 0.0;
  double kappa_tilde = 0.0;
  std::optional<double> mu_tilde;
  double residual = 0.0;
  KmuReport slice;  // fit of the slice structure at t
};

// Fits 𝒱(R̄(X,Y)ξ_t) = (κ̃I + μ̃h_t)(η_t(Y)X − η_t(X)Y) at the points (x, t),
// x ∈ samples (points of M), with h_t the h tensor of the slice.
SymplectizationKmu fit_symplectization_kmu(const MetricSymplectization& b, double t, const Samples& samples,
                                           Exec exec = Exec::parallel);

// Ric̄ + (2n+4)dt² and the η_t-Einstein residuals of a few slices.
Report verify_ricci_negative(const MetricSymplectization& b, const Samples& samples, Exec exec = Exec::parallel);

}  // namespace metsymp
