#pragma once

// Contact metric structures (η, g, φ) and the (κ,μ) toolbox.
//
// The contact layer uses Φ := ½·dη (core exterior derivative), so the
// compatibility condition reads Φ(X,Y) = g(X,φY) and the Heisenberg model
// is Sasakian with κ = 1.

#include <optional>
#include <span>
#include <vector>

#include "metsymp/curvature.hpp"
#include "metsymp/parallel.hpp"
#include "metsymp/report.hpp"
#include "metsymp/tensor.hpp"

namespace metsymp {

// Threshold below which ‖h‖ counts as zero.
inline constexpr double kHVanish = 1e-8;

class ContactMetricStructure {
 public:
  ContactMetricStructure(TensorField eta, TensorField g, TensorField phi);

  const Chart& chart() const { return eta_.chart(); }
  int dim() const { return eta_.dim(); }
  int n() const { return (dim() - 1) / 2; }

  const TensorField& eta() const { return eta_; }
  const TensorField& g() const { return g_; }
  const TensorField& phi() const { return phi_; }
  // Derived: Reeb field, Φ = ½dη, and h = ½ℒ_ξφ.
  const TensorField& xi() const { return xi_; }
  const TensorField& Phi() const { return Phi_; }
  const TensorField& h() const { return h_; }

 private:
  TensorField eta_, g_, phi_, xi_, Phi_, h_;
};

// Φ = ½dη as a 2-form.
TensorField contact_two_form(const TensorField& eta);
// The Reeb field of η as a vector field (jets solve the defining equations).
TensorField reeb_field(const TensorField& eta);

Report verify_contact_form(const TensorField& eta, const Samples& samples, Exec exec = Exec::parallel);
std::vector<double> solve_reeb(const TensorField& eta, std::span<const double> p);
Report verify_compatibility(const ContactMetricStructure& s, const Samples& samples, Exec exec = Exec::parallel);

TensorField compute_h(const ContactMetricStructure& s);
Report is_K_contact(const ContactMetricStructure& s, const Samples& samples, Exec exec = Exec::parallel);
// hφ + φh = 0, trace h = 0, hξ = 0, h g-symmetric; with κ also h² = −(1−κ)φ².
Report verify_h_identities(const ContactMetricStructure& s, const Samples& samples,
                           std::optional<double> kappa = std::nullopt, Exec exec = Exec::parallel);

struct KmuReport {
  double kappa = 0.0;
  std::optional<double> mu;      // empty when h vanishes at every sample
  double residual = 0.0;
  bool sasakian = false;
  std::optional<double> lambda;  // √(1−κ) when κ < 1
};

// Least-squares fit of L ≈ κA + μB over stacked vectors; μ is left out
// when `with_mu` is false. The residual is the largest component deviation.
struct ColumnFit {
  double kappa = 0.0;
  std::optional<double> mu;
  double residual = 0.0;
};
ColumnFit fit_columns(const std::vector<Vec>& a, const std::vector<Vec>& b, const std::vector<Vec>& l, bool with_mu);

KmuReport fit_kappa_mu(const ContactMetricStructure& s, const Samples& samples, Exec exec = Exec::parallel);

ContactMetricStructure d_homothety(const ContactMetricStructure& s, double a);
// κ′ and μ′ after a 𝒟_a-homothety.
double homothety_kappa(double kappa, double a);
double homothety_mu(double mu, double a);
double boeckx_index(double kappa, double mu);

struct HEigen {
  std::vector<double> values;  // descending
  std::vector<Vec> vectors;    // g-orthonormal, matching `values`
  double lambda = 0.0;
  std::vector<Vec> plus, minus, zero;  // 𝒟_λ, 𝒟_{−λ}, 𝒟_0
};

HEigen h_eigendecomposition(const ContactMetricStructure& s, std::span<const double> p);

Report verify_kmu_curvature(const ContactMetricStructure& s, double kappa, double mu, const Samples& samples,
                            Exec exec = Exec::parallel);

// Bracket closure of 𝒟_{±λ} at the samples, using the projector fields
// h(h ± λI)/(2λ²). Necessary for integrability, not sufficient.
Report bracket_closure_check(const ContactMetricStructure& s, double kappa, const Samples& samples,
                             Exec exec = Exec::parallel);

struct EtaEinsteinReport {
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;
};

EtaEinsteinReport eta_einstein_fit(const ContactMetricStructure& s, const Samples& samples, Exec exec = Exec::parallel);

Report verify_structure_isomorphism(const SmoothMap& f, const ContactMetricStructure& s1,
                                    const ContactMetricStructure& s2, const Samples& samples,
                                    Exec exec = Exec::parallel);

}  // namespace metsymp
