#pragma once

// Levi-Civita connection and curvature of a metric field.
//
// Sign conventions: R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z, stored as
// R^a_{bcd} with R(∂_c,∂_d)∂_b = R^a_{bcd} ∂_a, and
// Ric(X,Y) = trace(V ↦ R(V,X)Y), so the unit sphere has Ric = (n−1)g.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "metsymp/parallel.hpp"
#include "metsymp/report.hpp"
#include "metsymp/tensor.hpp"

namespace metsymp {

struct ChristoffelData {
  Point point;
  int dim = 0;
  std::vector<double> gamma;   // Γ^k_ij at (k*dim + i)*dim + j
  std::vector<double> dgamma;  // ∂_l Γ^k_ij at ((k*dim + i)*dim + j)*dim + l

  double G(int k, int i, int j) const { return gamma[static_cast<std::size_t>((k * dim + i) * dim + j)]; }
  double dG(int k, int i, int j, int l) const {
    return dgamma[static_cast<std::size_t>(((k * dim + i) * dim + j) * dim + l)];
  }
};

ChristoffelData christoffel(const TensorField& g, std::span<const double> p);

// Γ^k_ij as a (1,2) field (component index k, i, j). Not a tensor, but the
// dense storage and jet propagation are the same.
TensorField christoffel_field(const TensorField& g);

// ∇T as an (r, s+1) field; the differentiation slot is the first covariant one.
TensorField nabla(const TensorField& g, const TensorField& t);
// (∇_X T)(p) for a vector X given by components at p.
TensorValue covariant_derivative(const TensorField& g, const TensorField& t, std::span<const double> x,
                                 std::span<const double> p);

TensorField riemann_tensor(const TensorField& g);
// Ric_{xy} = R^a_{y a x}, by direct contraction.
TensorField ricci_tensor(const TensorField& g);

using Vec = Eigen::VectorXd;

Vec riemann(const TensorField& g, const Vec& x, const Vec& y, const Vec& z, std::span<const double> p);
// Ricci curvature as a trace over a g-orthonormal frame.
double ricci(const TensorField& g, const Vec& x, const Vec& y, std::span<const double> p);
double sectional(const TensorField& g, const Vec& x, const Vec& y, std::span<const double> p);

// Value helpers: R(X,Y)Z from R^a_bcd components.
Vec apply_riemann(const TensorValue& r, const Vec& x, const Vec& y, const Vec& z);
Eigen::MatrixXd as_matrix(const TensorValue& t);
Vec as_vector(const TensorValue& t);

// Gram–Schmidt in the inner product G. Seeds are used first, in order;
// the remaining directions come from the coordinate frame, always taking the
// candidate with the largest residual norm. Candidates whose residual norm
// falls below `tol` are skipped.
std::vector<Vec> orthonormal_frame(const Eigen::MatrixXd& gram, const std::vector<Vec>& seeds, double tol = 1e-10);

Report first_bianchi_check(const TensorField& g, const Samples& samples, Exec exec = Exec::parallel);
// Antisymmetries in both pairs, pair symmetry and first Bianchi, on R_abcd.
Report riemann_symmetry_check(const TensorField& g, const Samples& samples, Exec exec = Exec::parallel);

}  // namespace metsymp
