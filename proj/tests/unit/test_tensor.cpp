#include <cmath>

#include <gtest/gtest.h>

#include "metsymp/errors.hpp"
#include "metsymp/tensor.hpp"

using namespace metsymp;

namespace {

const Expr x = Expr::var(0), y = Expr::var(1), z = Expr::var(2);

Chart r3() { return Chart({"x", "y", "z"}, {{-1, 1}, {-1, 1}, {-1, 1}}); }

TensorField form1(const Chart& c, std::vector<Expr> comps) {
  return TensorField::from_exprs(c, {0, 1}, Symmetry::none, std::move(comps));
}
TensorField vec(const Chart& c, std::vector<Expr> comps) {
  return TensorField::from_exprs(c, {1, 0}, Symmetry::none, std::move(comps));
}

double max_abs(const TensorValue& v) {
  double m = 0.0;
  for (double c : v.data()) m = std::max(m, std::abs(c));
  return m;
}

double max_diff(const TensorField& a, const TensorField& b, const Samples& pts) {
  double m = 0.0;
  for (const auto& p : pts) {
    const TensorValue u = a.value(p), v = b.value(p);
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
  }
  return m;
}

// Random smooth fields for identity checks.
TensorField random_form(const Chart& c, double a) {
  return form1(c, {sin(a * y) + z * x, exp(0.3 * x * z) - a * y * y, cos(x + a * y) * z});
}
TensorField random_vector(const Chart& c, double a) {
  return vec(c, {y * z + a, sin(x - a * z), x * x * a - cos(y)});
}

}  // namespace

TEST(Tensor, DarbouxDifferential) {
  const Chart c = r3();
  const auto eta = form1(c, {-y, 0.0, 1.0});
  const auto d = exterior_derivative(eta);
  const std::vector<double> p{0.2, 0.4, -0.1};
  const TensorValue v = d.value(p);
  // d(dz - y dx) = -dy∧dx = dx∧dy
  EXPECT_DOUBLE_EQ(v.at({0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(v.at({1, 0}), -1.0);
  EXPECT_DOUBLE_EQ(v.at({0, 2}), 0.0);
  EXPECT_DOUBLE_EQ(v.at({1, 2}), 0.0);
}

TEST(Tensor, DSquaredVanishes) {
  const Chart c = r3();
  for (double a : {0.3, 1.1, 2.0}) {
    const auto dd = exterior_derivative(exterior_derivative(random_form(c, a)));
    for (const auto& p : c.sample(100)) EXPECT_LT(max_abs(dd.value(p)), 1e-12);
  }
}

TEST(Tensor, ExteriorDerivativeRankOverflow) {
  const Chart c = r3();
  const auto top = wedge(wedge(TensorField::coordinate_form(c, 0), TensorField::coordinate_form(c, 1)),
                         TensorField::coordinate_form(c, 2));
  EXPECT_THROW(exterior_derivative(top), ShapeError);
}

TEST(Tensor, InteriorProducts) {
  const Chart c = r3();
  const auto dxdy = wedge(TensorField::coordinate_form(c, 0), TensorField::coordinate_form(c, 1));
  const std::vector<double> p{0.1, 0.2, 0.3};
  EXPECT_LT(max_abs(interior_product(TensorField::coordinate_vector(c, 2), dxdy).value(p)), 1e-15);
  EXPECT_DOUBLE_EQ(
      interior_product(TensorField::coordinate_vector(c, 0), TensorField::coordinate_form(c, 0)).value(p)[0], 1.0);
  const auto iy = interior_product(TensorField::coordinate_vector(c, 0), dxdy).value(p);
  EXPECT_DOUBLE_EQ(iy.at({1}), 1.0);
}

TEST(Tensor, WedgeOfOneFormsIsAntisymmetrized) {
  const Chart c = r3();
  const auto a = random_form(c, 0.4), b = random_form(c, 1.3);
  const auto w = wedge(a, b);
  for (const auto& p : c.sample(10)) {
    const auto av = a.value(p), bv = b.value(p), wv = w.value(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        EXPECT_NEAR(wv.at({i, j}), av.at({i}) * bv.at({j}) - av.at({j}) * bv.at({i}), 1e-15);
  }
}

TEST(Tensor, LieBracketExamples) {
  const Chart c = r3();
  const std::vector<double> p{0.5, -0.3, 0.9};
  const auto dx = TensorField::coordinate_vector(c, 0);
  EXPECT_LT(max_abs(lie_bracket(dx, TensorField::coordinate_vector(c, 2)).value(p)), 1e-15);
  const auto b = lie_bracket(dx, vec(c, {0.0, x, 0.0})).value(p);
  EXPECT_DOUBLE_EQ(b.at({0}), 0.0);
  EXPECT_DOUBLE_EQ(b.at({1}), 1.0);
  EXPECT_DOUBLE_EQ(b.at({2}), 0.0);
}

TEST(Tensor, JacobiIdentity) {
  const Chart c = r3();
  const auto pts = c.sample(20);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = 0.1 + 0.17 * trial;
    const auto X = random_vector(c, a), Y = random_vector(c, 1.3 * a + 0.2), Z = random_vector(c, 0.5 - a);
    const auto j = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) +
                   lie_bracket(Z, lie_bracket(X, Y));
    const auto& p = pts[static_cast<std::size_t>(trial)];
    EXPECT_LT(max_abs(j.value(p)), 1e-10);
  }
}

TEST(Tensor, LieDerivativeOfScalarIsDirectionalDerivative) {
  const Chart c = r3();
  const auto f = TensorField::scalar(c, sin(x * y) + z * z * z);
  const auto X = random_vector(c, 0.7);
  const auto lf = lie_derivative(X, f);
  for (const auto& p : c.sample(10)) {
    const auto j = jet_eval(f, p);
    const auto xv = X.value(p);
    double expect = 0.0;
    for (int i = 0; i < 3; ++i) expect += xv[static_cast<std::size_t>(i)] * j.grad[static_cast<std::size_t>(i)];
    EXPECT_NEAR(lf.value(p)[0], expect, 1e-13);
  }
}

TEST(Tensor, CartanIdentityOnOneForms) {
  const Chart c = r3();
  for (double a : {0.2, 0.9, 1.7}) {
    const auto X = random_vector(c, a), alpha = random_form(c, 2 * a);
    const auto lhs = lie_derivative(X, alpha);
    const auto rhs = interior_product(X, exterior_derivative(alpha)) + exterior_derivative(interior_product(X, alpha));
    EXPECT_LT(max_diff(lhs, rhs, c.sample(100)), 1e-10);
  }
}

TEST(Tensor, CartanIdentityOnTwoForms) {
  const Chart c = r3();
  const auto X = random_vector(c, 0.6);
  const auto beta = exterior_derivative(random_form(c, 1.1)) + wedge(random_form(c, 0.3), random_form(c, 0.8));
  const auto lhs = lie_derivative(X, beta);
  const auto rhs = interior_product(X, exterior_derivative(beta)) + exterior_derivative(interior_product(X, beta));
  EXPECT_LT(max_diff(lhs, rhs, c.sample(50)), 1e-10);
}

TEST(Tensor, SymplectizationExteriorDerivativeMatchesExpansion) {
  const Chart m = r3();
  const Chart b = m.product_with("t", {-1, 1});
  const Expr t = Expr::var(3);
  const auto eta = form1(m, {-0.5 * y, 0.0, 0.5});
  const auto eta_b = lift_to_product(eta, b);
  const auto e2t = TensorField::scalar(b, exp(2.0 * t));
  const auto lhs = exterior_derivative(e2t * eta_b);
  const auto dt = TensorField::coordinate_form(b, 3);
  const auto rhs = e2t * (2.0 * wedge(dt, eta_b) + exterior_derivative(eta_b));
  // Component oracle: written out by hand.
  for (const auto& p : b.sample(100)) {
    const double e = std::exp(2 * p[3]);
    const auto v = lhs.value(p);
    const double oracle_xy = e * 0.5, oracle_tx = 2 * e * (-0.5 * p[1]), oracle_tz = 2 * e * 0.5;
    EXPECT_NEAR(v.at({0, 1}), oracle_xy, 1e-10);
    EXPECT_NEAR(v.at({3, 0}), oracle_tx, 1e-10);
    EXPECT_NEAR(v.at({3, 2}), oracle_tz, 1e-10);
    EXPECT_NEAR(v.at({3, 1}), 0.0, 1e-10);
    const auto w = rhs.value(p);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], w[i], 1e-10);
  }
}

TEST(Tensor, LieDerivativeAlongTOfExponentialForm) {
  const Chart m = r3();
  const Chart b = m.product_with("t", {-1, 1});
  const auto eta_b = lift_to_product(form1(m, {-0.5 * y, 0.0, 0.5}), b);
  const auto e2t = TensorField::scalar(b, exp(2.0 * Expr::var(3)));
  const auto l = lie_derivative(TensorField::coordinate_vector(b, 3), e2t * eta_b);
  for (const auto& p : b.sample(100)) {
    const double e = std::exp(2 * p[3]);
    const auto v = l.value(p);
    EXPECT_NEAR(v.at({0}), 2 * e * (-0.5 * p[1]), 1e-10);
    EXPECT_NEAR(v.at({1}), 0.0, 1e-10);
    EXPECT_NEAR(v.at({2}), 2 * e * 0.5, 1e-10);
    EXPECT_NEAR(v.at({3}), 0.0, 1e-10);
  }
}

TEST(Tensor, PullbackIdentityAndTranslation) {
  const Chart m = r3();
  const Chart b = m.product_with("t", {-1, 2});
  const Chart bs = m.product_with("t", {-1, 1});
  const Expr t = Expr::var(3);
  const auto eta_b = lift_to_product(form1(m, {-0.5 * y, 0.0, 0.5}), b);
  const auto f = TensorField::scalar(b, exp(2.0 * t)) * eta_b;
  const auto id = pullback(SmoothMap::identity(b), f);
  EXPECT_EQ(max_diff(id, f, b.sample(20)), 0.0);

  const double tp = 0.7;
  const auto shift = SmoothMap::from_exprs(bs, b, {x, y, z, t + tp});
  const auto pulled = pullback(shift, f);
  for (const auto& p : bs.sample(50)) {
    const double e = std::exp(2 * p[3]);
    const auto v = pulled.value(p);
    EXPECT_NEAR(v.at({0}), std::exp(2 * tp) * e * (-0.5 * p[1]), 1e-12);
    EXPECT_NEAR(v.at({2}), std::exp(2 * tp) * e * 0.5, 1e-12);
  }
}

TEST(Tensor, PullbackIsFunctorial) {
  const Chart c = r3();
  const Chart big({"x", "y", "z"}, {{-3, 3}, {-3, 3}, {-3, 3}});
  const auto F = SmoothMap::from_exprs(c, big, {x + 0.3 * y * y, y - 0.2 * z, z + x * y});
  const Expr u = Expr::var(0), v = Expr::var(1), w = Expr::var(2);
  const Chart huge({"x", "y", "z"}, {{-30, 30}, {-30, 30}, {-30, 30}});
  const auto G = SmoothMap::from_exprs(big, huge, {u * v + w, sin(u) - v, exp(0.2 * w) + u});
  const auto beta = TensorField::from_exprs(
      huge, {0, 2}, Symmetry::none,
      {u, v * w, 1.0, w * w, 2.0, u - v, sin(v), 0.5, cos(w)});
  const auto lhs = pullback(compose(G, F), beta);
  const auto rhs = pullback(F, pullback(G, beta));
  EXPECT_LT(max_diff(lhs, rhs, c.sample(100)), 1e-10);
}

TEST(Tensor, ContractAndRaiseLower) {
  const Chart c = r3();
  const std::vector<double> p{0.1, -0.4, 0.25};
  EXPECT_DOUBLE_EQ(contract(TensorField::identity(c), 0, 0).value(p)[0], 3.0);
  const auto g = TensorField::from_exprs(c, {0, 2}, Symmetry::symmetric,
                                         {2.0 + x * x, 0.3 * y, 0.1, 0.3 * y, 1.5, z * 0.2, 0.1, z * 0.2, 1.0 + y * y});
  const auto X = random_vector(c, 0.9);
  const auto back = raise(g, lower(g, X, 0), 0);
  EXPECT_LT(max_diff(back, X, c.sample(50)), 1e-10);
}

TEST(Tensor, PointwiseSolve) {
  const Chart c = r3();
  const std::vector<double> p{0.1, -0.4, 0.25};
  const auto b = random_vector(c, 0.3);
  const auto s = pointwise_solve(TensorField::identity(c), b, p);
  const auto bv = b.value(p);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(s[static_cast<std::size_t>(i)], bv[static_cast<std::size_t>(i)]);
  const auto singular = TensorField::from_exprs(c, {1, 1}, Symmetry::none, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
  try {
    pointwise_solve(singular, b, p);
    FAIL() << "expected a singular-matrix error";
  } catch (const SingularMatrixError& e) {
    EXPECT_TRUE(std::isinf(e.condition()) || e.condition() > 1e12);
  }
}

TEST(Tensor, SymmetryIsStructural) {
  const Chart c = r3();
  const auto g = TensorField::from_exprs(c, {0, 2}, Symmetry::symmetric,
                                         {1.0, x, 0.0, 99.0, 1.0, 0.0, 0.0, 0.0, 1.0});
  const std::vector<double> p{0.5, 0.0, 0.0};
  const auto v = g.value(p);
  EXPECT_EQ(v.at({1, 0}), v.at({0, 1}));
  EXPECT_EQ(v.at({1, 0}), 0.5);
}

TEST(Tensor, RepeatedEvaluationIsBitIdentical) {
  const Chart c = r3();
  const auto f = lie_derivative(random_vector(c, 0.3), exterior_derivative(random_form(c, 0.8)));
  for (const auto& p : c.sample(10)) {
    const auto a = f.value(p), b = f.value(p);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  }
}

TEST(Tensor, SamplingIsDeterministicAndInsideShrunkBox) {
  const Chart c({"a", "b"}, {{0, 10}, {-1, 1}}, 7);
  const auto s1 = c.sample(200), s2 = c.sample(200);
  EXPECT_EQ(s1, s2);
  for (const auto& p : s1) {
    EXPECT_GE(p[0], 0.5);
    EXPECT_LE(p[0], 9.5);
    EXPECT_GE(p[1], -0.9);
    EXPECT_LE(p[1], 0.9);
  }
  EXPECT_NE(c.sample(5, 1), c.sample(5, 2));
}
