#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "metsymp/curvature.hpp"
#include "metsymp/errors.hpp"
#include "oracles/fd_oracle.hpp"

using namespace metsymp;

namespace {

const Expr x0 = Expr::var(0), x1 = Expr::var(1), x2 = Expr::var(2);

TensorField metric(const Chart& c, std::vector<Expr> comps) {
  return TensorField::from_exprs(c, {0, 2}, Symmetry::symmetric, std::move(comps));
}

Chart sphere_chart() { return Chart({"theta", "phi"}, {{0.3, 2.8}, {-1, 1}}); }
TensorField round_sphere() {
  return metric(sphere_chart(), {1.0, 0.0, 0.0, sin(x0) * sin(x0)});
}

// The standard Sasakian structure on R^3 in Darboux coordinates.
Chart r3() { return Chart({"x", "y", "z"}, {{-1, 1}, {-1, 1}, {-1, 1}}); }
TensorField sasakian_metric() {
  // ¼(dx² + dy²) + η⊗η with η = ½(dz − y dx)
  const Expr q = 0.25;
  return metric(r3(), {q + q * x1 * x1, 0.0, -q * x1, 0.0, q, 0.0, -q * x1, 0.0, q});
}

// A metric without symmetries, for comparison with finite differences.
TensorField warped_metric() {
  return metric(r3(), {2.0 + sin(x1) * x2, 0.3 * x0 * x1, 0.1 * cos(x2), 0.3 * x0 * x1, exp(0.5 * x0),
                       0.2 * x1 * x2, 0.1 * cos(x2), 0.2 * x1 * x2, 1.5 + x0 * x0});
}

oracle::MetricFn matrix_fn(const TensorField& g) {
  return [g](const std::vector<double>& p) { return as_matrix(g.value(p)); };
}

}  // namespace

TEST(Christoffel, RoundSphere) {
  const auto g = round_sphere();
  const double t = std::numbers::pi / 4;
  const std::vector<double> p{t, 0.2};
  const auto c = christoffel(g, p);
  EXPECT_NEAR(c.G(0, 1, 1), -std::sin(t) * std::cos(t), 1e-14);
  EXPECT_NEAR(c.G(0, 1, 1), -0.5, 1e-14);
  EXPECT_NEAR(c.G(1, 0, 1), std::cos(t) / std::sin(t), 1e-14);
  EXPECT_NEAR(c.G(1, 1, 0), c.G(1, 0, 1), 0.0);
  EXPECT_NEAR(c.G(0, 0, 0), 0.0, 1e-15);
  // ∂θ Γ^θ_φφ = −cos 2θ
  EXPECT_NEAR(c.dG(0, 1, 1, 0), -std::cos(2 * t), 1e-13);
}

TEST(Christoffel, DegenerateMetricThrows) {
  const auto g = metric(r3(), {1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0});
  EXPECT_THROW(christoffel(g, std::vector<double>{0, 0, 0}), SingularMatrixError);
}

TEST(Christoffel, MatchesFiniteDifferences) {
  const auto g = warped_metric();
  for (const auto& p : g.chart().sample(10)) {
    const auto c = christoffel(g, p);
    const auto fd = oracle::christoffel_fd(matrix_fn(g), p, 1e-5);
    for (std::size_t i = 0; i < fd.size(); ++i) EXPECT_NEAR(c.gamma[i], fd[i], 1e-8);
  }
}

TEST(Riemann, MatchesFiniteDifferences) {
  const auto g = warped_metric();
  const auto rt = riemann_tensor(g);
  for (const auto& p : g.chart().sample(6)) {
    const auto r = rt.value(p);
    const auto fd = oracle::curvature_fd(matrix_fn(g), p);
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r[i], fd.riemann[i], 2e-5);
  }
}

TEST(Riemann, RoundSphereHasUnitCurvature) {
  const auto g = round_sphere();
  const Vec e0 = Vec::Unit(2, 0), e1 = Vec::Unit(2, 1);
  for (const auto& p : g.chart().sample(20)) {
    EXPECT_NEAR(sectional(g, e0, e1, p), 1.0, 1e-12);
    EXPECT_NEAR(sectional(g, e0 + 0.3 * e1, e1 - 2.0 * e0, p), 1.0, 1e-12);
    // Ric = (n − 1) g
    const auto ric = as_matrix(ricci_tensor(g).value(p));
    const auto gm = as_matrix(g.value(p));
    EXPECT_LT((ric - gm).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(ricci(g, e1, e1, p), gm(1, 1), 1e-12);
  }
}

TEST(Riemann, SignConventionOnSphere) {
  // R(X,Y)Y = g(Y,Y)X − g(X,Y)Y for constant curvature +1
  const auto g = round_sphere();
  const std::vector<double> p{1.0, 0.1};
  const Vec X = Vec::Unit(2, 0), Y = Vec::Unit(2, 1);
  const Vec r = riemann(g, X, Y, Y, p);
  const auto gm = as_matrix(g.value(p));
  const Vec expect = Y.dot(gm * Y) * X - X.dot(gm * Y) * Y;
  EXPECT_NEAR((r - expect).norm(), 0.0, 1e-12);
}

TEST(Riemann, SasakianReebSectionalCurvature) {
  const auto g = sasakian_metric();
  const Vec xi = 2.0 * Vec::Unit(3, 2);
  for (const auto& p : g.chart().sample(10)) {
    Vec X(3);
    X << 1.0, 0.0, p[1];  // horizontal: η(X) = 0
    EXPECT_NEAR(sectional(g, X, xi, p), 1.0, 1e-12);
    EXPECT_NEAR(ricci(g, xi, xi, p), 2.0, 1e-12);
  }
}

TEST(Riemann, FrameTraceMatchesContraction) {
  const auto g = warped_metric();
  const auto ric = ricci_tensor(g);
  for (const auto& p : g.chart().sample(5)) {
    const auto m = as_matrix(ric.value(p));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(ricci(g, Vec::Unit(3, i), Vec::Unit(3, j), p), m(i, j), 1e-11);
    EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(Riemann, SymmetriesAndBianchi) {
  const auto g = warped_metric();
  const auto pts = g.chart().sample(20);
  const auto rep = riemann_symmetry_check(g, pts);
  for (const auto& m : rep.measures) EXPECT_TRUE(m.pass()) << m.name << " = " << m.value;
  EXPECT_TRUE(first_bianchi_check(g, pts).passed());
}

TEST(Riemann, SerialAndParallelAgreeExactly) {
  const auto g = warped_metric();
  const auto pts = g.chart().sample(12);
  const auto a = riemann_symmetry_check(g, pts, Exec::serial);
  const auto b = riemann_symmetry_check(g, pts, Exec::parallel);
  ASSERT_EQ(a.measures.size(), b.measures.size());
  for (std::size_t i = 0; i < a.measures.size(); ++i) EXPECT_EQ(a.measures[i].value, b.measures[i].value);
}

TEST(Sectional, DependentVectorsRejected) {
  const auto g = round_sphere();
  const Vec e0 = Vec::Unit(2, 0);
  EXPECT_THROW(sectional(g, e0, 2.0 * e0, std::vector<double>{1.0, 0.0}), PreconditionError);
}

TEST(Nabla, MetricIsParallel) {
  const auto g = warped_metric();
  const auto ng = nabla(g, g);
  EXPECT_EQ(ng.type(), (TensorType{0, 3}));
  for (const auto& p : g.chart().sample(10)) {
    const auto v = ng.value(p);
    for (double c : v.data()) EXPECT_NEAR(c, 0.0, 1e-12);
  }
}

TEST(Nabla, TorsionFree) {
  // ∇_X Y − ∇_Y X = [X, Y]
  const Chart c = r3();
  const auto g = warped_metric();
  const auto X = TensorField::from_exprs(c, {1, 0}, Symmetry::none, {x1 * x2, sin(x0), 1.0 + x0 * x1});
  const auto Y = TensorField::from_exprs(c, {1, 0}, Symmetry::none, {cos(x2), x0 * x0, exp(x1)});
  const auto nX = nabla(g, X), nY = nabla(g, Y);
  const auto br = lie_bracket(X, Y);
  for (const auto& p : c.sample(10)) {
    const auto xv = X.value(p), yv = Y.value(p);
    const auto a = covariant_derivative(g, Y, xv.data(), p);
    const auto b = covariant_derivative(g, X, yv.data(), p);
    const auto l = br.value(p);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i] - b[i], l[i], 1e-12);
  }
}

TEST(Nabla, CurvatureFromSecondDerivatives) {
  // R(∂c,∂d)Z = ∇²_{c,d}Z − ∇²_{d,c}Z for any vector field Z.
  const Chart c = r3();
  const auto g = warped_metric();
  const auto Z = TensorField::from_exprs(c, {1, 0}, Symmetry::none, {x0 * x2, cos(x1), x1 - x2 * x2});
  const auto nnZ = nabla(g, nabla(g, Z));  // (∇²Z)^a_{c d}
  const auto rt = riemann_tensor(g);
  for (const auto& p : c.sample(5)) {
    const auto n2 = nnZ.value(p);
    const auto r = rt.value(p);
    const auto z = Z.value(p);
    for (int a = 0; a < 3; ++a)
      for (int cc = 0; cc < 3; ++cc)
        for (int d = 0; d < 3; ++d) {
          double rz = 0.0;
          for (int b = 0; b < 3; ++b) rz += r.at({a, b, cc, d}) * z[static_cast<std::size_t>(b)];
          EXPECT_NEAR(n2.at({a, cc, d}) - n2.at({a, d, cc}), rz, 1e-11);
        }
  }
}

TEST(Frame, OrthonormalWithSeeds) {
  Eigen::MatrixXd G(3, 3);
  G << 2, 0.5, 0, 0.5, 1, 0.1, 0, 0.1, 3;
  Vec s(3);
  s << 0, 0, 1;
  const auto f = orthonormal_frame(G, {s});
  ASSERT_EQ(f.size(), 3u);
  EXPECT_NEAR((f[0] - s / std::sqrt(3.0)).norm(), 0.0, 1e-15);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(f[static_cast<std::size_t>(i)].dot(G * f[static_cast<std::size_t>(j)]), i == j ? 1.0 : 0.0, 1e-14);
}

TEST(Frame, DependentSeedSkipped) {
  const Eigen::MatrixXd G = Eigen::MatrixXd::Identity(3, 3);
  const auto f = orthonormal_frame(G, {Vec::Unit(3, 0), 2.0 * Vec::Unit(3, 0)});
  ASSERT_EQ(f.size(), 3u);
  EXPECT_NEAR(std::abs(f[1].dot(f[0])), 0.0, 1e-15);
}
