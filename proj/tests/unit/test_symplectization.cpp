#include <cmath>

#include <gtest/gtest.h>

#include "metsymp/catalog.hpp"
#include "metsymp/errors.hpp"
#include "metsymp/symplectization.hpp"

using namespace metsymp;

namespace {

const std::string kSasakian = "darboux-sasakian-r3";
const std::string kFlat = "unit-tangent-flat-plane";

ContactMetricStructure load(const std::string& name) { return catalog_load(name).structure; }

double max_diff(const TensorField& a, const TensorField& b, const Samples& pts) {
  double m = 0.0;
  for (const auto& p : pts) {
    const TensorValue u = a.value(p), v = b.value(p);
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
  }
  return m;
}

Chart r4() { return Chart({"x1", "y1", "x2", "y2"}, {{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}}); }

TensorField two_form(const Chart& c, std::vector<Expr> comps) {
  return TensorField::from_exprs(c, {0, 2}, Symmetry::antisymmetric, std::move(comps));
}

// dx1∧dy1 + dx2∧dy2
TensorField standard_omega(const Chart& c) {
  return two_form(c, {0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0, 0.0});
}

}  // namespace

TEST(Symplectic, StandardAndDegenerateForms) {
  const Chart c = r4();
  const auto pts = c.sample(10);
  EXPECT_TRUE(verify_symplectic(standard_omega(c), pts).passed());
  const auto degenerate =
      two_form(c, {0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  const auto rep = verify_symplectic(degenerate, pts);
  EXPECT_FALSE(rep["omega_top_power"].pass());
  const Chart odd({"x", "y", "z"}, {{-1, 1}, {-1, 1}, {-1, 1}});
  EXPECT_THROW(verify_symplectic(TensorField::zero(odd, {0, 2}), odd.sample(2)), ShapeError);
}

TEST(Symplectic, MetricSymplectizationIsSymplectic) {
  for (const auto& name : catalog_names()) {
    const auto b = build_metric_symplectization(load(name));
    const auto pts = b.chart().sample(50);
    const auto rep = verify_symplectic(b.omega, pts);
    EXPECT_TRUE(rep.passed()) << name;
    EXPECT_LT(rep["d_omega"].value, 1e-12) << name;
    EXPECT_TRUE(verify_compatible_triple(b, pts).passed()) << name;
  }
}

TEST(MetricSymplectization, JTable) {
  for (const auto& name : catalog_names()) {
    const auto b = build_metric_symplectization(load(name));
    const auto rep = verify_metric_symplectization(b, b.chart().sample(100));
    for (const auto& m : rep.measures) EXPECT_TRUE(m.pass()) << name << " " << m.name << " = " << m.value;
  }
}

TEST(MetricSymplectization, OmegaComponents) {
  // ω(ξ, ∂_t) = −e^{2t} and i_{∂_t}ω = e^{2t}η
  const auto s = load(kFlat);
  const auto b = build_metric_symplectization(s);
  const auto i_dt = interior_product(b.dt, b.omega);
  EXPECT_LT(max_diff(i_dt, b.eta_t, b.chart().sample(20)), 1e-13);
  for (const auto& p : b.chart().sample(10)) {
    const Vec xi = as_vector(lift_to_product(s.xi(), b.chart()).value(p));
    const auto w = as_matrix(b.omega.value(p));
    EXPECT_NEAR(xi.dot(w.col(3)), -std::exp(2 * p[3]), 1e-12);
  }
}

TEST(MetricSymplectization, SliceAtZeroIsOriginalMetric) {
  const auto s = load(kSasakian);
  const auto b = build_metric_symplectization(s);
  for (const auto& x : s.chart().sample(20)) {
    Point p = x;
    p.push_back(0.0);
    const auto gb = as_matrix(b.g.value(p));
    const auto g = as_matrix(s.g().value(x));
    EXPECT_LT((gb.topLeftCorner(3, 3) - g).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(MetricSymplectization, CustomTRange) {
  const auto b = build_metric_symplectization(load(kFlat), {-0.5, 2.0});
  EXPECT_EQ(b.chart().domain()[3].lo, -0.5);
  EXPECT_EQ(b.chart().domain()[3].hi, 2.0);
  EXPECT_EQ(b.chart().names()[3], "t");
}

TEST(Liouville, HalfDtIsLiouville) {
  for (const auto& name : catalog_names()) {
    const auto b = build_metric_symplectization(load(name));
    const auto pts = b.chart().sample(30);
    EXPECT_TRUE(verify_liouville(b.omega, 0.5 * b.dt, pts).passed()) << name;
    // ℒ_{∂t}ω = 2ω, so ∂_t itself misses by |ω| and 2∂_t by 3|ω|
    EXPECT_LT(max_diff(lie_derivative(b.dt, b.omega), 2.0 * b.omega, pts), 1e-12) << name;
    EXPECT_FALSE(verify_liouville(b.omega, 2.0 * b.dt, pts).passed()) << name;
  }
}

TEST(Liouville, RadialFieldOnR4) {
  const Chart c = r4();
  const auto pts = c.sample(20);
  std::vector<Expr> comps;
  for (int i = 0; i < 4; ++i) comps.push_back(0.5 * Expr::var(i));
  const auto y = TensorField::from_exprs(c, {1, 0}, Symmetry::none, comps);
  EXPECT_TRUE(verify_liouville(standard_omega(c), y, pts).passed());
  // component oracle: i_Yω = ½(x1 dy1 − y1 dx1 + x2 dy2 − y2 dx2), d of it = ω
  const auto iy = interior_product(y, standard_omega(c));
  for (const auto& p : pts) {
    const auto v = iy.value(p);
    EXPECT_NEAR(v[0], -0.5 * p[1], 1e-15);
    EXPECT_NEAR(v[1], 0.5 * p[0], 1e-15);
    EXPECT_NEAR(v[2], -0.5 * p[3], 1e-15);
    EXPECT_NEAR(v[3], 0.5 * p[2], 1e-15);
  }
}

TEST(Slices, EqualHomotheties) {
  for (const auto& name : catalog_names()) {
    const auto s = load(name);
    const auto b = build_metric_symplectization(s);
    const auto pts = s.chart().sample(30);
    for (double t0 : {-0.5, 0.0, 0.3}) {
      const auto slice = slice_structure(b, t0).structure;
      const auto h = d_homothety(s, std::exp(2 * t0));
      EXPECT_LT(max_diff(slice.eta(), h.eta(), pts), 1e-10) << name << " t0 = " << t0;
      EXPECT_LT(max_diff(slice.g(), h.g(), pts), 1e-10) << name << " t0 = " << t0;
      EXPECT_LT(max_diff(slice.phi(), h.phi(), pts), 1e-10) << name << " t0 = " << t0;
      EXPECT_TRUE(verify_compatibility(slice, pts).passed()) << name << " t0 = " << t0;
    }
    const auto zero = slice_structure(b, 0.0).structure;
    EXPECT_LT(max_diff(zero.g(), s.g(), pts), 1e-14);
    EXPECT_THROW(slice_structure(b, 1.5), DomainError);
  }
}

TEST(Slices, InducedStructureMatchesSlice) {
  const auto s = load(kFlat);
  const auto b = build_metric_symplectization(s);
  const auto pts = s.chart().sample(20);
  for (double t0 : {-0.5, 0.3}) {
    const auto iota = slice_embedding(b, t0);
    const auto induced = induced_contact_on_hypersurface(b, b.dt, iota, pts);
    const auto slice = slice_structure(b, t0).structure;
    EXPECT_LT(max_diff(induced.eta(), slice.eta(), pts), 1e-9);
    EXPECT_LT(max_diff(induced.g(), slice.g(), pts), 1e-9);
    EXPECT_LT(max_diff(induced.phi(), slice.phi(), pts), 1e-9);
    const auto rep = verify_compatibility(induced, pts);
    EXPECT_TRUE(rep.passed());
    EXPECT_LT(rep["metric_reeb"].value, 1e-9);
  }
}

TEST(Slices, TiltedHypersurfaceRejected) {
  const auto s = load(kFlat);
  const auto b = build_metric_symplectization(s);
  const Expr x = Expr::var(0), y = Expr::var(1), th = Expr::var(2);
  const auto tilted = SmoothMap::from_exprs(s.chart(), b.chart(), {x, y, th, 0.1 * x});
  EXPECT_THROW(induced_contact_on_hypersurface(b, b.dt, tilted, s.chart().sample(5)), PreconditionError);
  EXPECT_THROW(induced_contact_on_hypersurface(b, 2.0 * b.dt, slice_embedding(b, 0.0), s.chart().sample(5)),
               PreconditionError);
}

TEST(NaturalAcs, SquaresToMinusOne) {
  for (const auto& name : catalog_names()) {
    const auto b = build_metric_symplectization(load(name));
    const auto J = natural_acs(b);
    EXPECT_LT(max_diff(compose11(J, J), -1.0 * TensorField::identity(b.chart()), b.chart().sample(30)), 1e-10);
  }
}

TEST(NaturalAcs, AgreesWithMetricJOnContactDistributionAtZero) {
  const auto s = load(kFlat);
  const auto b = build_metric_symplectization(s);
  const auto J = natural_acs(b);
  for (const auto& x : s.chart().sample(10)) {
    Point p = x;
    p.push_back(0.0);
    const auto a = as_matrix(J.value(p)), m = as_matrix(b.J.value(p));
    const Vec eta = as_vector(s.eta().value(x)), xi = as_vector(s.xi().value(x));
    for (int i = 0; i < 3; ++i) {
      Vec v = Vec::Zero(4);
      v.head(3) = Vec::Unit(3, i) - eta(i) * xi;  // in Ker η
      EXPECT_LT((a * v - m * v).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(NaturalAcs, InducedSliceMetricIsNotContactMetric) {
  const auto s = load(kFlat);
  const auto b = build_metric_symplectization(s);
  const auto gn = acs_metric(b.omega, natural_acs(b));
  const auto pts = s.chart().sample(10);
  const double t0 = 0.5;
  const auto iota = slice_embedding(b, t0);
  const ContactMetricStructure induced(pullback(iota, interior_product(b.dt, b.omega)), pullback(iota, gn),
                                       slice_structure(b, t0).structure.phi());
  EXPECT_FALSE(verify_compatibility(induced, pts).passed());
}

TEST(Nijenhuis, SasakianDichotomy) {
  for (const auto& name : catalog_names()) {
    const auto b = build_metric_symplectization(load(name));
    const auto pts = b.chart().sample(30);
    const double nat = nijenhuis_norm(natural_acs(b), pts)["nijenhuis"].value;
    const double met = nijenhuis_norm(b.J, pts)["nijenhuis"].value;
    if (name == kSasakian) {
      EXPECT_LT(nat, 1e-8);
      EXPECT_LT(met, 1e-8);
    } else {
      EXPECT_GT(nat, 1e-2);
      EXPECT_GT(met, 1e-2);
    }
  }
}

TEST(Nijenhuis, Antisymmetric) {
  const auto b = build_metric_symplectization(load(kFlat));
  const auto N = nijenhuis(b.J);
  for (const auto& p : b.chart().sample(10)) {
    const auto v = N.value(p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) EXPECT_NEAR(v.at({i, j, k}), -v.at({i, k, j}), 1e-10);
  }
}

TEST(Nijenhuis, MatchesBracketDefinition) {
  // N(X,Y) for non-coordinate fields from brackets, compared with the tensor.
  const auto b = build_metric_symplectization(load(kFlat));
  const Chart& c = b.chart();
  const Expr x = Expr::var(0), t = Expr::var(3);
  const auto X = TensorField::from_exprs(c, {1, 0}, Symmetry::none, {1.0 + t * t, x, 0.0, sin(x)});
  const auto Y = TensorField::from_exprs(c, {1, 0}, Symmetry::none, {0.0, cos(t), x * t, 1.0});
  const auto& J = b.J;
  const auto JX = apply(J, X), JY = apply(J, Y);
  const auto lhs = lie_bracket(JX, JY) - apply(J, lie_bracket(JX, Y)) - apply(J, lie_bracket(X, JY)) -
                   lie_bracket(X, Y);
  const auto N = nijenhuis(J);
  for (const auto& p : c.sample(10)) {
    const auto n = N.value(p), xv = X.value(p), yv = Y.value(p), l = lhs.value(p);
    for (int i = 0; i < 4; ++i) {
      double s = 0.0;
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) s += n.at({i, j, k}) * xv[static_cast<std::size_t>(j)] * yv[static_cast<std::size_t>(k)];
      EXPECT_NEAR(s, l[static_cast<std::size_t>(i)], 1e-10);
    }
  }
}

TEST(Translation, Isomorphism) {
  for (const auto& name : catalog_names()) {
    const auto s = load(name);
    const auto zero = translation_isomorphism_check(s, 0.0, 20, 42);
    EXPECT_EQ(zero.worst(), 0.0) << name;
    const auto rep = translation_isomorphism_check(s, 0.3, 50, 42);
    for (const auto& m : rep.measures) EXPECT_TRUE(m.pass()) << name << " " << m.name << " = " << m.value;
  }
}

TEST(Translation, WrongShiftFails) {
  // comparing against the homothety for a different t′ must fail
  const auto s = load(kFlat);
  const auto b = build_metric_symplectization(s);
  const auto other = build_metric_symplectization(d_homothety(s, std::exp(0.6)));
  EXPECT_GT(max_diff(b.omega, other.omega, b.chart().sample(10)), 1e-2);
}
