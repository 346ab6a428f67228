#include "metsymp/symplectization.hpp"

#include <cmath>

#include "metsymp/errors.hpp"
#include "metsymp/linalg.hpp"

namespace metsymp {

namespace {

using Mat = Eigen::MatrixXd;

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

TensorField top_power(const TensorField& omega) {
  TensorField top = omega;
  for (int k = 1; k < omega.dim() / 2; ++k) top = wedge(top, omega);
  return top;
}

}  // namespace

MetricSymplectization build_metric_symplectization(const ContactMetricStructure& s, Interval t_range) {
  const Chart product = s.chart().product_with("t", t_range);
  const int t = s.dim();
  const Expr tv = Expr::var(t);
  const TensorField e2t = TensorField::scalar(product, exp(2.0 * tv));
  const TensorField em2t = TensorField::scalar(product, exp(-2.0 * tv));
  const TensorField eta = lift_to_product(s.eta(), product);
  const TensorField xi = lift_to_product(s.xi(), product);
  const TensorField phi = lift_to_product(s.phi(), product);
  const TensorField dt = TensorField::coordinate_vector(product, t);
  const TensorField dt_form = TensorField::coordinate_form(product, t);

  const TensorField eta_t = e2t * eta;
  const TensorField xi_t = em2t * xi;
  const TensorField omega = 0.5 * exterior_derivative(eta_t);
  const TensorField J = phi + tensor_product(dt, eta_t) - tensor_product(xi_t, dt_form);
  const TensorField g = -1.0 * contract(tensor_product(omega, J), 0, 1);
  return MetricSymplectization{{omega, g, J}, s, t_range, t, dt, eta_t, xi_t, phi};
}

Report verify_symplectic(const TensorField& omega, const Samples& samples, Exec exec) {
  if (!(omega.type() == TensorType{0, 2})) throw ShapeError("verify_symplectic: ω must be a 2-form");
  const int dim = omega.dim();
  if (dim % 2 != 0) throw ShapeError("verify_symplectic: chart must be even-dimensional");
  const TensorField d = exterior_derivative(omega.with_symmetry(Symmetry::antisymmetric));
  const TensorField top = top_power(omega.with_symmetry(Symmetry::antisymmetric));
  std::vector<int> idx(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) idx[static_cast<std::size_t>(i)] = i;
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    const TensorValue dv = d.value(p);
    double m = 0.0;
    for (double v : dv.data()) m = std::max(m, std::abs(v));
    const TensorValue tv = top.value(p);
    const Mat w = as_matrix(omega.value(p));
    return std::vector<double>{m, std::abs(tv[tv.flat(idx)]), max_abs(Mat(w + w.transpose()))};
  }, exec);
  double dmax = 0.0, asym = 0.0, vol = rows.empty() ? 0.0 : INFINITY;
  for (const auto& r : rows) {
    dmax = std::max(dmax, r[0]);
    vol = std::min(vol, r[1]);
    asym = std::max(asym, r[2]);
  }
  Report rep;
  rep.add("d_omega", dmax, 1e-10);
  rep.add("omega_antisymmetric", asym, 1e-12);
  rep.add("omega_top_power", vol, 1e-8, true);
  return rep;
}

Report verify_compatible_triple(const SymplecticMetricStructure& b, const Samples& samples, Exec exec) {
  const int n = b.chart().dim();
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    const Mat w = as_matrix(b.omega.value(p));
    const Mat g = as_matrix(b.g.value(p));
    const Mat J = as_matrix(b.J.value(p));
    return std::vector<double>{max_abs(Mat(J * J + Mat::Identity(n, n))), max_abs(Mat(g * J - w)),
                               max_abs(Mat(g - g.transpose()))};
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("J_squared", m.at(0), 1e-10);
  rep.add("g_J_omega", m.at(1), 1e-10);
  rep.add("g_symmetric", m.at(2), 1e-10);
  return rep;
}

Report verify_metric_symplectization(const MetricSymplectization& b, const Samples& samples, Exec exec) {
  const int n = b.chart().dim();
  const int t = b.t_index;
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    const Mat w = as_matrix(b.omega.value(p));
    const Mat g = as_matrix(b.g.value(p));
    const Mat J = as_matrix(b.J.value(p));
    const Vec xi_t = as_vector(b.xi_t.value(p));
    const Vec eta_t = as_vector(b.eta_t.value(p));
    const Mat phi = as_matrix(b.phi.value(p));
    const Vec dt = Vec::Unit(n, t);
    // slice metric g_t = e^{2t}g + e^{2t}(e^{2t}−1)η⊗η, extended by dt²
    const double e = std::exp(2.0 * p[static_cast<std::size_t>(t)]);
    const Point x(p.begin(), p.begin() + t);
    const Mat g0 = as_matrix(b.base.g().value(x));
    const Vec eta0 = as_vector(b.base.eta().value(x));
    Mat block = Mat::Zero(n, n);
    block.topLeftCorner(t, t) = e * g0 + e * (e - 1.0) * eta0 * eta0.transpose();
    block(t, t) = 1.0;
    double orth = 0.0;
    for (int i = 0; i < t; ++i) orth = std::max(orth, std::abs(g(t, i)));
    // J = φ on Ker η_t: compare on the projections ∂_i − η_t(∂_i)ξ_t
    const Mat proj = Mat::Identity(n, n) - xi_t * eta_t.transpose();
    const Mat on_contact = (J - phi) * proj.leftCols(t);
    // uniqueness witness: v with ω(v,∂_i) = 0 (i < t), ω(v,∂_t) = 1
    Vec rhs = Vec::Zero(n);
    rhs(t) = 1.0;
    const Vec v = w.transpose().fullPivLu().solve(rhs);
    return std::vector<double>{std::abs(g(t, t) - 1.0),
                               orth,
                               max_abs(Vec(J * xi_t - dt)),
                               max_abs(Vec(J * dt + xi_t)),
                               max_abs(on_contact),
                               max_abs(Mat(g - block)),
                               max_abs(Vec(v + xi_t))};
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("dt_unit", m.at(0), 1e-10);
  rep.add("dt_orthogonal", m.at(1), 1e-10);
  rep.add("J_xi_t", m.at(2), 1e-10);
  rep.add("J_dt", m.at(3), 1e-10);
  rep.add("J_on_contact", m.at(4), 1e-10);
  rep.add("metric_block", m.at(5), 1e-10);
  rep.add("uniqueness_witness", m.at(6), 1e-8);
  return rep;
}

Report verify_liouville(const TensorField& omega, const TensorField& y, const Samples& samples, Exec exec) {
  const TensorField diff = lie_derivative(y, omega) - omega;
  const auto res = sweep<double>(samples, [&](const Point& p) {
    double m = 0.0;
    const TensorValue v = diff.value(p);
    for (double c : v.data()) m = std::max(m, std::abs(c));
    return m;
  }, exec);
  Report rep;
  rep.add("liouville", max_of(res), 1e-9);
  return rep;
}

SmoothMap slice_embedding(const MetricSymplectization& b, double t0) {
  const Chart& m = b.base.chart();
  std::vector<Expr> coords;
  for (int i = 0; i < m.dim(); ++i) coords.push_back(Expr::var(i));
  coords.push_back(t0);
  return SmoothMap::from_exprs(m, b.chart(), coords);
}

SliceStructure slice_structure(const MetricSymplectization& b, double t0) {
  if (!(t0 >= b.t_range.lo && t0 <= b.t_range.hi))
    throw DomainError("slice_structure: t0 = " + std::to_string(t0) + " outside the t-range");
  const SmoothMap iota = slice_embedding(b, t0);
  const Chart& m = b.base.chart();
  const int t = b.t_index;
  // Components restricted to the slice, without any Jacobian factor.
  auto restricted = [&](const TensorField& src, TensorType type, Symmetry sym, auto pick) {
    return TensorField(m, type, sym, [src, iota, pick, t, type](std::span<const double> p, int order) {
      const TensorJets along = field_along(src, iota, p, order);
      TensorJets out(t, type, Jet(JetLayout::get(t, order), 0.0));
      for (std::size_t f = 0; f < out.size(); ++f) out[f] = pick(along, out.digits(f));
      return out;
    });
  };
  const TensorField eta = restricted(b.omega, {0, 1}, Symmetry::none,
                                     [t](const TensorJets& a, const MultiIndex& d) { return a.at({t, d[0]}); });
  const TensorField g = restricted(b.g, {0, 2}, Symmetry::symmetric,
                                   [](const TensorJets& a, const MultiIndex& d) { return a.at({d[0], d[1]}); });
  const TensorField phi = restricted(b.J, {1, 1}, Symmetry::none,
                                     [](const TensorJets& a, const MultiIndex& d) { return a.at({d[0], d[1]}); });
  return {t0, ContactMetricStructure(eta, g, phi)};
}

ContactMetricStructure induced_contact_on_hypersurface(const SymplecticMetricStructure& b, const TensorField& y,
                                                       const SmoothMap& iota, const Samples& samples) {
  if (!(iota.target() == b.chart())) throw ShapeError("induced_contact_on_hypersurface: ι must map into the chart of B");
  if (iota.source().dim() + 1 != b.chart().dim())
    throw ShapeError("induced_contact_on_hypersurface: ι must parametrize a hypersurface");
  const int m = iota.source().dim();
  const int n = b.chart().dim();
  const SymplecticMetricStructure bb = b;
  // Jacobian columns dι(∂_a) as jets of the given order.
  auto jacobian = [iota, n, m](std::span<const double> p, int order) {
    const auto fj = iota.jets(p, order + 1);
    std::vector<Jet> d;
    for (int mu = 0; mu < n; ++mu)
      for (int a = 0; a < m; ++a) d.push_back(fj[static_cast<std::size_t>(mu)].partial(a));
    return d;  // d[mu*m + a]
  };
  for (const auto& p : samples) {
    const auto q = iota.apply(p);
    const Mat g = as_matrix(b.g.value(q));
    const Vec yv = as_vector(y.value(q));
    if (std::abs(yv.dot(g * yv) - 1.0) > 1e-8)
      throw PreconditionError("induced_contact_on_hypersurface: Y is not a unit field");
    const auto d = jacobian(p, 0);
    for (int a = 0; a < m; ++a) {
      Vec col(n);
      for (int mu = 0; mu < n; ++mu) col(mu) = d[static_cast<std::size_t>(mu * m + a)].value();
      if (std::abs(yv.dot(g * col)) > 1e-8)
        throw PreconditionError("induced_contact_on_hypersurface: Y is not orthogonal to the hypersurface");
    }
  }
  const TensorField eta = pullback(iota, interior_product(y, b.omega));
  const TensorField g = pullback(iota, b.g).with_symmetry(Symmetry::symmetric);
  // φ = (ι*ḡ)^{-1} dιᵀ ḡ J dι, the tangential part of J (Y ⟂ dι drops the normal part)
  const TensorField phi(iota.source(), {1, 1}, Symmetry::none,
                        [bb, iota, jacobian, n, m](std::span<const double> p, int order) {
                          const auto d = jacobian(p, order);
                          const TensorJets G = field_along(bb.g, iota, p, order);
                          const TensorJets J = field_along(bb.J, iota, p, order);
                          const Jet zero(JetLayout::get(m, order), 0.0);
                          auto D = [&](int mu, int a) -> const Jet& { return d[static_cast<std::size_t>(mu * m + a)]; };
                          // GD = ḡ dι (n×m), JD = J dι (n×m)
                          SmallMatrix<Jet> GD(n, m, zero), JD(n, m, zero);
                          for (int mu = 0; mu < n; ++mu)
                            for (int a = 0; a < m; ++a)
                              for (int nu = 0; nu < n; ++nu) {
                                GD(mu, a) += G.at({mu, nu}) * D(nu, a);
                                JD(mu, a) += J.at({mu, nu}) * D(nu, a);
                              }
                          SmallMatrix<Jet> gi(m, m, zero), rhs(m, m, zero);
                          for (int a = 0; a < m; ++a)
                            for (int c = 0; c < m; ++c)
                              for (int mu = 0; mu < n; ++mu) {
                                gi(a, c) += D(mu, a) * GD(mu, c);
                                rhs(a, c) += GD(mu, a) * JD(mu, c);
                              }
                          const SmallMatrix<Jet> x = solve(gi, rhs);
                          TensorJets out(m, {1, 1}, zero);
                          for (int a = 0; a < m; ++a)
                            for (int c = 0; c < m; ++c) out.at({a, c}) = x(a, c);
                          return out;
                        });
  return ContactMetricStructure(eta, g, phi);
}

TensorField natural_acs(const MetricSymplectization& b) {
  const Chart& product = b.chart();
  const TensorField eta = lift_to_product(b.base.eta(), product);
  const TensorField xi = lift_to_product(b.base.xi(), product);
  return b.phi + tensor_product(b.dt, eta) - tensor_product(xi, TensorField::coordinate_form(product, b.t_index));
}

TensorField acs_metric(const TensorField& omega, const TensorField& J) {
  // g_ab = ω_cb J^c_a
  return contract(tensor_product(J, omega), 0, 1);
}

TensorField nijenhuis(const TensorField& J) {
  if (!(J.type() == TensorType{1, 1})) throw ShapeError("nijenhuis: J must be a (1,1) field");
  return TensorField(J.chart(), {1, 2}, Symmetry::none, [J](std::span<const double> p, int order) {
    const TensorJets a = J.jets(p, order + 1);
    const int n = static_cast<int>(p.size());
    std::vector<Jet> v;
    v.reserve(a.size());
    for (std::size_t f = 0; f < a.size(); ++f) v.push_back(a[f].truncated(order));
    auto A = [&](int i, int j) -> const Jet& { return v[static_cast<std::size_t>(i * n + j)]; };
    TensorJets out(n, {1, 2}, Jet(JetLayout::get(n, order), 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Jet& r = out.at({i, j, k});
          for (int l = 0; l < n; ++l) {
            r += A(l, j) * a.at({i, k}).partial(l) - A(l, k) * a.at({i, j}).partial(l);
            r += A(i, l) * (a.at({l, j}).partial(k) - a.at({l, k}).partial(j));
          }
        }
    return out;
  });
}

Report nijenhuis_norm(const TensorField& J, const Samples& samples, double threshold, Exec exec) {
  const TensorField N = nijenhuis(J);
  const auto res = sweep<double>(samples, [&](const Point& p) {
    double m = 0.0;
    const TensorValue v = N.value(p);
    for (double c : v.data()) m = std::max(m, std::abs(c));
    return m;
  }, exec);
  Report rep;
  rep.add("nijenhuis", max_of(res), threshold);
  return rep;
}

Report translation_isomorphism_check(const ContactMetricStructure& s, double t_shift, int samples,
                                     std::uint64_t seed, Interval t_range, Exec exec) {
  const MetricSymplectization shifted =
      build_metric_symplectization(s, {t_range.lo + t_shift, t_range.hi + t_shift});
  const MetricSymplectization target = build_metric_symplectization(d_homothety(s, std::exp(2.0 * t_shift)), t_range);
  const int t = target.t_index;
  std::vector<Expr> coords;
  for (int i = 0; i < t; ++i) coords.push_back(Expr::var(i));
  coords.push_back(Expr::var(t) + t_shift);
  const SmoothMap tau = SmoothMap::from_exprs(target.chart(), shifted.chart(), coords);
  const TensorField pw = pullback(tau, shifted.omega);
  const TensorField pg = pullback(tau, shifted.g);
  const auto rows = sweep<std::vector<double>>(target.chart().sample(samples, seed), [&](const Point& p) {
    return std::vector<double>{max_abs(Mat(as_matrix(pw.value(p)) - as_matrix(target.omega.value(p)))),
                               max_abs(Mat(as_matrix(pg.value(p)) - as_matrix(target.g.value(p))))};
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("translation_omega", m.at(0), 1e-8);
  rep.add("translation_metric", m.at(1), 1e-8);
  return rep;
}

}  // namespace metsymp
