#include "metsymp/submersion.hpp"

#include <cmath>

#include "metsymp/errors.hpp"

namespace metsymp {

namespace {

using Mat = Eigen::MatrixXd;

double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Σ t^k_ij x^i y^j for a (1,2) value.
Vec apply12(const TensorValue& t, const Vec& x, const Vec& y) {
  const int n = t.dim();
  Vec out = Vec::Zero(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (x(i) == 0.0) continue;
      for (int j = 0; j < n; ++j) out(k) += t.at({k, i, j}) * x(i) * y(j);
    }
  return out;
}

// Σ t^k_aij d^a x^i y^j for a (1,3) value whose first covariant slot is the
// differentiation slot.
Vec apply13(const TensorValue& t, const Vec& d, const Vec& x, const Vec& y) {
  const int n = t.dim();
  Vec out = Vec::Zero(n);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a) {
      if (d(a) == 0.0) continue;
      for (int i = 0; i < n; ++i) {
        if (x(i) == 0.0) continue;
        for (int j = 0; j < n; ++j) out(k) += t.at({k, a, i, j}) * d(a) * x(i) * y(j);
      }
    }
  return out;
}

Point base_point(const MetricSymplectization& b, const Point& p) {
  return Point(p.begin(), p.begin() + b.t_index);
}

Samples base_points(const MetricSymplectization& b, const Samples& samples) {
  Samples out;
  for (const auto& p : samples) out.push_back(base_point(b, p));
  return out;
}

// ∇_{D E₁}(Q₁ E₂) projected by P₁ plus ∇_{D E₁}(Q₂ E₂) projected by P₂, for
// coordinate fields E₁, E₂.
TensorField oneill_field(const MetricSymplectization& b, const TensorField& dir) {
  const TensorField H = horizontal_projection(b);
  const TensorField V = vertical_projection(b);
  const TensorField gamma = christoffel_field(b.g);
  return TensorField(b.chart(), {1, 2}, Symmetry::none, [H, V, dir, gamma](std::span<const double> p, int order) {
    const int n = static_cast<int>(p.size());
    const TensorJets hj = H.jets(p, order + 1);
    const TensorJets vj = V.jets(p, order + 1);
    const TensorJets dj = dir.jets(p, order);
    const TensorJets G = gamma.jets(p, order);
    const Jet zero(JetLayout::get(n, order), 0.0);
    auto h = [&](int i, int j) { return hj.at({i, j}).truncated(order); };
    auto v = [&](int i, int j) { return vj.at({i, j}).truncated(order); };
    // W1^m_aj = ∇_a(V∂_j)^m, W2^m_aj = ∇_a(H∂_j)^m
    std::vector<Jet> w1(static_cast<std::size_t>(n * n * n), zero), w2 = w1;
    auto at = [n](int m, int a, int j) { return static_cast<std::size_t>((m * n + a) * n + j); };
    for (int m = 0; m < n; ++m)
      for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j) {
          Jet x = vj.at({m, j}).partial(a), y = hj.at({m, j}).partial(a);
          for (int c = 0; c < n; ++c) {
            x += G.at({m, a, c}) * v(c, j);
            y += G.at({m, a, c}) * h(c, j);
          }
          w1[at(m, a, j)] = std::move(x);
          w2[at(m, a, j)] = std::move(y);
        }
    // inner^k_aj = H^k_m W1^m_aj + V^k_m W2^m_aj
    std::vector<Jet> inner(static_cast<std::size_t>(n * n * n), zero);
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < n; ++m) {
        const Jet hk = h(k, m), vk = v(k, m);
        for (int a = 0; a < n; ++a)
          for (int j = 0; j < n; ++j) inner[at(k, a, j)] += hk * w1[at(m, a, j)] + vk * w2[at(m, a, j)];
      }
    TensorJets out(n, {1, 2}, zero);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) {
          const Jet& d = dj.at({a, i});
          for (int j = 0; j < n; ++j) out.at({k, i, j}) += d * inner[at(k, a, j)];
        }
    return out;
  });
}

}  // namespace

TensorField horizontal_projection(const MetricSymplectization& b) {
  // H^a_b = δ^t_b ḡ^{at}/ḡ^{tt}: projection onto grad t along the slices
  const TensorField ginv = inverse_metric(b.g);
  const int t = b.t_index;
  return TensorField(b.chart(), {1, 1}, Symmetry::none, [ginv, t](std::span<const double> p, int order) {
    const TensorJets gi = ginv.jets(p, order);
    const int n = static_cast<int>(p.size());
    TensorJets out(n, {1, 1}, Jet(JetLayout::get(n, order), 0.0));
    const Jet inv_tt = 1.0 / gi.at({t, t});
    for (int a = 0; a < n; ++a) out.at({a, t}) = gi.at({a, t}) * inv_tt;
    return out;
  });
}

TensorField vertical_projection(const MetricSymplectization& b) {
  return TensorField::identity(b.chart()) - horizontal_projection(b);
}

std::pair<Vec, Vec> split(const MetricSymplectization& b, const Vec& v, std::span<const double> p) {
  const Vec h = as_matrix(horizontal_projection(b).value(p)) * v;
  return {h, v - h};
}

TensorField oneill_T(const MetricSymplectization& b) { return oneill_field(b, vertical_projection(b)); }
TensorField oneill_A(const MetricSymplectization& b) { return oneill_field(b, horizontal_projection(b)); }

Vec oneill_T(const MetricSymplectization& b, const Vec& e1, const Vec& e2, std::span<const double> p) {
  return apply12(oneill_T(b).value(p), e1, e2);
}

Vec oneill_A(const MetricSymplectization& b, const Vec& e1, const Vec& e2, std::span<const double> p) {
  return apply12(oneill_A(b).value(p), e1, e2);
}

SubmersionFrame submersion_frame(const MetricSymplectization& b, std::span<const double> p) {
  const Mat g = as_matrix(b.g.value(p));
  const Mat H = as_matrix(horizontal_projection(b).value(p));
  const Vec xi_t = as_vector(b.xi_t.value(p));
  const Vec normal = H.col(b.t_index);
  const auto f = orthonormal_frame(g, {xi_t, normal});
  SubmersionFrame out;
  out.point.assign(p.begin(), p.end());
  out.horizontal = f[1];
  for (std::size_t i = 0; i < f.size(); ++i)
    if (i != 1) out.vertical.push_back(f[i]);
  return out;
}

Report verify_lemma_T(const MetricSymplectization& b, const Samples& samples, Exec exec) {
  const TensorField T = oneill_T(b), A = oneill_A(b);
  const int n = b.chart().dim(), t = b.t_index;
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    const TensorValue tv = T.value(p), av = A.value(p);
    const Mat g = as_matrix(b.g.value(p));
    const Vec eta = as_vector(b.eta_t.value(p)), xi = as_vector(b.xi_t.value(p));
    const Vec dt = Vec::Unit(n, t);
    std::vector<double> m(4, 0.0);
    for (int i = 0; i < t; ++i) {
      const Vec X = Vec::Unit(n, i);
      for (int j = 0; j < t; ++j) {
        const Vec Y = Vec::Unit(n, j);
        m[0] = std::max(m[0], max_abs(Vec(apply12(tv, X, Y) + (g(i, j) + eta(i) * eta(j)) * dt)));
      }
      m[1] = std::max(m[1], max_abs(Vec(apply12(tv, X, dt) - (X + eta(i) * xi))));
    }
    for (int i = 0; i < n; ++i) m[2] = std::max(m[2], max_abs(apply12(tv, dt, Vec::Unit(n, i))));
    for (double c : av.data()) m[3] = std::max(m[3], std::abs(c));
    return m;
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("T_vertical_vertical", m.at(0), 1e-7);
  rep.add("T_vertical_dt", m.at(1), 1e-7);
  rep.add("T_horizontal_zero", m.at(2), 1e-10);
  rep.add("A_zero", m.at(3), 1e-8);
  return rep;
}

Report verify_oneill_curvature(const MetricSymplectization& b, const Samples& samples, Exec exec) {
  const TensorField R = riemann_tensor(b.g);
  const TensorField T = oneill_T(b);
  const TensorField nT = nabla(b.g, T);
  const int n = b.chart().dim(), t = b.t_index;
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    const Point x = base_point(b, p);
    const auto slice = slice_structure(b, p[static_cast<std::size_t>(t)]).structure;
    const TensorValue rt = riemann_tensor(slice.g()).value(x);
    const Mat gt = as_matrix(slice.g().value(x));
    const TensorValue r = R.value(p), tv = T.value(p), ntv = nT.value(p);
    const Mat g = as_matrix(b.g.value(p));
    auto G = [&](const Vec& u, const Vec& v) { return u.dot(g * v); };
    auto Rg = [&](const Vec& a, const Vec& b2, const Vec& c, const Vec& d) { return G(apply_riemann(r, a, b2, c), d); };
    auto Tv = [&](const Vec& a, const Vec& c) { return apply12(tv, a, c); };
    auto nTv = [&](const Vec& d, const Vec& a, const Vec& c) { return apply13(ntv, d, a, c); };
    const Vec X = Vec::Unit(n, t);
    std::vector<Vec> V;
    for (int i = 0; i < t; ++i) V.push_back(Vec::Unit(n, i));
    std::vector<double> m(4, 0.0);
    auto upd = [&](int k, double d) { m[static_cast<std::size_t>(k)] = std::max(m[static_cast<std::size_t>(k)], std::abs(d)); };
    for (const auto& v1 : V)
      for (const auto& v2 : V)
        for (const auto& v3 : V) {
          const Vec rt123 = apply_riemann(rt, v1.head(t), v2.head(t), v3.head(t));
          for (const auto& v4 : V) {
            const double rhs = v4.head(t).dot(gt * rt123) + G(Tv(v1, v3), Tv(v2, v4)) - G(Tv(v2, v3), Tv(v1, v4));
            upd(0, Rg(v1, v2, v3, v4) - rhs);
          }
          upd(1, Rg(v1, v2, v3, X) - (G(nTv(v1, v2, v3), X) - G(nTv(v2, v1, v3), X)));
        }
    for (const auto& v1 : V)
      for (const auto& v2 : V) {
        upd(2, Rg(X, v1, X, v2) - (G(Tv(v1, X), Tv(v2, X)) - G(nTv(X, v1, v2), X)));
        upd(3, Rg(v1, v2, X, X) - (G(Tv(v1, X), Tv(v2, X)) - G(Tv(v2, X), Tv(v1, X))));
      }
    return m;
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("oneill_vvvv", m.at(0), 1e-6);
  rep.add("oneill_vvvx", m.at(1), 1e-6);
  rep.add("oneill_xvxv", m.at(2), 1e-6);
  rep.add("oneill_vvxx", m.at(3), 1e-6);
  return rep;
}

Report verify_currel(const MetricSymplectization& b, const Samples& samples, Exec exec) {
  const TensorField R = riemann_tensor(b.g);
  const TensorField Vp = vertical_projection(b);
  const int n = b.chart().dim(), t = b.t_index;
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    const Point x = base_point(b, p);
    const auto s = slice_structure(b, p[static_cast<std::size_t>(t)]).structure;
    const TensorValue rt = riemann_tensor(s.g()).value(x);
    const Mat gt = as_matrix(s.g().value(x)), phi = as_matrix(s.phi().value(x)), h = as_matrix(s.h().value(x));
    const Vec eta = as_vector(s.eta().value(x)), xi = as_vector(s.xi().value(x));
    const TensorValue r = R.value(p);
    const Mat g = as_matrix(b.g.value(p)), vp = as_matrix(Vp.value(p));
    const Vec dt = Vec::Unit(n, t);
    auto lift = [&](const Vec& v) {
      Vec out = Vec::Zero(n);
      out.head(t) = v;
      return out;
    };
    auto Gt = [&](const Vec& u, const Vec& v) { return u.dot(gt * v); };
    std::vector<double> m(4, 0.0);
    auto upd = [&](int k, double d) { m[static_cast<std::size_t>(k)] = std::max(m[static_cast<std::size_t>(k)], std::abs(d)); };
    for (int i = 0; i < t; ++i) {
      const Vec X = Vec::Unit(t, i);
      const double ex = eta.dot(X);
      for (int j = 0; j < t; ++j) {
        const Vec Y = Vec::Unit(t, j);
        const double ey = eta.dot(Y);
        for (int k = 0; k < t; ++k) {
          const Vec Z = Vec::Unit(t, k);
          const Vec rb = apply_riemann(r, lift(X), lift(Y), lift(Z));
          const Vec vert = vp * rb;
          const Vec rhs1 = apply_riemann(rt, X, Y, Z) + Gt(X + ex * xi, Z) * Y - Gt(Y + ey * xi, Z) * X +
                           Gt(ey * X - ex * Y, Z) * xi;
          upd(0, max_abs(Vec(vert.head(t) - rhs1)));
          upd(0, std::abs(vert(t)));
          const double rhs2 = -Gt(phi * Z, ey * X - ex * Y + ey * (h * X) - ex * (h * Y)) +
                              2.0 * eta.dot(Z) * Gt(Y, phi * X);
          upd(1, rb.dot(g * dt) - rhs2);
        }
        upd(2, apply_riemann(r, dt, lift(X), dt).dot(g * lift(Y)) - (Gt(X, Y) + 3.0 * ex * ey));
        upd(3, apply_riemann(r, lift(X), lift(Y), dt).dot(g * dt));
      }
    }
    return m;
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("currel_vertical", m.at(0), 1e-6);
  rep.add("currel_horizontal", m.at(1), 1e-6);
  rep.add("currel_dt_x_dt", m.at(2), 1e-6);
  rep.add("currel_x_y_dt_dt", m.at(3), 1e-8);
  return rep;
}

Report verify_ricci_relations(const MetricSymplectization& b, const Samples& samples, Exec exec) {
  const TensorField ric = ricci_tensor(b.g);
  const int t = b.t_index;
  const double nn = b.base.n();
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    const Point x = base_point(b, p);
    const auto s = slice_structure(b, p[static_cast<std::size_t>(t)]).structure;
    const Mat rict = as_matrix(ricci_tensor(s.g()).value(x));
    const Mat rb = as_matrix(ric.value(p));
    const SubmersionFrame f = submersion_frame(b, p);
    const Vec& xi = f.vertical[0];
    const Vec& dt = f.horizontal;
    const std::vector<Vec> e(f.vertical.begin() + 1, f.vertical.end());
    auto Rb = [&](const Vec& u, const Vec& v) { return u.dot(rb * v); };
    auto Rt = [&](const Vec& u, const Vec& v) { return u.head(t).dot(rict * v.head(t)); };
    std::vector<double> m(7, 0.0);
    auto upd = [&](int k, double d) { m[static_cast<std::size_t>(k)] = std::max(m[static_cast<std::size_t>(k)], std::abs(d)); };
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = 0; j < e.size(); ++j) {
        const double delta = i == j ? 1.0 : 0.0;
        upd(0, Rb(e[i], e[j]) - (Rt(e[i], e[j]) - (2 * nn + 4) * delta));
        upd(1, Rb(e[i], e[j]) - (Rt(e[i], e[j]) - (2 * nn + 2) * delta));
      }
      upd(2, Rb(e[i], xi) - Rt(e[i], xi));
      upd(3, Rb(e[i], dt));
    }
    upd(4, Rb(xi, dt));
    upd(5, Rb(xi, xi) - (Rt(xi, xi) - 4 * nn - 4));
    upd(6, Rb(dt, dt) + 2 * nn + 4);
    return m;
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("ricci_ei_ej", m.at(0), 1e-6);
  rep.add("ricci_ei_ej_corrected", m.at(1), 1e-6);
  rep.add("ricci_ei_xi", m.at(2), 1e-6);
  rep.add("ricci_ei_dt", m.at(3), 1e-6);
  rep.add("ricci_xi_dt", m.at(4), 1e-7);
  rep.add("ricci_xi_xi", m.at(5), 1e-6);
  rep.add("ricci_dt_dt", m.at(6), 1e-6);
  return rep;
}

SymplectizationKmu fit_symplectization_kmu(const MetricSymplectization& b, double t, const Samples& samples,
                                           Exec exec) {
  const SliceStructure slice = slice_structure(b, t);
  const ContactMetricStructure& s = slice.structure;
  const TensorField R = riemann_tensor(b.g);
  const TensorField Vp = vertical_projection(b);
  const int m = b.t_index, n = b.chart().dim();
  struct Rows {
    std::vector<Vec> a, bb, l;
    double hmax = 0.0;
  };
  const auto data = sweep<Rows>(samples, [&](const Point& x) {
    Point p = x;
    p.push_back(t);
    const Mat h = as_matrix(s.h().value(x));
    const Vec eta = as_vector(s.eta().value(x));
    Vec xi = Vec::Zero(n);
    xi.head(m) = as_vector(s.xi().value(x));
    const TensorValue r = R.value(p);
    const Mat vp = as_matrix(Vp.value(p));
    Rows out;
    out.hmax = h.cwiseAbs().maxCoeff();
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const Vec v = eta(j) * Vec::Unit(m, i) - eta(i) * Vec::Unit(m, j);
        out.a.push_back(v);
        out.bb.push_back(h * v);
        out.l.push_back((vp * apply_riemann(r, Vec::Unit(n, i), Vec::Unit(n, j), xi)).head(m));
      }
    return out;
  }, exec);
  std::vector<Vec> a, bb, l;
  double hmax = 0.0;
  for (const auto& d : data) {
    hmax = std::max(hmax, d.hmax);
    a.insert(a.end(), d.a.begin(), d.a.end());
    bb.insert(bb.end(), d.bb.begin(), d.bb.end());
    l.insert(l.end(), d.l.begin(), d.l.end());
  }
  const ColumnFit fit = fit_columns(a, bb, l, hmax >= kHVanish);
  SymplectizationKmu out;
  out.t = t;
  out.kappa_tilde = fit.kappa;
  out.mu_tilde = fit.mu;
  out.residual = fit.residual;
  out.slice = fit_kappa_mu(s, samples, exec);
  return out;
}

Report verify_ricci_negative(const MetricSymplectization& b, const Samples& samples, Exec exec) {
  const TensorField ric = ricci_tensor(b.g);
  const int t = b.t_index;
  const double nn = b.base.n();
  const auto res = sweep<double>(samples, [&](const Point& p) {
    const Mat rb = as_matrix(ric.value(p));
    Mat target = Mat::Zero(rb.rows(), rb.cols());
    target(t, t) = -(2 * nn + 4);
    return (rb - target).cwiseAbs().maxCoeff();
  }, exec);
  const Samples base = base_points(b, samples);
  const bool sasakian = is_K_contact(b.base, base, exec).passed();
  Report rep;
  if (sasakian) rep.note("ricci_excess", max_of(res));
  else rep.add("ricci_excess", max_of(res), 1e-3, true);
  for (double t0 : {-0.5, 0.0, 0.5}) {
    if (t0 < b.t_range.lo || t0 > b.t_range.hi) continue;
    const auto fit = eta_einstein_fit(slice_structure(b, t0).structure, base, exec);
    rep.note("eta_einstein_residual_t" + std::to_string(t0).substr(0, t0 < 0 ? 4 : 3), fit.residual);
  }
  // Under Ric̄ = (−2n−4)dt² the Ricci table gives Ric^t = αg_t + βη_t⊗η_t
  // with α + β = 4n+4. With the stated e_i e_j coefficient α = 2n+4, so
  // β = 2n rather than the stated β = 4n+4 (with −(2n+2) it is α = β = 2n+2).
  // The η_t-Einstein conclusion is unaffected.
  rep.note("eta_einstein_beta_stated_minus_implied", (4 * nn + 4) - 2 * nn);
  return rep;
}

}  // namespace metsymp
