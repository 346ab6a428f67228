#include "metsymp/curvature.hpp"

#include <cmath>

#include "metsymp/errors.hpp"
#include "metsymp/linalg.hpp"

namespace metsymp {

namespace {

void require_metric(const TensorField& g, const char* what) {
  if (!(g.type() == TensorType{0, 2})) throw ShapeError(std::string(what) + ": metric must be a (0,2) field");
}

TensorJets zeros(int dim, TensorType type, int order) {
  return TensorJets(dim, type, Jet(JetLayout::get(dim, order), 0.0));
}

}  // namespace

TensorField christoffel_field(const TensorField& g) {
  require_metric(g, "christoffel");
  return TensorField(g.chart(), {1, 2}, Symmetry::symmetric, [g](std::span<const double> p, int order) {
    const TensorJets gj = g.jets(p, order + 1);
    const int n = static_cast<int>(p.size());
    const Jet zero(JetLayout::get(n, order), 0.0);
    SmallMatrix<Jet> m(n, n, zero);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = gj.at({i, j}).truncated(order);
    SmallMatrix<Jet> inv = [&] {
      try {
        return inverse(m, zero, Jet(JetLayout::get(n, order), 1.0));
      } catch (const SingularMatrixError& e) {
        throw SingularMatrixError("degenerate metric: " + std::string(e.what()), e.condition());
      }
    }();
    // first-kind symbols Γ_lij = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij)
    std::vector<Jet> first(static_cast<std::size_t>(n * n * n), zero);
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Jet s = gj.at({j, l}).partial(i) + gj.at({i, l}).partial(j) - gj.at({i, j}).partial(l);
          s *= 0.5;
          first[static_cast<std::size_t>((l * n + i) * n + j)] = s;
        }
    TensorJets out = zeros(n, {1, 2}, order);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Jet s = zero;
          for (int l = 0; l < n; ++l) s += inv(k, l) * first[static_cast<std::size_t>((l * n + i) * n + j)];
          out.at({k, i, j}) = s;
        }
    return out;
  });
}

ChristoffelData christoffel(const TensorField& g, std::span<const double> p) {
  const TensorJets gj = christoffel_field(g).jets(p, 1);
  ChristoffelData c;
  c.point.assign(p.begin(), p.end());
  c.dim = g.dim();
  c.gamma.resize(gj.size());
  c.dgamma.resize(gj.size() * static_cast<std::size_t>(c.dim));
  for (std::size_t f = 0; f < gj.size(); ++f) {
    c.gamma[f] = gj[f].value();
    for (int l = 0; l < c.dim; ++l) c.dgamma[f * static_cast<std::size_t>(c.dim) + static_cast<std::size_t>(l)] = gj[f].d(l);
  }
  return c;
}

TensorField nabla(const TensorField& g, const TensorField& t) {
  require_metric(g, "nabla");
  if (!(g.chart() == t.chart())) throw ShapeError("nabla: fields live on different charts");
  const TensorType tt = t.type();
  const TensorType rt{tt.contra, tt.co + 1};
  if (rt.rank() > kMaxRank) throw ShapeError("nabla: rank too large");
  const TensorField gamma = christoffel_field(g);
  return TensorField(t.chart(), rt, Symmetry::none, [t, gamma, tt, rt](std::span<const double> p, int order) {
    const TensorJets a = t.jets(p, order + 1);
    const TensorJets G = gamma.jets(p, order);
    const int n = static_cast<int>(p.size());
    TensorJets out = zeros(n, rt, order);
    for (std::size_t f = 0; f < out.size(); ++f) {
      const MultiIndex d = out.digits(f);
      const int c = d[static_cast<std::size_t>(tt.contra)];
      MultiIndex ti{};
      for (int s = 0; s < tt.contra; ++s) ti[static_cast<std::size_t>(s)] = d[static_cast<std::size_t>(s)];
      for (int s = 0; s < tt.co; ++s) ti[static_cast<std::size_t>(tt.contra + s)] = d[static_cast<std::size_t>(tt.contra + 1 + s)];
      const std::span<const int> idx(ti.data(), static_cast<std::size_t>(tt.rank()));
      out[f] += a[a.flat(idx)].partial(c);
      for (int s = 0; s < tt.rank(); ++s) {
        const int keep = ti[static_cast<std::size_t>(s)];
        for (int e = 0; e < n; ++e) {
          ti[static_cast<std::size_t>(s)] = e;
          const Jet te = a[a.flat(idx)].truncated(order);
          if (s < tt.contra) out[f] += G.at({keep, c, e}) * te;
          else out[f] -= G.at({e, c, keep}) * te;
        }
        ti[static_cast<std::size_t>(s)] = keep;
      }
    }
    return out;
  });
}

TensorValue covariant_derivative(const TensorField& g, const TensorField& t, std::span<const double> x,
                                 std::span<const double> p) {
  const TensorValue full = nabla(g, t).value(p);
  const TensorType tt = t.type();
  const int n = t.dim();
  if (static_cast<int>(x.size()) != n) throw ShapeError("covariant_derivative: direction has wrong dimension");
  TensorValue out(n, tt, 0.0);
  const std::size_t inner = ipow(n, tt.co);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const std::size_t hi = f / inner, lo = f % inner;
    double s = 0.0;
    for (int c = 0; c < n; ++c)
      s += x[static_cast<std::size_t>(c)] * full[(hi * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)) * inner + lo];
    out[f] = s;
  }
  return out;
}

TensorField riemann_tensor(const TensorField& g) {
  require_metric(g, "riemann");
  const TensorField gamma = christoffel_field(g);
  return TensorField(g.chart(), {1, 3}, Symmetry::none, [gamma](std::span<const double> p, int order) {
    const TensorJets G = gamma.jets(p, order + 1);
    const int n = static_cast<int>(p.size());
    TensorJets out = zeros(n, {1, 3}, order);
    std::vector<Jet> Gt;
    Gt.reserve(G.size());
    for (std::size_t f = 0; f < G.size(); ++f) Gt.push_back(G[f].truncated(order));
    auto g = [&](int k, int i, int j) -> const Jet& { return Gt[static_cast<std::size_t>((k * n + i) * n + j)]; };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            Jet r = G.at({a, d, b}).partial(c) - G.at({a, c, b}).partial(d);
            for (int e = 0; e < n; ++e) r += g(a, c, e) * g(e, d, b) - g(a, d, e) * g(e, c, b);
            out.at({a, b, d, c}) = -r;
            out.at({a, b, c, d}) = std::move(r);
          }
    return out;
  });
}

TensorField ricci_tensor(const TensorField& g) {
  const TensorField r = riemann_tensor(g);
  return TensorField(g.chart(), {0, 2}, Symmetry::none, [r](std::span<const double> p, int order) {
    const TensorJets rj = r.jets(p, order);
    const int n = static_cast<int>(p.size());
    TensorJets out = zeros(n, {0, 2}, order);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int a = 0; a < n; ++a) out.at({x, y}) += rj.at({a, y, a, x});
    return out;
  });
}

Eigen::MatrixXd as_matrix(const TensorValue& t) {
  if (t.rank() != 2) throw ShapeError("as_matrix: rank-2 tensor required");
  const int n = t.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = t.at({i, j});
  return m;
}

Vec as_vector(const TensorValue& t) {
  if (t.rank() != 1) throw ShapeError("as_vector: rank-1 tensor required");
  Vec v(t.dim());
  for (int i = 0; i < t.dim(); ++i) v(i) = t[static_cast<std::size_t>(i)];
  return v;
}

Vec apply_riemann(const TensorValue& r, const Vec& x, const Vec& y, const Vec& z) {
  const int n = r.dim();
  Vec out = Vec::Zero(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (z(b) == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        if (x(c) == 0.0) continue;
        for (int d = 0; d < n; ++d) out(a) += r.at({a, b, c, d}) * z(b) * x(c) * y(d);
      }
    }
  return out;
}

Vec riemann(const TensorField& g, const Vec& x, const Vec& y, const Vec& z, std::span<const double> p) {
  return apply_riemann(riemann_tensor(g).value(p), x, y, z);
}

std::vector<Vec> orthonormal_frame(const Eigen::MatrixXd& gram, const std::vector<Vec>& seeds, double tol) {
  const int n = static_cast<int>(gram.rows());
  std::vector<Vec> frame;
  auto residual = [&](Vec v) {
    for (const auto& e : frame) v -= (e.dot(gram * v)) * e;
    return v;
  };
  auto norm = [&](const Vec& v) { return std::sqrt(std::max(0.0, v.dot(gram * v))); };
  for (const auto& s : seeds) {
    if (static_cast<int>(frame.size()) == n) break;
    Vec r = residual(s);
    const double nr = norm(r);
    if (nr < tol) continue;
    frame.push_back(r / nr);
  }
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  while (static_cast<int>(frame.size()) < n) {
    int best = -1;
    double best_norm = 0.0;
    Vec best_r;
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      Vec r = residual(Vec::Unit(n, i));
      const double nr = norm(r);
      if (nr > best_norm) {
        best = i;
        best_norm = nr;
        best_r = r;
      }
    }
    if (best < 0 || best_norm < tol) throw SingularMatrixError("orthonormal_frame: metric is degenerate", INFINITY);
    used[static_cast<std::size_t>(best)] = true;
    frame.push_back(best_r / best_norm);
  }
  return frame;
}

double ricci(const TensorField& g, const Vec& x, const Vec& y, std::span<const double> p) {
  const Eigen::MatrixXd gram = as_matrix(g.value(p));
  const TensorValue r = riemann_tensor(g).value(p);
  double s = 0.0;
  for (const auto& e : orthonormal_frame(gram, {})) s += e.dot(gram * apply_riemann(r, e, x, y));
  return s;
}

double sectional(const TensorField& g, const Vec& x, const Vec& y, std::span<const double> p) {
  const Eigen::MatrixXd gram = as_matrix(g.value(p));
  const double xx = x.dot(gram * x), yy = y.dot(gram * y), xy = x.dot(gram * y);
  const double den = xx * yy - xy * xy;
  if (!(den > 1e-12 * std::max(1.0, xx * yy))) throw PreconditionError("sectional: X and Y are linearly dependent");
  return x.dot(gram * riemann(g, x, y, y, p)) / den;
}

Report first_bianchi_check(const TensorField& g, const Samples& samples, Exec exec) {
  const TensorField rt = riemann_tensor(g);
  const auto res = sweep<double>(samples, [&](const Point& p) {
    const TensorValue r = rt.value(p);
    const int n = r.dim();
    double m = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            m = std::max(m, std::abs(r.at({a, b, c, d}) + r.at({a, c, d, b}) + r.at({a, d, b, c})));
    return m;
  }, exec);
  Report rep;
  rep.add("first_bianchi", max_of(res), 1e-8);
  return rep;
}

Report riemann_symmetry_check(const TensorField& g, const Samples& samples, Exec exec) {
  const TensorField rt = riemann_tensor(g);
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    const TensorValue r = rt.value(p);
    const Eigen::MatrixXd gram = as_matrix(g.value(p));
    const int n = r.dim();
    std::vector<double> low(ipow(n, 4), 0.0);
    auto L = [&](int a, int b, int c, int d) -> double& { return low[static_cast<std::size_t>(((a * n + b) * n + c) * n + d)]; };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            for (int e = 0; e < n; ++e) L(a, b, c, d) += gram(a, e) * r.at({e, b, c, d});
    std::vector<double> m(4, 0.0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            m[0] = std::max(m[0], std::abs(L(a, b, c, d) + L(a, b, d, c)));
            m[1] = std::max(m[1], std::abs(L(a, b, c, d) + L(b, a, c, d)));
            m[2] = std::max(m[2], std::abs(L(a, b, c, d) - L(c, d, a, b)));
            m[3] = std::max(m[3], std::abs(L(a, b, c, d) + L(a, c, d, b) + L(a, d, b, c)));
          }
    return m;
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("antisymmetry_last_pair", m.at(0), 1e-8);
  rep.add("antisymmetry_first_pair", m.at(1), 1e-8);
  rep.add("pair_symmetry", m.at(2), 1e-8);
  rep.add("first_bianchi", m.at(3), 1e-8);
  return rep;
}

}  // namespace metsymp
