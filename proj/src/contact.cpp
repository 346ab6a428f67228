#include "metsymp/contact.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "metsymp/errors.hpp"
#include "metsymp/linalg.hpp"

namespace metsymp {

namespace {

using Mat = Eigen::MatrixXd;

// Values of the structure at one point, as plain matrices.
struct Frame {
  Vec eta, xi;
  Mat g, phi, Phi, h;
};

Frame frame_at(const ContactMetricStructure& s, const Point& p, bool with_h) {
  Frame f;
  f.eta = as_vector(s.eta().value(p));
  f.xi = as_vector(s.xi().value(p));
  f.g = as_matrix(s.g().value(p));
  f.phi = as_matrix(s.phi().value(p));
  f.Phi = as_matrix(s.Phi().value(p));
  if (with_h) f.h = as_matrix(s.h().value(p));
  return f;
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

void require_type(const TensorField& t, TensorType type, const char* what) {
  if (!(t.type() == type)) throw ShapeError(std::string("contact structure: ") + what + " has the wrong tensor type");
}

// Solves the 2×2 normal equations of a two-parameter least-squares fit.
Eigen::Vector2d solve2(double aa, double ab, double bb, double al, double bl) {
  Eigen::Matrix2d m;
  m << aa, ab, ab, bb;
  return m.fullPivLu().solve(Eigen::Vector2d(al, bl));
}

}  // namespace

TensorField contact_two_form(const TensorField& eta) {
  require_type(eta, {0, 1}, "η");
  return 0.5 * exterior_derivative(eta);
}

TensorField reeb_field(const TensorField& eta) {
  const TensorField Phi = contact_two_form(eta);
  return TensorField(eta.chart(), {1, 0}, Symmetry::none, [eta, Phi](std::span<const double> p, int order) {
    const TensorJets e = eta.jets(p, order);
    const TensorJets F = Phi.jets(p, order);
    const int n = static_cast<int>(p.size());
    const Jet zero(JetLayout::get(n, order), 0.0);
    // Σ_i ξ^i (Φ_ij + η_i η_j) = η_j
    SmallMatrix<Jet> m(n, n, zero);
    std::vector<Jet> rhs(static_cast<std::size_t>(n), zero);
    for (int j = 0; j < n; ++j) {
      rhs[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(j)];
      for (int i = 0; i < n; ++i) m(j, i) = F.at({i, j}) + e[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j)];
    }
    std::vector<Jet> x;
    try {
      x = solve(m, rhs);
    } catch (const SingularMatrixError& err) {
      throw SingularMatrixError("Reeb system is singular (η is not contact here)", err.condition());
    }
    TensorJets out(n, {1, 0}, zero);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::move(x[static_cast<std::size_t>(i)]);
    return out;
  });
}

ContactMetricStructure::ContactMetricStructure(TensorField eta, TensorField g, TensorField phi)
    : eta_(std::move(eta)),
      g_(std::move(g)),
      phi_(std::move(phi)),
      xi_(reeb_field(eta_)),
      Phi_(contact_two_form(eta_)),
      h_(0.5 * lie_derivative(xi_, phi_)) {
  require_type(eta_, {0, 1}, "η");
  require_type(g_, {0, 2}, "g");
  require_type(phi_, {1, 1}, "φ");
  if (!(eta_.chart() == g_.chart()) || !(eta_.chart() == phi_.chart()))
    throw ShapeError("contact structure: fields live on different charts");
  if (eta_.dim() % 2 == 0) throw ShapeError("contact structure: chart must be odd-dimensional");
}

Report verify_contact_form(const TensorField& eta, const Samples& samples, Exec exec) {
  require_type(eta, {0, 1}, "η");
  const int dim = eta.dim();
  if (dim % 2 == 0) throw ShapeError("verify_contact_form: chart must be odd-dimensional");
  const TensorField Phi = contact_two_form(eta);
  TensorField top = eta;
  for (int k = 0; k < (dim - 1) / 2; ++k) top = wedge(top, Phi);
  std::vector<int> idx(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) idx[static_cast<std::size_t>(i)] = i;
  const auto res = sweep<double>(samples, [&](const Point& p) {
    const TensorValue v = top.value(p);
    return std::abs(v[v.flat(idx)]);
  }, exec);
  double m = res.empty() ? 0.0 : INFINITY;
  for (double r : res) m = std::isnan(r) ? r : std::min(m, r);
  Report rep;
  rep.add("contact_volume", m, 1e-8, true);
  return rep;
}

std::vector<double> solve_reeb(const TensorField& eta, std::span<const double> p) {
  return reeb_field(eta).value(p).data();
}

Report verify_compatibility(const ContactMetricStructure& s, const Samples& samples, Exec exec) {
  const int n = s.dim();
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    const Frame f = frame_at(s, p, false);
    const Mat id = Mat::Identity(n, n);
    return std::vector<double>{
        std::abs(f.eta.dot(f.xi) - 1.0),
        max_abs(Vec(f.xi.transpose() * f.Phi)),
        max_abs(Vec(f.g * f.xi - f.eta)),
        max_abs(Mat(f.phi * f.phi + id - f.xi * f.eta.transpose())),
        max_abs(Mat(f.Phi - f.g * f.phi)),
        max_abs(Vec(f.phi * f.xi)),
    };
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("eta_xi", m.at(0), 1e-8);
  rep.add("xi_in_kernel", m.at(1), 1e-8);
  rep.add("metric_reeb", m.at(2), 1e-8);
  rep.add("phi_squared", m.at(3), 1e-8);
  rep.add("dEta_vs_g_phi", m.at(4), 1e-8);
  rep.add("phi_xi", m.at(5), 1e-8);
  return rep;
}

TensorField compute_h(const ContactMetricStructure& s) { return s.h(); }

Report is_K_contact(const ContactMetricStructure& s, const Samples& samples, Exec exec) {
  const auto res = sweep<double>(samples, [&](const Point& p) { return max_abs(as_matrix(s.h().value(p))); }, exec);
  Report rep;
  rep.add("h_norm", max_of(res), kHVanish);
  return rep;
}

Report verify_h_identities(const ContactMetricStructure& s, const Samples& samples, std::optional<double> kappa,
                           Exec exec) {
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    const Frame f = frame_at(s, p, true);
    const Mat gh = f.g * f.h;
    std::vector<double> r{
        max_abs(Mat(f.h * f.phi + f.phi * f.h)),
        std::abs(f.h.trace()),
        max_abs(Vec(f.h * f.xi)),
        max_abs(Mat(gh - gh.transpose())),
    };
    if (kappa) r.push_back(max_abs(Mat(f.h * f.h + (1.0 - *kappa) * f.phi * f.phi)));
    return r;
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("h_phi_anticommute", m.at(0), 1e-8);
  rep.add("h_trace", m.at(1), 1e-8);
  rep.add("h_xi", m.at(2), 1e-8);
  rep.add("h_symmetric", m.at(3), 1e-8);
  if (kappa) rep.add("h_squared", m.at(4), 1e-6);
  return rep;
}

ColumnFit fit_columns(const std::vector<Vec>& a, const std::vector<Vec>& b, const std::vector<Vec>& l, bool with_mu) {
  double aa = 0, ab = 0, bb = 0, al = 0, bl = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    aa += a[k].dot(a[k]);
    ab += a[k].dot(b[k]);
    bb += b[k].dot(b[k]);
    al += a[k].dot(l[k]);
    bl += b[k].dot(l[k]);
  }
  ColumnFit fit;
  double mu = 0.0;
  if (!with_mu) {
    fit.kappa = aa > 0 ? al / aa : NAN;
  } else {
    const Eigen::Vector2d km = solve2(aa, ab, bb, al, bl);
    fit.kappa = km(0);
    mu = km(1);
    fit.mu = mu;
  }
  for (std::size_t k = 0; k < a.size(); ++k)
    fit.residual = std::max(fit.residual, max_abs(Vec(l[k] - fit.kappa * a[k] - mu * b[k])));
  return fit;
}

KmuReport fit_kappa_mu(const ContactMetricStructure& s, const Samples& samples, Exec exec) {
  const TensorField rt = riemann_tensor(s.g());
  const int n = s.dim();
  // Per sample: the fit columns A = η(Y)X − η(X)Y, B = hA and the data
  // L = R(X,Y)ξ for every coordinate pair X = ∂_i, Y = ∂_j (i < j).
  struct Rows {
    std::vector<Vec> a, b, l;
    double hmax = 0.0;
  };
  const auto data = sweep<Rows>(samples, [&](const Point& p) {
    const Frame f = frame_at(s, p, true);
    const TensorValue r = rt.value(p);
    Rows out;
    out.hmax = max_abs(f.h);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Vec v = f.eta(j) * Vec::Unit(n, i) - f.eta(i) * Vec::Unit(n, j);
        out.a.push_back(v);
        out.b.push_back(f.h * v);
        out.l.push_back(apply_riemann(r, Vec::Unit(n, i), Vec::Unit(n, j), f.xi));
      }
    return out;
  }, exec);
  std::vector<Vec> a, b, l;
  double hmax = 0.0;
  for (const auto& d : data) {
    hmax = std::max(hmax, d.hmax);
    a.insert(a.end(), d.a.begin(), d.a.end());
    b.insert(b.end(), d.b.begin(), d.b.end());
    l.insert(l.end(), d.l.begin(), d.l.end());
  }
  const ColumnFit fit = fit_columns(a, b, l, hmax >= kHVanish);
  KmuReport rep;
  rep.kappa = fit.kappa;
  rep.mu = fit.mu;
  rep.residual = fit.residual;
  if (1.0 - rep.kappa > 1e-8) rep.lambda = std::sqrt(1.0 - rep.kappa);
  rep.sasakian = !rep.mu && std::abs(rep.kappa - 1.0) < 1e-6 && rep.residual < 1e-6;
  return rep;
}

ContactMetricStructure d_homothety(const ContactMetricStructure& s, double a) {
  if (!(a > 0)) throw PreconditionError("d_homothety: a must be positive");
  const TensorField ee = tensor_product(s.eta(), s.eta());
  const TensorField g = (a * s.g() + (a * (a - 1.0)) * ee).with_symmetry(Symmetry::symmetric);
  return ContactMetricStructure(a * s.eta(), g, s.phi());
}

double homothety_kappa(double kappa, double a) { return (kappa + a * a - 1.0) / (a * a); }
double homothety_mu(double mu, double a) { return (mu + 2.0 * a - 2.0) / a; }

double boeckx_index(double kappa, double mu) {
  if (!(1.0 - kappa > 1e-8)) throw PreconditionError("boeckx_index: undefined for κ ≥ 1 (Sasakian)");
  return (1.0 - mu / 2.0) / std::sqrt(1.0 - kappa);
}

HEigen h_eigendecomposition(const ContactMetricStructure& s, std::span<const double> p) {
  const Mat h = as_matrix(s.h().value(p));
  if (max_abs(h) < kHVanish) throw PreconditionError("h_eigendecomposition: h vanishes (Sasakian case)");
  const Mat g = as_matrix(s.g().value(p));
  const Mat gh = g * h;
  const Mat sym = 0.5 * (gh + gh.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(sym, g);
  if (es.info() != Eigen::Success) throw SingularMatrixError("h_eigendecomposition: eigen solver failed", INFINITY);
  const int n = static_cast<int>(h.rows());
  HEigen out;
  for (int k = n - 1; k >= 0; --k) {
    out.values.push_back(es.eigenvalues()(k));
    Vec v = es.eigenvectors().col(k);
    for (int i = 0; i < n; ++i)
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    out.vectors.push_back(v);
  }
  out.lambda = std::max(std::abs(out.values.front()), std::abs(out.values.back()));
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const double v = out.values[k];
    if (v > out.lambda / 2) out.plus.push_back(out.vectors[k]);
    else if (v < -out.lambda / 2) out.minus.push_back(out.vectors[k]);
    else out.zero.push_back(out.vectors[k]);
  }
  return out;
}

Report verify_kmu_curvature(const ContactMetricStructure& s, double kappa, double mu, const Samples& samples,
                            Exec exec) {
  if (!(1.0 - kappa > 1e-8)) throw PreconditionError("verify_kmu_curvature: requires a non-Sasakian structure");
  const double lam = std::sqrt(1.0 - kappa);
  const TensorField rt = riemann_tensor(s.g());
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    const HEigen e = h_eigendecomposition(s, p);
    const TensorValue r = rt.value(p);
    const Mat g = as_matrix(s.g().value(p));
    const Mat phi = as_matrix(s.phi().value(p));
    auto G = [&](const Vec& a, const Vec& b) { return a.dot(g * b); };
    auto R = [&](const Vec& x, const Vec& y, const Vec& z) { return apply_riemann(r, x, y, z); };
    std::vector<double> m(6, 0.0);
    auto upd = [&](int k, const Vec& d) { m[static_cast<std::size_t>(k)] = std::max(m[static_cast<std::size_t>(k)], max_abs(d)); };
    const auto& P = e.plus;
    const auto& M = e.minus;
    auto mixed = [&](int k, const std::vector<Vec>& A, const std::vector<Vec>& B) {
      for (const auto& X : A)
        for (const auto& Y : A)
          for (const auto& Z : B)
            upd(k, R(X, Y, Z) - (kappa - mu) * (G(phi * Y, Z) * (phi * X) - G(phi * X, Z) * (phi * Y)));
    };
    mixed(0, P, M);
    mixed(1, M, P);
    for (const auto& X : P)
      for (const auto& Y : M) {
        for (const auto& Z : M)
          upd(2, R(X, Y, Z) - (kappa * G(phi * X, Z) * (phi * Y) + mu * G(phi * X, Y) * (phi * Z)));
        for (const auto& Z : P)
          upd(3, R(X, Y, Z) - (-kappa * G(phi * Y, Z) * (phi * X) - mu * G(phi * Y, X) * (phi * Z)));
      }
    auto internal = [&](int k, const std::vector<Vec>& A, double c) {
      for (const auto& X : A)
        for (const auto& Y : A)
          for (const auto& Z : A) upd(k, R(X, Y, Z) - c * (G(Y, Z) * X - G(X, Z) * Y));
    };
    internal(4, P, 2.0 * (1.0 + lam) - mu);
    internal(5, M, 2.0 * (1.0 - lam) - mu);
    return m;
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("kmu_plus_plus_minus", m.at(0), 1e-6);
  rep.add("kmu_minus_minus_plus", m.at(1), 1e-6);
  rep.add("kmu_plus_minus_minus", m.at(2), 1e-6);
  rep.add("kmu_plus_minus_plus", m.at(3), 1e-6);
  rep.add("kmu_plus_internal", m.at(4), 1e-6);
  rep.add("kmu_minus_internal", m.at(5), 1e-6);
  return rep;
}

Report bracket_closure_check(const ContactMetricStructure& s, double kappa, const Samples& samples, Exec exec) {
  if (!(1.0 - kappa > 1e-8)) throw PreconditionError("bracket_closure_check: requires a non-Sasakian structure");
  const double lam = std::sqrt(1.0 - kappa);
  const Chart& c = s.chart();
  const int n = s.dim();
  const TensorField h2 = compose11(s.h(), s.h());
  const TensorField id = TensorField::identity(c);
  const double k = 1.0 / (2.0 * lam * lam);
  const std::vector<TensorField> proj{k * (h2 + lam * s.h()), k * (h2 - lam * s.h()), id - (1.0 / (lam * lam)) * h2};
  Report rep;
  const char* names[] = {"bracket_closure_plus", "bracket_closure_minus", "bracket_closure_zero"};
  for (std::size_t q = 0; q < proj.size(); ++q) {
    std::vector<TensorField> span;
    for (int i = 0; i < n; ++i) span.push_back(apply(proj[q], TensorField::coordinate_vector(c, i)));
    std::vector<TensorField> brackets;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) brackets.push_back(lie_bracket(span[static_cast<std::size_t>(i)], span[static_cast<std::size_t>(j)]));
    const auto res = sweep<double>(samples, [&](const Point& p) {
      const Mat P = as_matrix(proj[q].value(p));
      double m = 0.0;
      for (const auto& b : brackets) {
        const Vec v = as_vector(b.value(p));
        m = std::max(m, max_abs(Vec(v - P * v)));
      }
      return m;
    }, exec);
    rep.add(names[q], max_of(res), 1e-6);
  }
  return rep;
}

EtaEinsteinReport eta_einstein_fit(const ContactMetricStructure& s, const Samples& samples, Exec exec) {
  const TensorField ric = ricci_tensor(s.g());
  struct Row {
    Mat ric, g, ee;
  };
  const auto data = sweep<Row>(samples, [&](const Point& p) {
    const Vec e = as_vector(s.eta().value(p));
    return Row{as_matrix(ric.value(p)), as_matrix(s.g().value(p)), e * e.transpose()};
  }, exec);
  double aa = 0, ab = 0, bb = 0, al = 0, bl = 0;
  for (const auto& d : data) {
    aa += d.g.cwiseProduct(d.g).sum();
    ab += d.g.cwiseProduct(d.ee).sum();
    bb += d.ee.cwiseProduct(d.ee).sum();
    al += d.g.cwiseProduct(d.ric).sum();
    bl += d.ee.cwiseProduct(d.ric).sum();
  }
  EtaEinsteinReport rep;
  const Eigen::Vector2d ab2 = solve2(aa, ab, bb, al, bl);
  rep.alpha = ab2(0);
  rep.beta = ab2(1);
  for (const auto& d : data) rep.residual = std::max(rep.residual, max_abs(Mat(d.ric - rep.alpha * d.g - rep.beta * d.ee)));
  return rep;
}

Report verify_structure_isomorphism(const SmoothMap& f, const ContactMetricStructure& s1,
                                    const ContactMetricStructure& s2, const Samples& samples, Exec exec) {
  if (!(f.source() == s1.chart()) || !(f.target() == s2.chart()))
    throw ShapeError("verify_structure_isomorphism: map does not run between the structure charts");
  const TensorField pe = pullback(f, s2.eta());
  const TensorField pg = pullback(f, s2.g());
  const auto rows = sweep<std::vector<double>>(samples, [&](const Point& p) {
    return std::vector<double>{max_abs(Vec(as_vector(pe.value(p)) - as_vector(s1.eta().value(p)))),
                               max_abs(Mat(as_matrix(pg.value(p)) - as_matrix(s1.g().value(p))))};
  }, exec);
  const auto m = max_rows(rows);
  Report rep;
  rep.add("pullback_eta", m.at(0), 1e-8);
  rep.add("pullback_g", m.at(1), 1e-8);
  return rep;
}

}  // namespace metsymp
