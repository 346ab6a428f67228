#include "metsymp/tensor.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "metsymp/errors.hpp"
#include "metsymp/linalg.hpp"

namespace metsymp {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

TensorValue values(const TensorJets& t) {
  TensorValue v(t.dim(), t.type(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = t[i].value();
  return v;
}

TensorJets truncated(const TensorJets& t, int order) {
  TensorJets r = t;
  for (auto& j : r.data()) j = j.truncated(order);
  return r;
}

std::vector<Jet> coordinate_jets(std::span<const double> p, int order) {
  const int n = static_cast<int>(p.size());
  std::vector<Jet> xs;
  xs.reserve(p.size());
  for (int i = 0; i < n; ++i) xs.push_back(Jet::variable(n, order, i, p[static_cast<std::size_t>(i)]));
  return xs;
}

namespace {

TensorJets zeros(int dim, TensorType type, int order) {
  return TensorJets(dim, type, Jet(JetLayout::get(dim, order), 0.0));
}

// Sorts the covariant digits in place; returns the permutation sign, or 0
// when two digits coincide.
int sort_with_sign(int* d, int n) {
  int sign = 1;
  for (int i = 1; i < n; ++i) {
    for (int j = i; j > 0 && d[j - 1] >= d[j]; --j) {
      if (d[j - 1] == d[j]) {
        sign = 0;
        break;
      }
      std::swap(d[j - 1], d[j]);
      sign = -sign;
    }
    if (sign == 0) break;
  }
  return sign;
}

void canonicalize(TensorJets& t, Symmetry sym) {
  const int co = t.type().co;
  const int contra = t.type().contra;
  if (sym == Symmetry::none || co < 2) return;
  for (std::size_t f = 0; f < t.size(); ++f) {
    MultiIndex d = t.digits(f);
    int* cov = d.data() + contra;
    int sign = 1;
    if (sym == Symmetry::antisymmetric) {
      sign = sort_with_sign(cov, co);
      if (sign == 0) {
        t[f] *= 0.0;
        continue;
      }
    } else {
      std::sort(cov, cov + co);
    }
    const std::size_t fc = t.flat(std::span<const int>(d.data(), static_cast<std::size_t>(t.rank())));
    if (fc == f) continue;
    t[f] = t[fc];
    if (sign < 0) t[f] *= -1.0;
  }
}

bool strictly_increasing(const MultiIndex& d, int from, int n) {
  for (int i = from + 1; i < from + n; ++i)
    if (d[static_cast<std::size_t>(i - 1)] >= d[static_cast<std::size_t>(i)]) return false;
  return true;
}

void require_same_chart(const TensorField& a, const TensorField& b, const char* what) {
  if (!(a.chart() == b.chart())) throw ShapeError(std::string(what) + ": fields live on different charts");
}

void require_type(const TensorField& a, TensorType t, const char* what) {
  if (!(a.type() == t))
    throw ShapeError(std::string(what) + ": expected a (" + std::to_string(t.contra) + "," + std::to_string(t.co) +
                     ") field, got (" + std::to_string(a.type().contra) + "," + std::to_string(a.type().co) + ")");
}

Symmetry form_symmetry(int k) { return k >= 2 ? Symmetry::antisymmetric : Symmetry::none; }

}  // namespace

TensorField::TensorField(const Chart& chart, TensorType type, Symmetry symmetry, Kernel kernel)
    : chart_(std::make_shared<const Chart>(chart)),
      type_(type),
      symmetry_(symmetry),
      kernel_(std::make_shared<const Kernel>(std::move(kernel))) {
  if (type.contra < 0 || type.co < 0 || type.rank() > kMaxRank) throw ShapeError("tensor field: unsupported rank");
}

TensorField TensorField::from_exprs(const Chart& chart, TensorType type, Symmetry symmetry, std::vector<Expr> comps) {
  const int dim = chart.dim();
  if (comps.size() != ipow(dim, type.rank()))
    throw ShapeError("tensor field: expected " + std::to_string(ipow(dim, type.rank())) + " components, got " +
                     std::to_string(comps.size()));
  auto shared = std::make_shared<const std::vector<Expr>>(std::move(comps));
  return TensorField(chart, type, symmetry, [shared, dim, type](std::span<const double> p, int order) {
    const auto xs = coordinate_jets(p, order);
    TensorJets out(dim, type, xs[0]);
    for (std::size_t i = 0; i < shared->size(); ++i) out[i] = (*shared)[i].eval(std::span<const Jet>(xs));
    return out;
  });
}

TensorField TensorField::scalar(const Chart& chart, Expr f) {
  return from_exprs(chart, {0, 0}, Symmetry::none, {std::move(f)});
}

TensorField TensorField::coordinate_vector(const Chart& chart, int i) {
  TensorValue v(chart.dim(), {1, 0}, 0.0);
  v.at({i}) = 1.0;
  return constant(chart, v);
}

TensorField TensorField::coordinate_form(const Chart& chart, int i) {
  TensorValue v(chart.dim(), {0, 1}, 0.0);
  v.at({i}) = 1.0;
  return constant(chart, v);
}

TensorField TensorField::zero(const Chart& chart, TensorType type, Symmetry symmetry) {
  return constant(chart, TensorValue(chart.dim(), type, 0.0), symmetry);
}

TensorField TensorField::identity(const Chart& chart) {
  TensorValue v(chart.dim(), {1, 1}, 0.0);
  for (int i = 0; i < chart.dim(); ++i) v.at({i, i}) = 1.0;
  return constant(chart, v);
}

TensorField TensorField::constant(const Chart& chart, const TensorValue& value, Symmetry symmetry) {
  if (value.dim() != chart.dim()) throw ShapeError("tensor field: constant has wrong dimension");
  return TensorField(chart, value.type(), symmetry, [value](std::span<const double> p, int order) {
    const int dim = static_cast<int>(p.size());
    TensorJets out = zeros(dim, value.type(), order);
    for (std::size_t i = 0; i < value.size(); ++i) out[i].coeff(0) = value[i];
    return out;
  });
}

TensorJets TensorField::jets(std::span<const double> p, int order) const {
  chart_->require_contains(p);
  TensorJets out = (*kernel_)(p, order);
  if (out.dim() != dim() || !(out.type() == type_)) throw std::logic_error("tensor field: kernel returned wrong shape");
  if (out.size() > 0 && out[0].order() != order) {
    if (out[0].order() < order) throw std::logic_error("tensor field: kernel returned too low an order");
    out = truncated(out, order);
  }
  canonicalize(out, symmetry_);
  return out;
}

double TensorField::component(std::span<const double> p, std::initializer_list<int> idx) const {
  const TensorValue v = value(p);
  return v.at(idx);
}

TensorField TensorField::with_symmetry(Symmetry s) const {
  TensorField r = *this;
  r.symmetry_ = s;
  return r;
}

SmoothMap::SmoothMap(const Chart& source, const Chart& target, Kernel kernel)
    : source_(std::make_shared<const Chart>(source)),
      target_(std::make_shared<const Chart>(target)),
      kernel_(std::make_shared<const Kernel>(std::move(kernel))) {}

SmoothMap SmoothMap::from_exprs(const Chart& source, const Chart& target, std::vector<Expr> coords) {
  if (static_cast<int>(coords.size()) != target.dim())
    throw ShapeError("smooth map: one coordinate expression per target coordinate is required");
  auto shared = std::make_shared<const std::vector<Expr>>(std::move(coords));
  return SmoothMap(source, target, [shared](std::span<const double> p, int order) {
    const auto xs = coordinate_jets(p, order);
    std::vector<Jet> out;
    out.reserve(shared->size());
    for (const auto& e : *shared) out.push_back(e.eval(std::span<const Jet>(xs)));
    return out;
  });
}

SmoothMap SmoothMap::identity(const Chart& chart) {
  return SmoothMap(chart, chart, [](std::span<const double> p, int order) { return coordinate_jets(p, order); });
}

std::vector<Jet> SmoothMap::jets(std::span<const double> p, int order) const {
  source_->require_contains(p);
  std::vector<Jet> out = (*kernel_)(p, order);
  if (static_cast<int>(out.size()) != target_->dim()) throw std::logic_error("smooth map: kernel returned wrong size");
  for (auto& j : out) j = j.truncated(order);
  return out;
}

Point SmoothMap::apply(std::span<const double> p) const {
  const auto js = jets(p, 0);
  Point q(js.size());
  for (std::size_t i = 0; i < js.size(); ++i) q[i] = js[i].value();
  return q;
}

SmoothMap compose(const SmoothMap& g, const SmoothMap& f) {
  if (!(f.target() == g.source())) throw ShapeError("compose: target of F is not the source of G");
  return SmoothMap(f.source(), g.target(), [g, f](std::span<const double> p, int order) {
    const auto fj = f.jets(p, order);
    Point q(fj.size());
    for (std::size_t i = 0; i < fj.size(); ++i) q[i] = fj[i].value();
    const auto gj = g.jets(q, order);
    std::vector<Jet> out;
    out.reserve(gj.size());
    for (const auto& j : gj) out.push_back(compose(j, fj));
    return out;
  });
}

TensorJets field_along(const TensorField& t, const SmoothMap& f, std::span<const double> p, int order) {
  if (!(f.target() == t.chart())) throw ShapeError("field_along: field does not live on the target chart");
  const auto fj = f.jets(p, order);
  Point q(fj.size());
  for (std::size_t i = 0; i < fj.size(); ++i) q[i] = fj[i].value();
  const TensorJets tq = t.jets(q, order);
  const int sdim = f.source().dim();
  TensorJets out(t.dim(), t.type(), Jet(JetLayout::get(sdim, order), 0.0));
  for (std::size_t i = 0; i < tq.size(); ++i) out[i] = compose(tq[i], fj);
  return out;
}

Jet2 jet_eval(const TensorField& f, std::span<const double> p) {
  require_type(f, {0, 0}, "jet_eval");
  return Jet2::from(f.jets(p, 2)[0]);
}

TensorField operator+(const TensorField& a, const TensorField& b) {
  require_same_chart(a, b, "add");
  require_type(b, a.type(), "add");
  const Symmetry s = a.symmetry() == b.symmetry() ? a.symmetry() : Symmetry::none;
  return TensorField(a.chart(), a.type(), s, [a, b](std::span<const double> p, int order) {
    TensorJets x = a.jets(p, order);
    const TensorJets y = b.jets(p, order);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return x;
  });
}

TensorField operator-(const TensorField& a, const TensorField& b) { return a + (-1.0) * b; }

TensorField operator*(double s, const TensorField& a) {
  return TensorField(a.chart(), a.type(), a.symmetry(), [a, s](std::span<const double> p, int order) {
    TensorJets x = a.jets(p, order);
    for (auto& j : x.data()) j *= s;
    return x;
  });
}

TensorField operator*(const TensorField& f, const TensorField& a) {
  require_same_chart(f, a, "scalar multiply");
  require_type(f, {0, 0}, "scalar multiply");
  return TensorField(a.chart(), a.type(), a.symmetry(), [f, a](std::span<const double> p, int order) {
    TensorJets x = a.jets(p, order);
    const Jet s = f.jets(p, order)[0];
    for (auto& j : x.data()) j *= s;
    return x;
  });
}

TensorField tensor_product(const TensorField& a, const TensorField& b) {
  require_same_chart(a, b, "tensor_product");
  const TensorType ta = a.type(), tb = b.type();
  const TensorType t{ta.contra + tb.contra, ta.co + tb.co};
  if (t.rank() > kMaxRank) throw ShapeError("tensor_product: rank too large");
  return TensorField(a.chart(), t, Symmetry::none, [a, b, ta, tb, t](std::span<const double> p, int order) {
    const TensorJets x = a.jets(p, order);
    const TensorJets y = b.jets(p, order);
    const int dim = static_cast<int>(p.size());
    TensorJets out = zeros(dim, t, order);
    for (std::size_t f = 0; f < out.size(); ++f) {
      const MultiIndex d = out.digits(f);
      std::array<int, kMaxRank> ia{}, ib{};
      int na = 0, nb = 0;
      for (int s = 0; s < ta.contra; ++s) ia[static_cast<std::size_t>(na++)] = d[static_cast<std::size_t>(s)];
      for (int s = 0; s < tb.contra; ++s) ib[static_cast<std::size_t>(nb++)] = d[static_cast<std::size_t>(ta.contra + s)];
      for (int s = 0; s < ta.co; ++s) ia[static_cast<std::size_t>(na++)] = d[static_cast<std::size_t>(t.contra + s)];
      for (int s = 0; s < tb.co; ++s)
        ib[static_cast<std::size_t>(nb++)] = d[static_cast<std::size_t>(t.contra + ta.co + s)];
      out[f] = x[x.flat(std::span<const int>(ia.data(), static_cast<std::size_t>(na)))] *
               y[y.flat(std::span<const int>(ib.data(), static_cast<std::size_t>(nb)))];
    }
    return out;
  });
}

TensorField contract(const TensorField& t, int up, int down) {
  const TensorType tt = t.type();
  if (up < 0 || up >= tt.contra || down < 0 || down >= tt.co) throw ShapeError("contract: slot out of range");
  const TensorType r{tt.contra - 1, tt.co - 1};
  return TensorField(t.chart(), r, Symmetry::none, [t, tt, r, up, down](std::span<const double> p, int order) {
    const TensorJets x = t.jets(p, order);
    const int dim = static_cast<int>(p.size());
    TensorJets out = zeros(dim, r, order);
    for (std::size_t f = 0; f < out.size(); ++f) {
      const MultiIndex d = out.digits(f);
      std::array<int, kMaxRank> full{};
      int n = 0;
      for (int s = 0; s < tt.contra; ++s) full[static_cast<std::size_t>(n++)] = s == up ? -1 : d[static_cast<std::size_t>(s < up ? s : s - 1)];
      for (int s = 0; s < tt.co; ++s)
        full[static_cast<std::size_t>(n++)] = s == down ? -1 : d[static_cast<std::size_t>(r.contra + (s < down ? s : s - 1))];
      for (int k = 0; k < dim; ++k) {
        full[static_cast<std::size_t>(up)] = k;
        full[static_cast<std::size_t>(tt.contra + down)] = k;
        out[f] += x[x.flat(std::span<const int>(full.data(), static_cast<std::size_t>(n)))];
      }
    }
    return out;
  });
}

TensorField apply(const TensorField& a, const TensorField& x) {
  require_type(a, {1, 1}, "apply");
  require_type(x, {1, 0}, "apply");
  return contract(tensor_product(a, x), 1, 0);
}

TensorField compose11(const TensorField& a, const TensorField& b) {
  require_type(a, {1, 1}, "compose11");
  require_type(b, {1, 1}, "compose11");
  return contract(tensor_product(a, b), 1, 0);
}

TensorField exterior_derivative(const TensorField& alpha) {
  const TensorType ta = alpha.type();
  if (ta.contra != 0) throw ShapeError("exterior_derivative: argument must be a differential form");
  const int k = ta.co;
  if (k >= 2 && alpha.symmetry() != Symmetry::antisymmetric)
    throw ShapeError("exterior_derivative: argument must be antisymmetric");
  if (k >= alpha.dim()) throw ShapeError("exterior_derivative: a " + std::to_string(k) + "-form on a " +
                                         std::to_string(alpha.dim()) + "-dimensional chart has no higher degree");
  const TensorType r{0, k + 1};
  return TensorField(alpha.chart(), r, form_symmetry(k + 1), [alpha, k, r](std::span<const double> p, int order) {
    const TensorJets a = alpha.jets(p, order + 1);
    const int dim = static_cast<int>(p.size());
    TensorJets out = zeros(dim, r, order);
    for (std::size_t f = 0; f < out.size(); ++f) {
      const MultiIndex d = out.digits(f);
      if (!strictly_increasing(d, 0, k + 1)) continue;
      for (int j = 0; j <= k; ++j) {
        std::array<int, kMaxRank> rest{};
        int n = 0;
        for (int s = 0; s <= k; ++s)
          if (s != j) rest[static_cast<std::size_t>(n++)] = d[static_cast<std::size_t>(s)];
        const Jet term = a[a.flat(std::span<const int>(rest.data(), static_cast<std::size_t>(n)))].partial(
            d[static_cast<std::size_t>(j)]);
        if (j % 2 == 0) out[f] += term;
        else out[f] -= term;
      }
    }
    return out;
  });
}

TensorField wedge(const TensorField& alpha, const TensorField& beta) {
  require_same_chart(alpha, beta, "wedge");
  if (alpha.type().contra != 0 || beta.type().contra != 0) throw ShapeError("wedge: arguments must be forms");
  const int k = alpha.type().co, l = beta.type().co;
  if ((k >= 2 && alpha.symmetry() != Symmetry::antisymmetric) || (l >= 2 && beta.symmetry() != Symmetry::antisymmetric))
    throw ShapeError("wedge: arguments must be antisymmetric");
  if (k == 0 || l == 0) {
    const TensorField& s = k == 0 ? alpha : beta;
    const TensorField& f = k == 0 ? beta : alpha;
    return s * f;
  }
  const TensorType r{0, k + l};
  if (r.rank() > kMaxRank) throw ShapeError("wedge: degree too large");
  return TensorField(alpha.chart(), r, form_symmetry(k + l), [alpha, beta, k, l, r](std::span<const double> p, int order) {
    const int dim = static_cast<int>(p.size());
    TensorJets out = zeros(dim, r, order);
    if (k + l > dim) return out;
    const TensorJets a = alpha.jets(p, order);
    const TensorJets b = beta.jets(p, order);
    const int n = k + l;
    for (std::size_t f = 0; f < out.size(); ++f) {
      const MultiIndex d = out.digits(f);
      if (!strictly_increasing(d, 0, n)) continue;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        std::array<int, kMaxRank> ia{}, ib{};
        int na = 0, nb = 0, inversions = 0;
        for (int s = 0; s < n; ++s) {
          if (mask & (1u << s)) {
            ia[static_cast<std::size_t>(na++)] = d[static_cast<std::size_t>(s)];
            inversions += nb;
          } else {
            ib[static_cast<std::size_t>(nb++)] = d[static_cast<std::size_t>(s)];
          }
        }
        const Jet term = a[a.flat(std::span<const int>(ia.data(), static_cast<std::size_t>(na)))] *
                         b[b.flat(std::span<const int>(ib.data(), static_cast<std::size_t>(nb)))];
        if (inversions % 2 == 0) out[f] += term;
        else out[f] -= term;
      }
    }
    return out;
  });
}

TensorField interior_product(const TensorField& x, const TensorField& alpha) {
  require_same_chart(x, alpha, "interior_product");
  require_type(x, {1, 0}, "interior_product");
  if (alpha.type().contra != 0 || alpha.type().co < 1) throw ShapeError("interior_product: argument must be a k-form, k >= 1");
  const int k = alpha.type().co;
  const TensorType r{0, k - 1};
  return TensorField(alpha.chart(), r, form_symmetry(k - 1), [x, alpha, k, r](std::span<const double> p, int order) {
    const TensorJets xv = x.jets(p, order);
    const TensorJets a = alpha.jets(p, order);
    const int dim = static_cast<int>(p.size());
    TensorJets out = zeros(dim, r, order);
    const std::size_t block = ipow(dim, k - 1);
    for (std::size_t f = 0; f < out.size(); ++f)
      for (int j = 0; j < dim; ++j) out[f] += xv[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(j) * block + f];
    return out;
  });
}

TensorField lie_bracket(const TensorField& x, const TensorField& y) {
  require_same_chart(x, y, "lie_bracket");
  require_type(x, {1, 0}, "lie_bracket");
  require_type(y, {1, 0}, "lie_bracket");
  return TensorField(x.chart(), {1, 0}, Symmetry::none, [x, y](std::span<const double> p, int order) {
    const TensorJets a = x.jets(p, order + 1);
    const TensorJets b = y.jets(p, order + 1);
    const int dim = static_cast<int>(p.size());
    TensorJets out = zeros(dim, {1, 0}, order);
    for (int k = 0; k < dim; ++k)
      for (int i = 0; i < dim; ++i)
        out[static_cast<std::size_t>(k)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k)].partial(i) -
                                            b[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(k)].partial(i);
    return out;
  });
}

TensorField lie_derivative(const TensorField& x, const TensorField& t) {
  require_same_chart(x, t, "lie_derivative");
  require_type(x, {1, 0}, "lie_derivative");
  const TensorType tt = t.type();
  return TensorField(t.chart(), tt, t.symmetry(), [x, t, tt](std::span<const double> p, int order) {
    const TensorJets xv = x.jets(p, order + 1);
    const TensorJets a = t.jets(p, order + 1);
    const int dim = static_cast<int>(p.size());
    std::vector<std::vector<Jet>> dx(static_cast<std::size_t>(dim));  // dx[k][c] = ∂_c X^k
    for (int k = 0; k < dim; ++k)
      for (int c = 0; c < dim; ++c) dx[static_cast<std::size_t>(k)].push_back(xv[static_cast<std::size_t>(k)].partial(c));
    TensorJets out = zeros(dim, tt, order);
    for (std::size_t f = 0; f < out.size(); ++f) {
      MultiIndex d = a.digits(f);
      const std::span<const int> idx(d.data(), static_cast<std::size_t>(tt.rank()));
      for (int c = 0; c < dim; ++c) out[f] += xv[static_cast<std::size_t>(c)] * a[f].partial(c);
      for (int s = 0; s < tt.rank(); ++s) {
        const int keep = d[static_cast<std::size_t>(s)];
        for (int c = 0; c < dim; ++c) {
          d[static_cast<std::size_t>(s)] = c;
          const Jet& tc = a[a.flat(idx)];
          if (s < tt.contra)
            out[f] -= tc * dx[static_cast<std::size_t>(keep)][static_cast<std::size_t>(c)];
          else
            out[f] += tc * dx[static_cast<std::size_t>(c)][static_cast<std::size_t>(keep)];
        }
        d[static_cast<std::size_t>(s)] = keep;
      }
    }
    return out;
  });
}

TensorField pullback(const SmoothMap& f, const TensorField& t) {
  if (t.type().contra != 0) throw ShapeError("pullback: only covariant tensors can be pulled back");
  if (!(f.target() == t.chart())) throw ShapeError("pullback: field does not live on the target chart");
  const int s = t.type().co;
  const TensorType r{0, s};
  return TensorField(f.source(), r, t.symmetry(), [f, t, s, r](std::span<const double> p, int order) {
    const TensorJets tc = field_along(t, f, p, order);
    const auto fj = f.jets(p, order + 1);
    const int sdim = static_cast<int>(p.size());
    const int tdim = static_cast<int>(fj.size());
    std::vector<Jet> df;  // df[a * sdim + i] = ∂_i F^a
    df.reserve(static_cast<std::size_t>(sdim * tdim));
    for (int a = 0; a < tdim; ++a)
      for (int i = 0; i < sdim; ++i) df.push_back(fj[static_cast<std::size_t>(a)].partial(i));
    TensorJets out = zeros(sdim, r, order);
    for (std::size_t fo = 0; fo < out.size(); ++fo) {
      const MultiIndex di = out.digits(fo);
      for (std::size_t ft = 0; ft < tc.size(); ++ft) {
        if (tc[ft].value() == 0.0 && std::all_of(tc[ft].coeffs().begin(), tc[ft].coeffs().end(),
                                                 [](double c) { return c == 0.0; }))
          continue;
        const MultiIndex da = tc.digits(ft);
        Jet term = tc[ft];
        for (int q = 0; q < s; ++q)
          term *= df[static_cast<std::size_t>(da[static_cast<std::size_t>(q)] * sdim + di[static_cast<std::size_t>(q)])];
        out[fo] += term;
      }
    }
    return out;
  });
}

TensorField inverse_metric(const TensorField& g) {
  require_type(g, {0, 2}, "inverse_metric");
  return TensorField(g.chart(), {2, 0}, Symmetry::none, [g](std::span<const double> p, int order) {
    const TensorJets gj = g.jets(p, order);
    const int dim = static_cast<int>(p.size());
    const Jet zero(JetLayout::get(dim, order), 0.0);
    SmallMatrix<Jet> m(dim, dim, zero);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = gj.at({i, j});
    const SmallMatrix<Jet> inv = inverse(m, zero, Jet(JetLayout::get(dim, order), 1.0));
    TensorJets out(dim, {2, 0}, zero);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out.at({i, j}) = 0.5 * (inv(i, j) + inv(j, i));
    return out;
  });
}

TensorField lower(const TensorField& g, const TensorField& t, int slot) {
  require_type(g, {0, 2}, "lower");
  require_same_chart(g, t, "lower");
  if (slot < 0 || slot >= t.type().contra) throw ShapeError("lower: no such contravariant slot");
  return contract(tensor_product(g, t), slot, 1);
}

TensorField raise(const TensorField& g, const TensorField& t, int slot) {
  require_type(g, {0, 2}, "raise");
  require_same_chart(g, t, "raise");
  if (slot < 0 || slot >= t.type().co) throw ShapeError("raise: no such covariant slot");
  return contract(tensor_product(inverse_metric(g), t), 1, slot);
}

std::vector<double> pointwise_solve(const TensorField& a, const TensorField& b, std::span<const double> p) {
  require_same_chart(a, b, "pointwise_solve");
  if (a.type().rank() != 2) throw ShapeError("pointwise_solve: matrix field must have rank 2");
  require_type(b, {1, 0}, "pointwise_solve");
  const TensorValue av = a.value(p);
  const TensorValue bv = b.value(p);
  const int dim = a.dim();
  SmallMatrix<double> m(dim, dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = av.at({i, j});
  return solve(m, bv.data());
}

TensorField lift_to_product(const TensorField& t, const Chart& product) {
  const Chart& base = t.chart();
  const int m = base.dim();
  if (product.dim() != m + 1) throw ShapeError("lift_to_product: product chart must have one extra coordinate");
  for (int i = 0; i < m; ++i)
    if (product.names()[static_cast<std::size_t>(i)] != base.names()[static_cast<std::size_t>(i)] ||
        !(product.domain()[static_cast<std::size_t>(i)] == base.domain()[static_cast<std::size_t>(i)]))
      throw ShapeError("lift_to_product: product chart does not extend the field's chart");
  const TensorType tt = t.type();
  return TensorField(product, tt, t.symmetry(), [t, m, tt](std::span<const double> p, int order) {
    const TensorJets base_jets = t.jets(p.first(static_cast<std::size_t>(m)), order);
    const int dim = m + 1;
    TensorJets out = zeros(dim, tt, order);
    std::vector<int> map(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) map[static_cast<std::size_t>(i)] = i;
    for (std::size_t f = 0; f < out.size(); ++f) {
      const MultiIndex d = out.digits(f);
      bool inside = true;
      for (int s = 0; s < tt.rank(); ++s) inside = inside && d[static_cast<std::size_t>(s)] < m;
      if (!inside) continue;
      const Jet& src = base_jets[base_jets.flat(std::span<const int>(d.data(), static_cast<std::size_t>(tt.rank())))];
      out[f] = embed(src, dim, map);
    }
    return out;
  });
}

}  // namespace metsymp
