#include "metsymp/jet.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <unordered_map>

namespace metsymp {

namespace {

std::uint64_t encode(const JetLayout::Exponents& e, int vars) {
  std::uint64_t key = 0;
  for (int v = 0; v < vars; ++v) key = key * (kMaxOrder + 1) + e[v];
  return key;
}

// All exponent vectors of total degree `deg` in `vars` variables, in
// lexicographic order with the first variable varying slowest.
void enumerate_degree(int vars, int deg, int v, JetLayout::Exponents& cur,
                      std::vector<JetLayout::Exponents>& out) {
  if (v == vars - 1) {
    cur[v] = static_cast<std::uint8_t>(deg);
    out.push_back(cur);
    cur[v] = 0;
    return;
  }
  for (int k = deg; k >= 0; --k) {
    cur[v] = static_cast<std::uint8_t>(k);
    enumerate_degree(vars, deg - k, v + 1, cur, out);
  }
  cur[v] = 0;
}

}  // namespace

struct JetLayoutTable {
  std::vector<std::unique_ptr<JetLayout>> layouts;

  JetLayoutTable() {
    layouts.resize(static_cast<std::size_t>(kMaxVars * (kMaxOrder + 1)));
    for (int vars = 1; vars <= kMaxVars; ++vars)
      for (int order = 0; order <= kMaxOrder; ++order)
        layouts[slot(vars, order)].reset(new JetLayout(vars, order));
  }
  static std::size_t slot(int vars, int order) {
    return static_cast<std::size_t>((vars - 1) * (kMaxOrder + 1) + order);
  }
};

const JetLayout& JetLayout::get(int vars, int order) {
  static const JetLayoutTable table;
  if (vars < 1 || vars > kMaxVars || order < 0 || order > kMaxOrder)
    throw std::out_of_range("jet layout: vars must be in [1,8] and order in [0,4]");
  return *table.layouts[JetLayoutTable::slot(vars, order)];
}

JetLayout::JetLayout(int vars, int order) : vars_(vars), order_(order) {
  Exponents cur{};
  for (int deg = 0; deg <= order; ++deg) {
    std::size_t before = exps_.size();
    enumerate_degree(vars, deg, 0, cur, exps_);
    degree_.insert(degree_.end(), exps_.size() - before, deg);
  }

  std::unordered_map<std::uint64_t, int> index;
  for (std::size_t i = 0; i < exps_.size(); ++i) index.emplace(encode(exps_[i], vars), static_cast<int>(i));
  std::vector<std::pair<std::uint64_t, int>> sorted(index.begin(), index.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [k, i] : sorted) {
    keys_.push_back(k);
    key_index_.push_back(i);
  }

  const std::size_t n = exps_.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (degree_[a] + degree_[b] > order) continue;
      Exponents e{};
      for (int v = 0; v < vars; ++v) e[v] = static_cast<std::uint8_t>(exps_[a][v] + exps_[b][v]);
      mul_.push_back({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
                      static_cast<std::uint16_t>(index.at(encode(e, vars)))});
    }
  }

  deriv_.resize(static_cast<std::size_t>(vars));
  if (order > 0) {
    for (int v = 0; v < vars; ++v) {
      for (std::size_t a = 0; a < n; ++a) {
        if (exps_[a][v] == 0) continue;
        Exponents e = exps_[a];
        e[v] = static_cast<std::uint8_t>(e[v] - 1);
        deriv_[v].push_back({static_cast<std::uint16_t>(a),
                             static_cast<std::uint16_t>(index.at(encode(e, vars))),
                             static_cast<double>(exps_[a][v])});
      }
    }
  }

  pair_index_.assign(static_cast<std::size_t>(vars * vars), -1);
  if (order >= 2) {
    for (int i = 0; i < vars; ++i)
      for (int j = 0; j < vars; ++j) {
        Exponents e{};
        e[i] += 1;
        e[j] += 1;
        pair_index_[static_cast<std::size_t>(i * vars + j)] = index.at(encode(e, vars));
      }
  }
}

int JetLayout::index_of(const Exponents& e) const {
  int deg = 0;
  for (int v = 0; v < vars_; ++v) deg += e[v];
  if (deg > order_) return -1;
  const std::uint64_t key = encode(e, vars_);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return -1;
  return key_index_[static_cast<std::size_t>(it - keys_.begin())];
}

int JetLayout::index_of_pair(int i, int j) const {
  return pair_index_[static_cast<std::size_t>(i * vars_ + j)];
}

Jet::Jet(const JetLayout& layout, double value) : layout_(&layout), c_(layout.size(), 0.0) {
  c_[0] = value;
}

Jet Jet::variable(int vars, int order, int v, double at) {
  Jet j(JetLayout::get(vars, order), at);
  if (order >= 1) j.c_[static_cast<std::size_t>(1 + v)] = 1.0;
  return j;
}

double Jet::d(int v) const {
  if (order() < 1) throw std::logic_error("jet: gradient requested from an order-0 jet");
  return c_[static_cast<std::size_t>(1 + v)];
}

double Jet::d2(int i, int j) const {
  if (order() < 2) throw std::logic_error("jet: Hessian requested from a jet of order < 2");
  double c = c_[static_cast<std::size_t>(layout_->index_of_pair(i, j))];
  return i == j ? 2.0 * c : c;
}

Jet Jet::partial(int v) const {
  if (order() < 1) throw std::logic_error("jet: cannot differentiate an order-0 jet");
  const JetLayout& lower = JetLayout::get(vars(), order() - 1);
  Storage out(lower.size(), 0.0);
  for (const auto& t : layout_->deriv_table(v)) out[t.dst] = t.factor * c_[t.src];
  return Jet(&lower, std::move(out));
}

Jet Jet::truncated(int new_order) const {
  if (new_order >= order()) return *this;
  const JetLayout& lower = JetLayout::get(vars(), new_order);
  Storage out(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lower.size()));
  return Jet(&lower, std::move(out));
}

void Jet::match_order(const Jet& o) {
  if (o.vars() != vars()) throw std::invalid_argument("jet: variable count mismatch");
  if (o.order() < order()) {
    layout_ = &o.layout();
    c_.resize(layout_->size());
  }
}

Jet& Jet::operator+=(const Jet& o) {
  match_order(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  match_order(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  *this = *this * o;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  *this = *this * recip(o);
  return *this;
}

Jet operator-(const Jet& a) {
  Jet r = a;
  for (double& x : r.c_) x = -x;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.vars() != b.vars()) throw std::invalid_argument("jet: variable count mismatch");
  const JetLayout* lay = a.order() <= b.order() ? a.layout_ : b.layout_;
  Jet::Storage out(lay->size(), 0.0);
  for (const auto& t : lay->mul_table()) out[t.c] += a.c_[t.a] * b.c_[t.b];
  return Jet(lay, std::move(out));
}

Jet operator/(double s, const Jet& a) { return recip(a) * s; }

Jet Jet::apply_series(std::span<const double> taylor) const {
  Jet v = *this;
  v.c_[0] = 0.0;
  Jet result(*layout_, taylor[0]);
  if (order() == 0) return result;
  Jet pw = v;
  for (int k = 1; k <= order(); ++k) {
    const double t = taylor[static_cast<std::size_t>(k)];
    if (t != 0.0)
      for (std::size_t i = 0; i < result.c_.size(); ++i) result.c_[i] += t * pw.c_[i];
    if (k < order()) pw = pw * v;
  }
  return result;
}

Jet recip(const Jet& a) {
  const double x = a.value();
  std::array<double, kMaxOrder + 1> t{};
  double p = 1.0 / x;
  for (int k = 0; k <= a.order(); ++k) {
    t[k] = (k % 2 == 0 ? p : -p);
    p /= x;
  }
  return a.apply_series(t);
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  std::array<double, kMaxOrder + 1> t{};
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) fact *= k;
    t[k] = e / fact;
  }
  return a.apply_series(t);
}

Jet log(const Jet& a) {
  const double x = a.value();
  std::array<double, kMaxOrder + 1> t{};
  t[0] = std::log(x);
  double p = x;
  for (int k = 1; k <= a.order(); ++k) {
    t[k] = (k % 2 == 1 ? 1.0 : -1.0) / (k * p);
    p *= x;
  }
  return a.apply_series(t);
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  const std::array<double, 4> cyc{s, c, -s, -c};
  std::array<double, kMaxOrder + 1> t{};
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) fact *= k;
    t[k] = cyc[static_cast<std::size_t>(k % 4)] / fact;
  }
  return a.apply_series(t);
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  const std::array<double, 4> cyc{c, -s, -c, s};
  std::array<double, kMaxOrder + 1> t{};
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) fact *= k;
    t[k] = cyc[static_cast<std::size_t>(k % 4)] / fact;
  }
  return a.apply_series(t);
}

Jet pow(const Jet& a, double r) {
  const double x = a.value();
  std::array<double, kMaxOrder + 1> t{};
  double binom = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) binom *= (r - (k - 1)) / k;
    t[k] = binom * std::pow(x, r - k);
  }
  return a.apply_series(t);
}

Jet sqrt(const Jet& a) {
  Jet r = pow(a, 0.5);
  r.coeff(0) = std::sqrt(a.value());
  return r;
}

Jet pow(const Jet& a, int n) {
  if (n < 0) return recip(pow(a, -n));
  Jet result(a.layout(), 1.0);
  Jet base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Jet compose(const Jet& outer, std::span<const Jet> inner) {
  if (static_cast<int>(inner.size()) != outer.vars())
    throw std::invalid_argument("jet compose: inner count must equal outer variable count");
  const int vars = inner.front().vars();
  int order = outer.order();
  for (const Jet& j : inner) order = std::min(order, j.order());
  const JetLayout& lay = JetLayout::get(vars, order);

  // powers[a][k] = (inner[a] - inner[a](0))^k
  std::vector<std::vector<Jet>> powers(inner.size());
  for (std::size_t a = 0; a < inner.size(); ++a) {
    Jet v = inner[a].truncated(order);
    v.coeff(0) = 0.0;
    powers[a].reserve(static_cast<std::size_t>(order + 1));
    powers[a].emplace_back(lay, 1.0);
    for (int k = 1; k <= order; ++k) powers[a].push_back(k == 1 ? v : powers[a].back() * v);
  }

  Jet result(lay, 0.0);
  const JetLayout& olay = outer.layout();
  for (std::size_t m = 0; m < olay.size() && olay.degree(m) <= order; ++m) {
    const double c = outer.coeff(m);
    if (c == 0.0) continue;
    const auto& e = olay.exponents(m);
    if (olay.degree(m) == 0) {
      result.coeff(0) += c;
      continue;
    }
    const Jet* first = nullptr;
    Jet term(lay, 1.0);
    bool have = false;
    for (int a = 0; a < outer.vars(); ++a) {
      if (e[a] == 0) continue;
      const Jet& p = powers[static_cast<std::size_t>(a)][e[a]];
      if (!first) {
        first = &p;
      } else {
        term = have ? term * p : (*first) * p;
        have = true;
      }
    }
    const Jet& t = have ? term : *first;
    for (std::size_t i = 0; i < lay.size(); ++i) result.coeff(i) += c * t.coeff(i);
  }
  return result;
}

Jet embed(const Jet& j, int vars, std::span<const int> var_map) {
  if (static_cast<int>(var_map.size()) != j.vars()) throw std::invalid_argument("jet embed: map size mismatch");
  const JetLayout& src = j.layout();
  const JetLayout& dst = JetLayout::get(vars, j.order());
  Jet out(dst, 0.0);
  for (std::size_t m = 0; m < src.size(); ++m) {
    const double c = j.coeff(m);
    if (c == 0.0) continue;
    JetLayout::Exponents e{};
    const auto& se = src.exponents(m);
    for (int v = 0; v < j.vars(); ++v) e[static_cast<std::size_t>(var_map[static_cast<std::size_t>(v)])] += se[v];
    out.coeff(static_cast<std::size_t>(dst.index_of(e))) += c;
  }
  return out;
}

Jet2 Jet2::from(const Jet& j) {
  Jet2 r;
  r.dim = j.vars();
  r.value = j.value();
  r.grad.resize(static_cast<std::size_t>(r.dim));
  r.hess.resize(static_cast<std::size_t>(r.dim * r.dim));
  for (int i = 0; i < r.dim; ++i) {
    r.grad[static_cast<std::size_t>(i)] = j.d(i);
    for (int k = 0; k < r.dim; ++k) r.hess[static_cast<std::size_t>(i * r.dim + k)] = j.d2(i, k);
  }
  return r;
}

}  // namespace metsymp
