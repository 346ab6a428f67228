#include "metsymp/chart.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "metsymp/errors.hpp"

namespace metsymp {

namespace {
// Slack for points produced by arithmetic that should land on a boundary.
constexpr double kBoundarySlack = 1e-12;
}  // namespace

Chart::Chart(std::vector<std::string> names, std::vector<Interval> domain, std::uint64_t seed)
    : names_(std::move(names)), domain_(std::move(domain)), seed_(seed) {
  if (names_.empty()) throw ShapeError("chart: at least one coordinate is required");
  if (names_.size() != domain_.size()) throw ShapeError("chart: one interval per coordinate is required");
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (!(domain_[i].lo <= domain_[i].hi) || !std::isfinite(domain_[i].lo) || !std::isfinite(domain_[i].hi))
      throw ShapeError("chart: empty or non-finite interval for coordinate '" + names_[i] + "'");
  }
}

int Chart::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw ShapeError("chart: no coordinate named '" + name + "'");
}

bool Chart::contains(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dim()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double slack = kBoundarySlack * (1.0 + std::abs(domain_[i].lo) + std::abs(domain_[i].hi));
    if (!(p[i] >= domain_[i].lo - slack && p[i] <= domain_[i].hi + slack)) return false;
  }
  return true;
}

void Chart::require_contains(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dim())
    throw ShapeError("chart: point has " + std::to_string(p.size()) + " coordinates, chart has " +
                     std::to_string(dim()));
  if (contains(p)) return;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= domain_[i].lo && p[i] <= domain_[i].hi) continue;
    std::ostringstream os;
    os << "point outside chart: " << names_[i] << " = " << p[i] << " not in [" << domain_[i].lo << ", "
       << domain_[i].hi << "]";
    throw DomainError(os.str());
  }
  throw DomainError("point outside chart");
}

Samples Chart::sample(int n, std::uint64_t seed) const {
  if (n < 0) throw ShapeError("chart: negative sample count");
  std::mt19937_64 rng(seed);
  Samples out(static_cast<std::size_t>(n), Point(static_cast<std::size_t>(dim())));
  for (auto& p : out) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double w = domain_[i].hi - domain_[i].lo;
      const double lo = domain_[i].lo + 0.05 * w;
      p[i] = lo + u * 0.9 * w;
    }
  }
  return out;
}

Chart Chart::product_with(const std::string& name, Interval range) const {
  auto names = names_;
  auto dom = domain_;
  names.push_back(name);
  dom.push_back(range);
  return Chart(std::move(names), std::move(dom), seed_);
}

Chart Chart::with_interval(int i, Interval range) const {
  auto dom = domain_;
  dom.at(static_cast<std::size_t>(i)) = range;
  return Chart(names_, std::move(dom), seed_);
}

}  // namespace metsymp
