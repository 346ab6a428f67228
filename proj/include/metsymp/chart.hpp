#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace metsymp {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Interval&) const = default;
};

using Point = std::vector<double>;
using Samples = std::vector<Point>;

// A closed coordinate box with named coordinates.
class Chart {
 public:
  Chart(std::vector<std::string> names, std::vector<Interval> domain, std::uint64_t seed = 42);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Interval>& domain() const { return domain_; }
  std::uint64_t seed() const { return seed_; }

  int index_of(const std::string& name) const;
  bool contains(std::span<const double> p) const;
  // Throws DomainError naming the offending coordinate.
  void require_contains(std::span<const double> p) const;

  // Deterministic uniform samples from the box shrunk by 5% per side.
  Samples sample(int n) const { return sample(n, seed_); }
  Samples sample(int n, std::uint64_t seed) const;

  Chart product_with(const std::string& name, Interval range) const;
  Chart with_interval(int i, Interval range) const;

  bool operator==(const Chart& o) const { return names_ == o.names_ && domain_ == o.domain_; }

 private:
  std::vector<std::string> names_;
  std::vector<Interval> domain_;
  std::uint64_t seed_;
};

}  // namespace metsymp
