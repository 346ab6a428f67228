#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace metsymp {

// One scalar produced by a verifier. Most measures are residuals that pass
// below their threshold; nondegeneracy measures pass above it. Informational
// measures are reported without a verdict.
struct Measure {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool above = false;
  bool informational = false;

  bool pass() const { return informational || (above ? value > threshold : value < threshold); }
};

struct Report {
  std::vector<Measure> measures;

  void add(std::string name, double value, double threshold, bool above = false) {
    measures.push_back({std::move(name), value, threshold, above, false});
  }
  void note(std::string name, double value) { measures.push_back({std::move(name), value, 0.0, false, true}); }
  bool passed() const {
    for (const auto& m : measures)
      if (!m.pass()) return false;
    return true;
  }
  const Measure& operator[](std::string_view name) const;
  bool has(std::string_view name) const;
  // Largest residual among pass-below measures.
  double worst() const;
};

}  // namespace metsymp
