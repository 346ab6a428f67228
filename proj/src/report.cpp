#include "metsymp/report.hpp"

#include <algorithm>
#include <cmath>

#include "metsymp/errors.hpp"
#include "metsymp/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace metsymp {

const Measure& Report::operator[](std::string_view name) const {
  for (const auto& m : measures)
    if (m.name == name) return m;
  throw Error("report: no measure named '" + std::string(name) + "'");
}

bool Report::has(std::string_view name) const {
  return std::any_of(measures.begin(), measures.end(), [&](const Measure& m) { return m.name == name; });
}

double Report::worst() const {
  double w = 0.0;
  for (const auto& m : measures)
    if (!m.above && !m.informational) w = std::isnan(m.value) ? m.value : std::max(w, m.value);
  return w;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<double> max_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (out.size() < r.size()) out.resize(r.size(), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i)
      out[i] = (std::isnan(r[i]) || std::isnan(out[i])) ? NAN : std::max(out[i], r[i]);
  }
  return out;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = (std::isnan(x) || std::isnan(m)) ? NAN : std::max(m, x);
  return m;
}

}  // namespace metsymp
