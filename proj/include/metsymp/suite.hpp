#pragma once

// Ordered verification suite over one contact metric structure, and its
// JSON/text serialization.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metsymp/contact.hpp"

namespace metsymp {

inline constexpr const char* kToolVersion = "0.1.0";

struct SuiteConfig {
  int samples = 50;
  std::uint64_t seed = 42;
  Interval t_range{-1.0, 1.0};
  // Per-record threshold overrides keyed by record id ("check/measure").
  std::map<std::string, double> thresholds;
  Exec exec = Exec::parallel;
};

// One measure of one check. Errors raised by a check become a single failing
// record "<check>/error" with the message and a NaN residual. Informational
// records carry no verdict and are left out of the pass/fail counts.
struct CheckRecord {
  std::string id;
  std::string check;
  std::string anchor;
  double residual = 0.0;
  double threshold = 0.0;
  bool above = false;
  bool informational = false;
  bool pass = false;
  std::string error;
};

struct SuiteReport {
  std::string version = kToolVersion;
  std::string entry;
  SuiteConfig config;
  std::vector<CheckRecord> records;
  std::optional<double> kappa, mu, index;
  double wall_seconds = 0.0;

  int passed() const;
  int failed() const;
  bool all_passed() const { return failed() == 0; }
};

// Check ids in execution order.
const std::vector<std::string>& suite_checks();
std::string check_anchor(const std::string& check);

// Throws ConfigError for samples < 1 or an empty t-range.
SuiteReport run_suite(const std::string& entry, const ContactMetricStructure& s, const SuiteConfig& config = {});

// format ∈ {"json", "text"}; ConfigError otherwise. Wall time is written in
// text form only, so JSON output depends on (entry, config) alone.
std::string report_emit(const SuiteReport& report, const std::string& format);

}  // namespace metsymp
