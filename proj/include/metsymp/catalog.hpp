#pragma once

// Built-in contact metric structures.
//
// Each entry is generated from a template: a contact form shape η₀, a full
// metric shape g₀ (including the Reeb direction) and φ. The scalars in
// η = s_η·η₀, g = s_g·g₀ are found by `calibrate` and frozen in the source;
// a regeneration test re-runs the search.

#include <optional>
#include <string>
#include <vector>

#include "metsymp/contact.hpp"

namespace metsymp {

struct StructureTemplate {
  Chart chart;
  std::vector<Expr> eta;  // η₀ components
  std::vector<Expr> g;    // g₀ components, row-major
  std::vector<Expr> phi;  // φ^i_j, row-major
};

ContactMetricStructure instantiate(const StructureTemplate& t, double s_eta, double s_g);

struct Calibration {
  double s_eta = 0.0;
  double s_g = 0.0;
};

// All (s_η, s_g) ∈ {2^k : k = −3..3}² passing verify_compatibility.
std::vector<Calibration> calibrate(const StructureTemplate& t, const Samples& samples);

struct CatalogEntry {
  std::string name;
  std::string description;
  ContactMetricStructure structure;
  std::optional<double> kappa;  // expected values
  std::optional<double> mu;
  std::string provenance;
};

std::vector<std::string> catalog_names();
StructureTemplate catalog_template(const std::string& name);
Calibration frozen_calibration(const std::string& name);
CatalogEntry catalog_load(const std::string& name);

}  // namespace metsymp
