#include "metsymp/catalog.hpp"

#include <cmath>
#include <numbers>

#include "metsymp/errors.hpp"

namespace metsymp {

namespace {

constexpr const char* kDarboux = "darboux-sasakian-r3";
constexpr const char* kUnitTangent = "unit-tangent-flat-plane";

// Frozen output of `calibrate` for the templates below.
constexpr Calibration kDarbouxCalibration{0.5, 0.25};
constexpr Calibration kUnitTangentCalibration{0.5, 0.25};

StructureTemplate darboux_template() {
  const Expr y = Expr::var(1);
  StructureTemplate t{Chart({"x", "y", "z"}, {{-1, 1}, {-1, 1}, {-1, 1}}), {}, {}, {}};
  t.eta = {-y, 0.0, 1.0};
  // dx² + dy² + η₀⊗η₀
  t.g = {1.0 + y * y, 0.0, -y, 0.0, 1.0, 0.0, -y, 0.0, 1.0};
  // φ∂x = −∂y, φ∂y = ∂x + y∂z, φ∂z = 0
  t.phi = {0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, y, 0.0};
  return t;
}

StructureTemplate unit_tangent_template() {
  const Expr th = Expr::var(2);
  StructureTemplate t{Chart({"x", "y", "theta"}, {{-1, 1}, {-1, 1}, {0, 2 * std::numbers::pi}}), {}, {}, {}};
  t.eta = {cos(th), sin(th), 0.0};
  t.g = {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
  // φ∂x = −sinθ ∂θ, φ∂y = cosθ ∂θ, φ∂θ = sinθ ∂x − cosθ ∂y
  t.phi = {0.0, 0.0, sin(th), 0.0, 0.0, -cos(th), -sin(th), cos(th), 0.0};
  return t;
}

}  // namespace

ContactMetricStructure instantiate(const StructureTemplate& t, double s_eta, double s_g) {
  const int n = t.chart.dim();
  std::vector<Expr> eta, g;
  for (const auto& e : t.eta) eta.push_back(s_eta * e);
  if (static_cast<int>(t.g.size()) != n * n || static_cast<int>(t.phi.size()) != n * n ||
      static_cast<int>(t.eta.size()) != n)
    throw ShapeError("structure template: component counts do not match the chart");
  for (const auto& c : t.g) g.push_back(s_g * c);
  return ContactMetricStructure(TensorField::from_exprs(t.chart, {0, 1}, Symmetry::none, eta),
                                TensorField::from_exprs(t.chart, {0, 2}, Symmetry::symmetric, g),
                                TensorField::from_exprs(t.chart, {1, 1}, Symmetry::none, t.phi));
}

std::vector<Calibration> calibrate(const StructureTemplate& t, const Samples& samples) {
  std::vector<Calibration> found;
  for (int ke = -3; ke <= 3; ++ke)
    for (int kg = -3; kg <= 3; ++kg) {
      const Calibration c{std::ldexp(1.0, ke), std::ldexp(1.0, kg)};
      if (verify_compatibility(instantiate(t, c.s_eta, c.s_g), samples).passed()) found.push_back(c);
    }
  return found;
}

std::vector<std::string> catalog_names() { return {kDarboux, kUnitTangent}; }

StructureTemplate catalog_template(const std::string& name) {
  if (name == kDarboux) return darboux_template();
  if (name == kUnitTangent) return unit_tangent_template();
  throw ConfigError("unknown catalog entry: " + name);
}

Calibration frozen_calibration(const std::string& name) {
  if (name == kDarboux) return kDarbouxCalibration;
  if (name == kUnitTangent) return kUnitTangentCalibration;
  throw ConfigError("unknown catalog entry: " + name);
}

CatalogEntry catalog_load(const std::string& name) {
  const StructureTemplate t = catalog_template(name);
  const Calibration c = frozen_calibration(name);
  ContactMetricStructure s = instantiate(t, c.s_eta, c.s_g);
  if (name == kDarboux)
    return {name, "Sasakian structure on R^3 in Darboux coordinates, eta = (dz - y dx)/2", std::move(s), 1.0,
            std::nullopt, "kappa = 1 characterizes Sasakian structures; mu is not determined"};
  return {name, "unit tangent bundle of the flat plane, chart (x, y, theta)", std::move(s), 0.0, 0.0,
          "tangent sphere bundle of a flat manifold: R(X,Y)xi = 0"};
}

}  // namespace metsymp
