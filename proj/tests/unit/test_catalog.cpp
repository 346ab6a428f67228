#include <gtest/gtest.h>

#include "metsymp/catalog.hpp"
#include "metsymp/errors.hpp"

using namespace metsymp;

TEST(Catalog, NamesAndUnknownEntry) {
  const auto names = catalog_names();
  ASSERT_EQ(names.size(), 2u);
  EXPECT_EQ(names[0], "darboux-sasakian-r3");
  EXPECT_EQ(names[1], "unit-tangent-flat-plane");
  EXPECT_THROW(catalog_load("no-such-entry"), ConfigError);
}

// Re-runs the calibration search and checks it reproduces the frozen scalars.
TEST(Catalog, CalibrationRegenerates) {
  for (const auto& name : catalog_names()) {
    const auto t = catalog_template(name);
    const auto found = calibrate(t, t.chart.sample(20));
    ASSERT_EQ(found.size(), 1u) << name;
    const auto frozen = frozen_calibration(name);
    EXPECT_EQ(found[0].s_eta, frozen.s_eta) << name;
    EXPECT_EQ(found[0].s_g, frozen.s_g) << name;
  }
}

TEST(Catalog, EntriesPassCompatibility) {
  for (const auto& name : catalog_names()) {
    const auto e = catalog_load(name);
    EXPECT_EQ(e.name, name);
    EXPECT_TRUE(verify_compatibility(e.structure, e.structure.chart().sample(50)).passed()) << name;
  }
}

TEST(Catalog, ExpectedConstantsMatchFit) {
  for (const auto& name : catalog_names()) {
    const auto e = catalog_load(name);
    const auto fit = fit_kappa_mu(e.structure, e.structure.chart().sample(50));
    ASSERT_TRUE(e.kappa.has_value());
    EXPECT_NEAR(fit.kappa, *e.kappa, 1e-6) << name;
    EXPECT_EQ(fit.mu.has_value(), e.mu.has_value()) << name;
    if (e.mu) {
      EXPECT_NEAR(*fit.mu, *e.mu, 1e-6) << name;
    }
  }
}
