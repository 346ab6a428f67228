#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "metsymp/catalog.hpp"
#include "metsymp/errors.hpp"
#include "metsymp/structure_file.hpp"

using namespace metsymp;

namespace {

const std::vector<std::string> kNames = {"x", "y", "theta"};

double eval(const std::string& text, std::vector<double> at = {0.3, -0.7, 1.1}) {
  return parse_expression(text, kNames).eval(at);
}

ParseError parse_error(const std::string& text) {
  try {
    parse_structure(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError("", 0, 0);
}

constexpr const char* kDarboux = R"(# comment
name darboux
chart x -1 1
chart y -1 1
chart z -1 1
eta[x] = -y/2      # trailing comment
eta[2] = 1/2
g[x,x] = (1 + y^2)/4
g[z,x] = -y/4
g[y,y] = 1/4
g[z,z] = 1/4
phi[x,y] = 1
phi[y,x] = -1
phi[z,y] = y
)";

}  // namespace

TEST(Expression, Precedence) {
  EXPECT_DOUBLE_EQ(eval("1 + 2*3"), 7.0);
  EXPECT_DOUBLE_EQ(eval("(1 + 2)*3"), 9.0);
  EXPECT_DOUBLE_EQ(eval("2^3^2"), 512.0);
  EXPECT_DOUBLE_EQ(eval("-2^2"), -4.0);
  EXPECT_DOUBLE_EQ(eval("8/4/2"), 1.0);
  EXPECT_DOUBLE_EQ(eval("2 - 3 - 4"), -5.0);
  EXPECT_DOUBLE_EQ(eval("1.5e2 + .5"), 150.5);
}

TEST(Expression, FunctionsVariablesAndConstants) {
  EXPECT_DOUBLE_EQ(eval("x*y + theta"), 0.3 * -0.7 + 1.1);
  EXPECT_DOUBLE_EQ(eval("sin(theta)^2 + cos(theta)^2"), 1.0);
  EXPECT_NEAR(eval("exp(log(2))"), 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(eval("sqrt(16)"), 4.0);
  EXPECT_DOUBLE_EQ(eval("pi"), std::numbers::pi);
  EXPECT_DOUBLE_EQ(eval("2*π"), 2 * std::numbers::pi);
}

TEST(Expression, UnicodeOperators) {
  EXPECT_DOUBLE_EQ(eval("3 × 4 ÷ 2 − 1"), 5.0);
  EXPECT_DOUBLE_EQ(eval("−x"), -0.3);
}

TEST(Expression, DerivativesFlowThroughJets) {
  const Expr e = parse_expression("x^2*sin(y)", kNames);
  std::vector<Jet> v = {Jet::variable(3, 1, 0, 0.3), Jet::variable(3, 1, 1, -0.7), Jet::variable(3, 1, 2, 1.1)};
  const Jet j = e.eval(v);
  EXPECT_NEAR(j.partial(0).value(), 2 * 0.3 * std::sin(-0.7), 1e-15);
  EXPECT_NEAR(j.partial(1).value(), 0.09 * std::cos(-0.7), 1e-15);
}

TEST(Expression, Errors) {
  EXPECT_THROW(eval("1 +"), ParseError);
  EXPECT_THROW(eval("foo(1)"), ParseError);
  EXPECT_THROW(eval("(1 + 2"), ParseError);
  EXPECT_THROW(eval("sin 1"), ParseError);
  EXPECT_THROW(eval("1 2"), ParseError);
  try {
    eval("x + $");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 5);
  }
}

TEST(StructureFile, ReproducesCatalogDarboux) {
  const auto f = parse_structure(kDarboux);
  EXPECT_EQ(f.name, "darboux");
  const auto ref = catalog_load("darboux-sasakian-r3").structure;
  ASSERT_EQ(f.structure.chart().names(), ref.chart().names());
  for (const auto& p : ref.chart().sample(20)) {
    for (const auto& [a, b] : {std::pair{f.structure.eta(), ref.eta()}, std::pair{f.structure.g(), ref.g()},
                               std::pair{f.structure.phi(), ref.phi()}}) {
      const TensorValue u = a.value(p), v = b.value(p);
      for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(u[i], v[i], 1e-15);
    }
  }
  EXPECT_TRUE(verify_compatibility(f.structure, f.structure.chart().sample(20)).passed());
}

TEST(StructureFile, ChartBoundsAcceptExpressions) {
  const auto f = parse_structure("chart x 0 2*pi\nchart y -1 1\nchart z -1 1\neta[z] = 1\n");
  EXPECT_DOUBLE_EQ(f.structure.chart().domain()[0].hi, 2 * std::numbers::pi);
}

TEST(StructureFile, ErrorsCarryPositions) {
  auto e = parse_error("chart x -1 1\nchart y -1 1\nchart z -1 1\neta[x] = y +\n");
  EXPECT_EQ(e.line(), 4);
  EXPECT_EQ(e.column(), 13);
  e = parse_error("chart x -1 1\nchart y -1 1\nchart z -1 1\neta[w] = 1\n");
  EXPECT_EQ(e.line(), 4);
  EXPECT_EQ(e.column(), 5);
  e = parse_error("chart x -1 1\nchart y -1 1\nchart z -1 1\nmetric[x,x] = 1\n");
  EXPECT_EQ(e.line(), 4);
  EXPECT_EQ(e.column(), 1);
  e = parse_error("chart x 1 -1\n");
  EXPECT_EQ(e.line(), 1);
  e = parse_error("eta[0] = 1\n");
  EXPECT_EQ(e.line(), 1);
  e = parse_error("chart x -1 1\nchart x -1 1\n");
  EXPECT_EQ(e.line(), 2);
  e = parse_error("chart x -1 y\n");
  EXPECT_EQ(e.line(), 1);
  e = parse_error("");
  EXPECT_EQ(e.line(), 1);
  // column counts code points, not bytes
  e = parse_error("chart x -1 1\nchart y -1 1\nchart z -1 1\neta[x] = −y ×\n");
  EXPECT_EQ(e.column(), 14);
}

TEST(StructureFile, OddDimensionIsEnforced) {
  EXPECT_THROW(parse_structure("chart x -1 1\nchart y -1 1\neta[x] = 1\n"), ShapeError);
}

TEST(StructureFile, MissingFileIsConfigError) {
  EXPECT_THROW(load_structure_file("/nonexistent/structure.ms"), ConfigError);
}
