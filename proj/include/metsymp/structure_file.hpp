#pragma once

// Declarative structure files.
//
//   # comment
//   name unit-tangent-custom
//   chart x -1 1
//   chart theta 0 2*pi
//   eta[x] = cos(theta)/2
//   g[x,theta] = ...          (symmetric: g[theta,x] is implied)
//   phi[x,theta] = ...        (φ^x_θ, upper index first)
//
// Chart lines come first and fix the coordinate order. Indices are coordinate
// names or 0-based integers; unset components are zero. Expressions use
// + - * / ^ (also ×, ÷, −), exp log sin cos sqrt, pi, numbers and coordinate
// names. ParseError carries a 1-based line and column (in code points).

#include <string>
#include <string_view>
#include <vector>

#include "metsymp/contact.hpp"

namespace metsymp {

struct StructureFile {
  std::string name;
  ContactMetricStructure structure;
};

Expr parse_expression(std::string_view text, const std::vector<std::string>& names);

StructureFile parse_structure(std::string_view text);
StructureFile load_structure_file(const std::string& path);

}  // namespace metsymp
