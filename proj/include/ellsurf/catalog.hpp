#pragma once

// Built-in fixture surfaces with their expected results.

#include <string>
#include <string_view>
#include <vector>

#include "ellsurf/config.hpp"

namespace ellsurf {

struct CatalogEntry {
  std::string name;
  std::string description;
  std::string config_text;
  /// Expected values, as printed by RatPoly::to_string / to_string(Rational);
  /// empty when the value is not computable for this surface.
  std::string p2;
  std::string L;
  std::string predicted_br;
  std::string predicted_sha;
  /// SHA-256 of the JSON report produced by `report` with default options.
  std::string digest;
};

const std::vector<CatalogEntry>& catalog();
/// Throws InvalidArgument for unknown names.
const CatalogEntry& catalog_entry(std::string_view name);

}  // namespace ellsurf
