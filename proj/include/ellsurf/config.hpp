#pragma once

// Surface configuration files, format version 1:
//
//   # comment
//   format = 1                  (optional, before any section)
//   [field]
//   p = 5
//   modulus = [2, 0, 1]         (optional; monic irreducible over F_p, lowest degree first)
//   [model]
//   a1 = []  a2 = ...  a6 = [0, 1]
//   [metadata]
//   mw_rank = 0
//   mw_torsion_order = 4
//   notes = free text to the end of the line
//   [limits]
//   n_max = 5
//   place_degree_cap = 6
//   surplus_margin = 2
//
// a1..a6 are coefficient lists in t, lowest degree first. Each coefficient is an
// integer reduced mod p, or for an extension field a list [c0, c1, ...] meaning
// c0 + c1 x + ... with x the class of the modulus variable.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ellsurf/tatefiber.hpp"
#include "ellsurf/verify.hpp"

namespace ellsurf {

/// Coefficient of a_i: integers over F_p, lowest power of x first.
using ConfigCoeff = std::vector<long long>;

struct Config {
  int format = 1;
  std::uint32_t p = 0;
  std::vector<long long> modulus;
  /// a1, a2, a3, a4, a6
  std::array<std::vector<ConfigCoeff>, 5> a;
  SurfaceMetadata metadata;
  Limits limits;

  friend bool operator==(const Config&, const Config&) = default;
};

/// Throws ParseError (syntax, duplicates), UnknownKey, BadField; messages name the line.
Config parse_config(std::string_view text);
/// Canonical text; parse_config(format_config(c)) == c.
std::string format_config(const Config& config);

FieldCtx build_field(const Config& config);
/// Throws BadField, UnsupportedModel.
WeierstrassModel build_model(const Config& config);

}  // namespace ellsurf
