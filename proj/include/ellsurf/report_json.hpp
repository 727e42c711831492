#pragma once

// JSON form of a Report, schema version 1. Integers and rationals are decimal
// strings ("-3", "7/16"); polynomials are coefficient arrays, lowest degree
// first; special values are {sign, num, den, log_power, order}. Keys keep a
// fixed order so equal reports serialize to identical bytes. The thread count
// is not serialized.

#include <string>
#include <string_view>

#include <json.hpp>

#include "ellsurf/config.hpp"
#include "ellsurf/verify.hpp"

namespace ellsurf {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Rational& x);
Json to_json(const RatPoly& f);
Json to_json(const SpecialValue& v);
Json to_json(const FieldCtx& ctx, const Place& v);
Json to_json(const FieldCtx& ctx, const FiberData& f);
Json to_json(const SurfaceInvariants& inv, const FieldCtx& ctx);
Json to_json(const CheckResult& c);
Json to_json(const Report& report);
/// Model and bad-fiber table only (the analyze command).
Json analysis_json(const WeierstrassModel& model, const SurfaceInvariants& inv, const std::vector<FiberData>& bad);

// Inverses; all throw ParseError on malformed input.
Rational rational_from_json(const Json& j);
RatPoly poly_from_json(const Json& j);
SpecialValue special_value_from_json(const Json& j);
Place place_from_json(const FieldCtx& ctx, const Json& j);
FiberData fiber_from_json(const FieldCtx& ctx, const Json& j);
CheckResult check_from_json(const Json& j);
Report report_from_json(const Json& j);

/// dump(2) plus a trailing newline.
std::string report_text(const Report& report);
std::string sha256_hex(std::string_view bytes);

/// "inf" or a JSON list of coefficient indices of the monic polynomial, lowest
/// degree first ("[1, 1]" is t + 1). Throws ParseError, BadField.
Place parse_place(const FieldCtx& ctx, std::string_view text);

}  // namespace ellsurf
