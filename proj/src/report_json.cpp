#include "ellsurf/report_json.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace ellsurf {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::ParseError, "report JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing key '") + key + "'");
  return j.at(key);
}

int int_of(const Json& j, const char* key) {
  const Json& x = field(j, key);
  if (!x.is_number_integer()) malformed(std::string("'") + key + "' is not an integer");
  return x.get<int>();
}

std::string str_of(const Json& j, const char* key) {
  const Json& x = field(j, key);
  if (!x.is_string()) malformed(std::string("'") + key + "' is not a string");
  return x.get<std::string>();
}

Integer integer_from_json(const Json& j) {
  const Rational r = rational_from_json(j);
  if (!is_integer(r)) malformed("expected an integer, got " + j.dump());
  return boost::multiprecision::numerator(r);
}

template <class T, class F>
Json optional_json(const std::optional<T>& x, F&& f) {
  return x ? f(*x) : Json(nullptr);
}

Json fq_poly_json(const FieldCtx& ctx, const FqPoly& f) {
  Json out = Json::array();
  for (const auto& c : f.c) out.push_back(ctx.index(c));
  return out;
}

FqPoly fq_poly_from_json(const FieldCtx& ctx, const Json& j) {
  if (!j.is_array()) malformed("expected a coefficient list");
  FqPoly f;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= ctx.q()) malformed("bad field element " + x.dump());
    f.c.push_back(ctx.element(x.get<std::uint64_t>()));
  }
  fq::trim(ctx, f);
  return f;
}

Json snapshot_json(const Snapshot& s) {
  Json out;
  if (std::holds_alternative<SpecialValue>(s)) {
    out["kind"] = "special_value";
    out["value"] = to_json(std::get<SpecialValue>(s));
  } else if (std::holds_alternative<RatPoly>(s)) {
    out["kind"] = "polynomial";
    out["value"] = to_json(std::get<RatPoly>(s));
  } else if (std::holds_alternative<Rational>(s)) {
    out["kind"] = "rational";
    out["value"] = to_json(std::get<Rational>(s));
  } else {
    out["kind"] = "none";
  }
  return out;
}

Snapshot snapshot_from_json(const Json& j) {
  const std::string kind = str_of(j, "kind");
  if (kind == "none") return {};
  if (kind == "special_value") return special_value_from_json(field(j, "value"));
  if (kind == "polynomial") return poly_from_json(field(j, "value"));
  if (kind == "rational") return rational_from_json(field(j, "value"));
  malformed("unknown snapshot kind '" + kind + "'");
}

Status status_from_string(const std::string& s) {
  for (auto st : {Status::Pass, Status::Fail, Status::Conditional, Status::Skipped})
    if (to_string(st) == s) return st;
  malformed("unknown status '" + s + "'");
}

Json model_json(const WeierstrassModel& m) {
  const auto& ctx = m.ctx;
  Json out;
  Json fieldj;
  fieldj["p"] = ctx.p();
  Json modulus = Json::array();
  for (auto c : ctx.modulus()) modulus.push_back(c);
  fieldj["modulus"] = modulus;
  fieldj["q"] = to_string(Integer(ctx.q()));
  out["field"] = fieldj;
  static const char* names[] = {"a1", "a2", "a3", "a4", "a6"};
  Json a;
  for (std::size_t i = 0; i < 5; ++i) a[names[i]] = fq_poly_json(ctx, m.a[i]);
  out["a"] = a;
  out["short_form"] = {{"A", fq_poly_json(ctx, m.A)}, {"B", fq_poly_json(ctx, m.B)}};
  out["infinity_weight"] = effective_infinity_weight(m);
  return out;
}

WeierstrassModel model_from_json(const Json& j) {
  const Json& f = field(j, "field");
  std::vector<long long> modulus;
  for (const auto& c : field(f, "modulus")) modulus.push_back(c.get<long long>());
  const FieldCtx ctx = FieldCtx::make(field(f, "p").get<std::uint32_t>(), modulus);
  static const char* names[] = {"a1", "a2", "a3", "a4", "a6"};
  std::array<FqPoly, 5> a;
  for (std::size_t i = 0; i < 5; ++i) a[i] = fq_poly_from_json(ctx, field(field(j, "a"), names[i]));
  return make_model(ctx, a, int_of(j, "infinity_weight"));
}

Json mutation_json(const FieldCtx& ctx, const Mutation& mu) {
  return Json{{"field", std::string(to_string(mu.field))}, {"place", to_json(ctx, mu.place)}, {"delta", mu.delta}, {"component", mu.component}};
}

}  // namespace

Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const RatPoly& f) {
  Json out = Json::array();
  for (const auto& c : f.coefficients()) out.push_back(to_string(c));
  return out;
}

Json to_json(const SpecialValue& v) {
  return Json{{"sign", v.sign},
              {"num", to_string(boost::multiprecision::numerator(v.value))},
              {"den", to_string(boost::multiprecision::denominator(v.value))},
              {"log_power", v.log_power},
              {"order", v.order}};
}

Json to_json(const FieldCtx& ctx, const Place& v) {
  if (v.infinite) return "inf";
  return fq_poly_json(ctx, v.poly);
}

Json to_json(const FieldCtx& ctx, const FiberData& f) {
  Json orbits = Json::array();
  for (const auto& o : f.orbits) orbits.push_back(o);
  Json components = Json::array();
  for (const auto& c : f.components) components.push_back({{"r", c.r}, {"multiplicity", c.multiplicity}});
  return Json{{"place", to_json(ctx, f.place)},
              {"place_text", to_string(ctx, f.place)},
              {"d_v", f.d_v},
              {"q_v", to_string(f.q_v)},
              {"kodaira", kodaira_name(f.type, f.n)},
              {"split", f.split},
              {"cubic_roots", f.cubic_roots},
              {"frobenius", f.frobenius},
              {"orbits", orbits},
              {"components", components},
              {"m_v", f.m_v},
              {"c_v", to_string(f.c_v)},
              {"f_v", f.f_v},
              {"e_v", f.e_v},
              {"a_v", to_string(f.a_v)},
              {"l_factor", to_json(f.l_factor)}};
}

Json to_json(const SurfaceInvariants& inv, const FieldCtx& ctx) {
  Json Z = Json::array();
  for (const auto& v : inv.Z) Z.push_back(to_json(ctx, v));
  return Json{{"e", inv.e},          {"chi", inv.chi},       {"b2", inv.b2},       {"deg_cond", inv.deg_cond},
              {"deg_L", inv.deg_L},  {"m", inv.m},           {"alpha", inv.alpha}, {"chi_lie", inv.chi_lie},
              {"B_order", inv.B_order}, {"dim_B", inv.dim_B}, {"dim_A", inv.dim_A}, {"delta", inv.delta},
              {"alpha_index", inv.alpha_index}, {"Z", Z}};
}

Json to_json(const CheckResult& c) {
  return Json{{"name", c.name},
              {"status", std::string(to_string(c.status))},
              {"lhs", snapshot_json(c.lhs)},
              {"rhs", snapshot_json(c.rhs)},
              {"sign_agrees", c.sign_agrees},
              {"details", c.details}};
}

Json to_json(const Report& r) {
  const auto& ctx = r.model.ctx;
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["model"] = model_json(r.model);
  out["metadata"] = Json{{"mw_rank", optional_json(r.metadata.mw_rank, [](int x) { return Json(x); })},
                         {"mw_torsion_order", optional_json(r.metadata.mw_torsion_order, [](const Integer& x) { return Json(to_string(x)); })},
                         {"notes", r.metadata.notes}};
  Json mutations = Json::array();
  for (const auto& mu : r.options.mutations) mutations.push_back(mutation_json(ctx, mu));
  out["options"] = Json{{"limits",
                         {{"n_max", r.options.limits.n_max},
                          {"place_degree_cap", r.options.limits.place_degree_cap},
                          {"surplus_margin", r.options.limits.surplus_margin}}},
                        {"assume_rank", optional_json(r.options.assume_rank, [](int x) { return Json(x); })},
                        {"seed", std::to_string(r.options.seed)},
                        {"mutations", mutations}};
  out["invariants"] = to_json(r.inv, ctx);
  Json fibers = Json::array();
  for (const auto& f : r.bad) fibers.push_back(to_json(ctx, f));
  out["fibers"] = fibers;
  Json entries = Json::array();
  for (const auto& f : r.table.fibers) {
    if (f.bad())
      entries.push_back({{"place", to_json(ctx, f.place)}, {"bad", true}});
    else
      entries.push_back({{"place", to_json(ctx, f.place)}, {"a_v", to_string(f.a_v)}});
  }
  out["places"] = Json{{"max_degree", r.table.max_degree}, {"entries", entries}};
  Json counts = Json::array();
  for (const auto& n : r.counts) counts.push_back(to_string(n));
  out["counts"] = counts;
  auto poly = [](const RatPoly& f) { return to_json(f); };
  auto sv = [](const SpecialValue& v) { return to_json(v); };
  auto rat = [](const Rational& x) { return to_json(x); };
  out["P2"] = Json{{"from_counts", optional_json(r.p2_counts, poly)}, {"via_L_Q2", optional_json(r.p2_product, poly)}};
  out["L"] = Json{{"coefficients", optional_json(r.L, poly)}, {"route", r.l_route}};
  if (r.q2)
    out["Q2"] = Json{{"numerator", to_json(r.q2->Q2.numerator())},
                     {"denominator", to_json(r.q2->Q2.denominator())},
                     {"star", to_json(r.q2->star)},
                     {"closed_form", to_json(r.q2->closed_form)},
                     {"m", r.q2->m}};
  else
    out["Q2"] = nullptr;
  out["special_values"] = Json{{"P2_star", optional_json(r.p2_star, sv)},
                               {"L_star", optional_json(r.l_star, sv)},
                               {"ns_discriminant", optional_json(r.ns_discriminant, sv)}};
  out["c_J"] = to_string(r.c_J);
  out["m"] = r.inv.m;
  out["rho"] = optional_json(r.rho, [](int x) { return Json(x); });
  out["rank"] = optional_json(r.rank, [](int x) { return Json(x); });
  out["rank_source"] = r.rank_source;
  out["predicted"] = Json{{"br", optional_json(r.predicted_br, rat)},
                          {"br_note", r.br_note},
                          {"sha", optional_json(r.predicted_sha, rat)},
                          {"sha_note", r.sha_note}};
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  out["checks"] = checks;
  out["failed"] = r.failed();
  return out;
}

Json analysis_json(const WeierstrassModel& model, const SurfaceInvariants& inv, const std::vector<FiberData>& bad) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["model"] = model_json(model);
  out["invariants"] = to_json(inv, model.ctx);
  Json fibers = Json::array();
  for (const auto& f : bad) fibers.push_back(to_json(model.ctx, f));
  out["fibers"] = fibers;
  return out;
}

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) malformed("expected a decimal string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

RatPoly poly_from_json(const Json& j) {
  if (!j.is_array()) malformed("expected a coefficient array");
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  return RatPoly(std::move(c));
}

SpecialValue special_value_from_json(const Json& j) {
  const Rational value = Rational(integer_from_json(field(j, "num"))) / Rational(integer_from_json(field(j, "den")));
  return {int_of(j, "sign"), value, int_of(j, "log_power"), int_of(j, "order")};
}

Place place_from_json(const FieldCtx& ctx, const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Place::infinity();
  return Place::finite(fq_poly_from_json(ctx, j));
}

FiberData fiber_from_json(const FieldCtx& ctx, const Json& j) {
  FiberData f;
  f.place = place_from_json(ctx, field(j, "place"));
  f.d_v = int_of(j, "d_v");
  f.q_v = integer_from_json(field(j, "q_v"));
  const auto [type, n] = parse_kodaira(str_of(j, "kodaira"));
  f.type = type;
  f.n = n;
  f.split = field(j, "split").get<bool>();
  f.cubic_roots = int_of(j, "cubic_roots");
  f.frobenius = field(j, "frobenius").get<std::vector<int>>();
  f.orbits = field(j, "orbits").get<std::vector<std::vector<int>>>();
  for (const auto& c : field(j, "components")) f.components.push_back({int_of(c, "r"), int_of(c, "multiplicity")});
  f.m_v = int_of(j, "m_v");
  f.c_v = integer_from_json(field(j, "c_v"));
  f.f_v = int_of(j, "f_v");
  f.e_v = int_of(j, "e_v");
  f.a_v = integer_from_json(field(j, "a_v"));
  f.l_factor = poly_from_json(field(j, "l_factor"));
  return f;
}

CheckResult check_from_json(const Json& j) {
  CheckResult c;
  c.name = str_of(j, "name");
  c.status = status_from_string(str_of(j, "status"));
  c.lhs = snapshot_from_json(field(j, "lhs"));
  c.rhs = snapshot_from_json(field(j, "rhs"));
  c.sign_agrees = field(j, "sign_agrees").get<bool>();
  c.details = str_of(j, "details");
  return c;
}

Report report_from_json(const Json& j) {
  try {
    if (int_of(j, "schema_version") != kSchemaVersion) malformed("unsupported schema_version");
    Report r(model_from_json(field(j, "model")));
    const auto& ctx = r.model.ctx;
    const Json& md = field(j, "metadata");
    if (!field(md, "mw_rank").is_null()) r.metadata.mw_rank = int_of(md, "mw_rank");
    if (!field(md, "mw_torsion_order").is_null()) r.metadata.mw_torsion_order = integer_from_json(field(md, "mw_torsion_order"));
    r.metadata.notes = str_of(md, "notes");
    const Json& opt = field(j, "options");
    const Json& lim = field(opt, "limits");
    r.options.limits = {int_of(lim, "n_max"), int_of(lim, "place_degree_cap"), int_of(lim, "surplus_margin")};
    if (!field(opt, "assume_rank").is_null()) r.options.assume_rank = int_of(opt, "assume_rank");
    r.options.seed = std::stoull(str_of(opt, "seed"));
    for (const auto& mu : field(opt, "mutations"))
      r.options.mutations.push_back(
          {place_from_json(ctx, field(mu, "place")), parse_mutation_field(str_of(mu, "field")), int_of(mu, "delta"), int_of(mu, "component")});
    const Json& inv = field(j, "invariants");
    r.inv.e = int_of(inv, "e");
    r.inv.chi = int_of(inv, "chi");
    r.inv.b2 = int_of(inv, "b2");
    r.inv.deg_cond = int_of(inv, "deg_cond");
    r.inv.deg_L = int_of(inv, "deg_L");
    r.inv.m = int_of(inv, "m");
    r.inv.alpha = int_of(inv, "alpha");
    r.inv.chi_lie = int_of(inv, "chi_lie");
    r.inv.B_order = int_of(inv, "B_order");
    r.inv.dim_B = int_of(inv, "dim_B");
    r.inv.dim_A = int_of(inv, "dim_A");
    r.inv.delta = int_of(inv, "delta");
    r.inv.alpha_index = int_of(inv, "alpha_index");
    for (const auto& v : field(inv, "Z")) r.inv.Z.push_back(place_from_json(ctx, v));
    for (const auto& f : field(j, "fibers")) r.bad.push_back(fiber_from_json(ctx, f));
    const Json& places = field(j, "places");
    r.table.max_degree = int_of(places, "max_degree");
    for (const auto& e : field(places, "entries")) {
      const Place v = place_from_json(ctx, field(e, "place"));
      if (e.contains("bad")) {
        auto it = std::find_if(r.bad.begin(), r.bad.end(), [&](const FiberData& f) { return f.place == v; });
        if (it == r.bad.end()) malformed("table entry marked bad without fiber data");
        r.table.fibers.push_back(*it);
      } else {
        FiberData f = make_good_fiber(ctx, v, integer_from_json(field(e, "a_v")));
        r.table.fibers.push_back(std::move(f));
      }
    }
    for (const auto& n : field(j, "counts")) r.counts.push_back(integer_from_json(n));
    const Json& p2 = field(j, "P2");
    if (!field(p2, "from_counts").is_null()) r.p2_counts = poly_from_json(field(p2, "from_counts"));
    if (!field(p2, "via_L_Q2").is_null()) r.p2_product = poly_from_json(field(p2, "via_L_Q2"));
    const Json& L = field(j, "L");
    if (!field(L, "coefficients").is_null()) r.L = poly_from_json(field(L, "coefficients"));
    r.l_route = str_of(L, "route");
    const Json& q2 = field(j, "Q2");
    if (!q2.is_null()) {
      Q2Data d;
      d.Q2 = RatFunc(poly_from_json(field(q2, "numerator")), poly_from_json(field(q2, "denominator")));
      d.star = special_value_from_json(field(q2, "star"));
      d.closed_form = special_value_from_json(field(q2, "closed_form"));
      d.m = int_of(q2, "m");
      r.q2 = d;
    }
    const Json& sv = field(j, "special_values");
    if (!field(sv, "P2_star").is_null()) r.p2_star = special_value_from_json(field(sv, "P2_star"));
    if (!field(sv, "L_star").is_null()) r.l_star = special_value_from_json(field(sv, "L_star"));
    if (!field(sv, "ns_discriminant").is_null()) r.ns_discriminant = special_value_from_json(field(sv, "ns_discriminant"));
    r.c_J = integer_from_json(field(j, "c_J"));
    if (!field(j, "rho").is_null()) r.rho = int_of(j, "rho");
    if (!field(j, "rank").is_null()) r.rank = int_of(j, "rank");
    r.rank_source = str_of(j, "rank_source");
    const Json& pred = field(j, "predicted");
    if (!field(pred, "br").is_null()) r.predicted_br = rational_from_json(field(pred, "br"));
    if (!field(pred, "sha").is_null()) r.predicted_sha = rational_from_json(field(pred, "sha"));
    r.br_note = str_of(pred, "br_note");
    r.sha_note = str_of(pred, "sha_note");
    for (const auto& c : field(j, "checks")) r.checks.push_back(check_from_json(c));
    return r;
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

std::string report_text(const Report& report) { return to_json(report).dump(2) + "\n"; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::InvalidArgument, "SHA-256 computation failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

Place parse_place(const FieldCtx& ctx, std::string_view text) {
  if (text == "inf") return Place::infinity();
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw Error(ErrorKind::ParseError, "place '" + std::string(text) + "' is neither 'inf' nor a coefficient list");
  }
  FqPoly f;
  try {
    f = fq_poly_from_json(ctx, j);
  } catch (const Error&) {
    throw Error(ErrorKind::ParseError, "place '" + std::string(text) + "' is not a list of field element indices");
  }
  if (f.degree() < 1 || !fq::is_monic(ctx, f) || !fq::is_irreducible(ctx, f))
    throw Error(ErrorKind::BadField, "place '" + std::string(text) + "' is not a monic irreducible polynomial");
  return Place::finite(f);
}

}  // namespace ellsurf
