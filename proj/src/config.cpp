#include "ellsurf/config.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ellsurf {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"", {"format"}},
      {"field", {"p", "modulus"}},
      {"model", {"a1", "a2", "a3", "a4", "a6"}},
      {"metadata", {"mw_rank", "mw_torsion_order", "notes"}},
      {"limits", {"n_max", "place_degree_cap", "surplus_margin"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string at(int line, const std::string& key) { return "line " + std::to_string(line) + ": " + key; }

long long parse_int(const std::string& text, int line, const std::string& key) {
  long long v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw Error(ErrorKind::ParseError, at(line, key) + " expects an integer, got '" + text + "'");
  return v;
}

Integer parse_big(const std::string& text, int line, const std::string& key) {
  const Rational r = [&] {
    try {
      return parse_rational(text);
    } catch (const Error&) {
      throw Error(ErrorKind::ParseError, at(line, key) + " expects an integer, got '" + text + "'");
    }
  }();
  if (!is_integer(r)) throw Error(ErrorKind::ParseError, at(line, key) + " expects an integer, got '" + text + "'");
  return boost::multiprecision::numerator(r);
}

nlohmann::json parse_list(const std::string& text, int line, const std::string& key) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw Error(ErrorKind::ParseError, at(line, key) + " expects a list like [0, 1], got '" + text + "'");
  }
  if (!j.is_array()) throw Error(ErrorKind::ParseError, at(line, key) + " expects a list, got '" + text + "'");
  return j;
}

std::vector<long long> int_list(const nlohmann::json& j, int line, const std::string& key) {
  std::vector<long long> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error(ErrorKind::ParseError, at(line, key) + " entries must be integers");
    out.push_back(x.get<long long>());
  }
  return out;
}

std::vector<ConfigCoeff> coeff_list(const nlohmann::json& j, int line, const std::string& key) {
  std::vector<ConfigCoeff> out;
  for (const auto& x : j) {
    if (x.is_number_integer())
      out.push_back({x.get<long long>()});
    else if (x.is_array())
      out.push_back(int_list(x, line, key));
    else
      throw Error(ErrorKind::ParseError, at(line, key) + " coefficients must be integers or integer lists");
  }
  return out;
}

std::string list_text(const std::vector<long long>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

Config parse_config(std::string_view text) {
  Config c;
  std::string section;
  std::set<std::string> seen;
  std::map<std::string, int> line_of;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool any_section = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": unterminated section header");
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      if (section.empty() || !schema().count(section))
        throw Error(ErrorKind::UnknownKey, "line " + std::to_string(line) + ": unknown section [" + section + "]");
      if (!seen.insert("[" + section + "]").second)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": duplicate section [" + section + "]");
      any_section = true;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    const std::string full = section.empty() ? key : section + "." + key;
    if (!schema().at(section).count(key)) throw Error(ErrorKind::UnknownKey, at(line, "unknown key '" + full + "'"));
    if (key == "format" && any_section) throw Error(ErrorKind::ParseError, at(line, "format must precede every section"));
    if (!seen.insert(full).second) throw Error(ErrorKind::ParseError, at(line, "duplicate key '" + full + "'"));
    line_of[full] = line;

    if (full == "format") {
      c.format = static_cast<int>(parse_int(value, line, full));
      if (c.format != 1) throw Error(ErrorKind::BadField, at(line, "unsupported format version " + value));
    } else if (full == "field.p") {
      const long long p = parse_int(value, line, full);
      if (p < 2 || p > 0xffffffffLL) throw Error(ErrorKind::BadField, at(line, "p = " + value + " is not prime"));
      c.p = static_cast<std::uint32_t>(p);
    } else if (full == "field.modulus") {
      c.modulus = int_list(parse_list(value, line, full), line, full);
    } else if (section == "model") {
      const int i = key == "a1" ? 0 : key == "a2" ? 1 : key == "a3" ? 2 : key == "a4" ? 3 : 4;
      c.a[static_cast<std::size_t>(i)] = coeff_list(parse_list(value, line, full), line, full);
    } else if (full == "metadata.mw_rank") {
      const long long r = parse_int(value, line, full);
      if (r < 0) throw Error(ErrorKind::BadField, at(line, "mw_rank must be >= 0"));
      c.metadata.mw_rank = static_cast<int>(r);
    } else if (full == "metadata.mw_torsion_order") {
      const Integer t = parse_big(value, line, full);
      if (t < 1) throw Error(ErrorKind::BadField, at(line, "mw_torsion_order must be >= 1"));
      c.metadata.mw_torsion_order = t;
    } else if (full == "metadata.notes") {
      c.metadata.notes = value;
    } else {
      const long long v = parse_int(value, line, full);
      if (v < (key == "surplus_margin" ? 0 : 1) || v > 64) throw Error(ErrorKind::BadField, at(line, full + " = " + value + " out of range"));
      (key == "n_max" ? c.limits.n_max : key == "place_degree_cap" ? c.limits.place_degree_cap : c.limits.surplus_margin) = static_cast<int>(v);
    }
  }
  if (!seen.count("field.p")) throw Error(ErrorKind::BadField, "missing field.p");
  try {
    (void)build_field(c);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CharTooSmall) throw;
    const std::string key = e.kind() == ErrorKind::NotPrime ? "field.p" : "field.modulus";
    throw Error(ErrorKind::BadField, at(line_of[key], key) + ": " + e.what());
  }
  return c;
}

std::string format_config(const Config& c) {
  std::ostringstream os;
  os << "format = " << c.format << "\n\n[field]\np = " << c.p << "\n";
  if (!c.modulus.empty()) os << "modulus = " << list_text(c.modulus) << "\n";
  os << "\n[model]\n";
  static const char* names[] = {"a1", "a2", "a3", "a4", "a6"};
  for (std::size_t i = 0; i < 5; ++i) {
    if (c.a[i].empty()) continue;
    os << names[i] << " = [";
    for (std::size_t k = 0; k < c.a[i].size(); ++k) {
      const auto& x = c.a[i][k];
      os << (k ? ", " : "") << (x.size() == 1 ? std::to_string(x.front()) : list_text(x));
    }
    os << "]\n";
  }
  if (c.metadata.mw_rank || c.metadata.mw_torsion_order || !c.metadata.notes.empty()) {
    os << "\n[metadata]\n";
    if (c.metadata.mw_rank) os << "mw_rank = " << *c.metadata.mw_rank << "\n";
    if (c.metadata.mw_torsion_order) os << "mw_torsion_order = " << to_string(*c.metadata.mw_torsion_order) << "\n";
    if (!c.metadata.notes.empty()) os << "notes = " << c.metadata.notes << "\n";
  }
  os << "\n[limits]\nn_max = " << c.limits.n_max << "\nplace_degree_cap = " << c.limits.place_degree_cap
     << "\nsurplus_margin = " << c.limits.surplus_margin << "\n";
  return os.str();
}

FieldCtx build_field(const Config& c) { return FieldCtx::make(c.p, c.modulus.empty() ? std::vector<long long>{0, 1} : c.modulus); }

WeierstrassModel build_model(const Config& c) {
  const FieldCtx ctx = build_field(c);
  std::array<FqPoly, 5> a;
  for (std::size_t i = 0; i < 5; ++i) {
    for (const auto& coeff : c.a[i]) {
      if (static_cast<int>(coeff.size()) > ctx.degree())
        throw Error(ErrorKind::BadField, "coefficient " + list_text(coeff) + " has more entries than [F_q : F_p] = " + std::to_string(ctx.degree()));
      FieldElem x = ctx.zero(), g = ctx.one();
      for (long long d : coeff) {
        x = ctx.add(x, ctx.mul(ctx.from_int(d), g));
        g = ctx.mul(g, ctx.generator());
      }
      a[i].c.push_back(x);
    }
    fq::trim(ctx, a[i]);
  }
  return make_model(ctx, a);
}

}  // namespace ellsurf
