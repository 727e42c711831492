#include "ellsurf/tatefiber.hpp"

#include <algorithm>
#include <numeric>

namespace ellsurf {

std::string kodaira_name(Kodaira type, int n) {
  switch (type) {
    case Kodaira::Good: return "good";
    case Kodaira::In: return "I" + std::to_string(n);
    case Kodaira::II: return "II";
    case Kodaira::III: return "III";
    case Kodaira::IV: return "IV";
    case Kodaira::I0s: return "I0*";
    case Kodaira::Ins: return "I" + std::to_string(n) + "*";
    case Kodaira::IVs: return "IV*";
    case Kodaira::IIIs: return "III*";
    case Kodaira::IIs: return "II*";
  }
  return "?";
}

std::pair<Kodaira, int> parse_kodaira(std::string_view name) {
  static const std::pair<std::string_view, Kodaira> fixed[] = {
      {"good", Kodaira::Good}, {"II", Kodaira::II},    {"III", Kodaira::III},   {"IV", Kodaira::IV},
      {"I0*", Kodaira::I0s},   {"IV*", Kodaira::IVs},  {"III*", Kodaira::IIIs}, {"II*", Kodaira::IIs}};
  for (const auto& [text, type] : fixed)
    if (name == text) return {type, 0};
  if (name.size() >= 2 && name[0] == 'I') {
    const bool star = name.back() == '*';
    const std::string_view digits = name.substr(1, name.size() - 1 - (star ? 1 : 0));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const int n = std::stoi(std::string(digits));
      if (n >= 1) return {star ? Kodaira::Ins : Kodaira::In, n};
    }
  }
  throw Error(ErrorKind::ParseError, "unknown Kodaira type '" + std::string(name) + "'");
}

// ------------------------------------------------------------------ models

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

int least_weight(const FqPoly& A, const FqPoly& B) {
  int k = 0;
  if (!A.is_zero()) k = std::max(k, ceil_div(A.degree(), 4));
  if (!B.is_zero()) k = std::max(k, ceil_div(B.degree(), 6));
  return k;
}

FqPoly times_int(const FieldCtx& ctx, long long c, const FqPoly& f) { return fq::scale(ctx, ctx.from_int(c), f); }

}  // namespace

WeierstrassModel make_model(const FieldCtx& ctx, std::array<FqPoly, 5> a, int infinity_weight) {
  for (auto& f : a) fq::trim(ctx, f);
  const auto& [a1, a2, a3, a4, a6] = a;
  FqPoly A, B;
  if (a1.is_zero() && a2.is_zero() && a3.is_zero()) {
    A = a4;
    B = a6;
  } else {
    auto mul = [&](const FqPoly& x, const FqPoly& y) { return fq::mul(ctx, x, y); };
    auto add = [&](const FqPoly& x, const FqPoly& y) { return fq::add(ctx, x, y); };
    const FqPoly b2 = add(mul(a1, a1), times_int(ctx, 4, a2));
    const FqPoly b4 = add(times_int(ctx, 2, a4), mul(a1, a3));
    const FqPoly b6 = add(mul(a3, a3), times_int(ctx, 4, a6));
    const FqPoly c4 = fq::sub(ctx, mul(b2, b2), times_int(ctx, 24, b4));
    const FqPoly c6 =
        add(add(times_int(ctx, -1, mul(b2, mul(b2, b2))), times_int(ctx, 36, mul(b2, b4))), times_int(ctx, -216, b6));
    A = times_int(ctx, -27, c4);
    B = times_int(ctx, -54, c6);
  }
  WeierstrassModel model{ctx, std::move(a), std::move(A), std::move(B), infinity_weight};
  if (discriminant(model).is_zero()) throw Error(ErrorKind::UnsupportedModel, "discriminant vanishes identically");
  const int least = least_weight(model.A, model.B);
  if (infinity_weight < 0 || (infinity_weight > 0 && infinity_weight < least))
    throw Error(ErrorKind::InvalidArgument,
                "infinity weight " + std::to_string(infinity_weight) + " below the least admissible " + std::to_string(least));
  return model;
}

WeierstrassModel make_short_model(const FieldCtx& ctx, FqPoly A, FqPoly B, int infinity_weight) {
  return make_model(ctx, {FqPoly{}, FqPoly{}, FqPoly{}, std::move(A), std::move(B)}, infinity_weight);
}

FqPoly discriminant(const WeierstrassModel& model) {
  const auto& ctx = model.ctx;
  const FqPoly A3 = fq::pow(ctx, model.A, 3);
  const FqPoly B2 = fq::mul(ctx, model.B, model.B);
  return times_int(ctx, -16, fq::add(ctx, times_int(ctx, 4, A3), times_int(ctx, 27, B2)));
}

int effective_infinity_weight(const WeierstrassModel& model) {
  return model.infinity_weight > 0 ? model.infinity_weight : least_weight(model.A, model.B);
}

WeierstrassModel model_at_infinity(const WeierstrassModel& model) {
  const int k = effective_infinity_weight(model);
  const auto& ctx = model.ctx;
  FqPoly A = fq::reverse(ctx, model.A, 4 * k);
  FqPoly B = fq::reverse(ctx, model.B, 6 * k);
  WeierstrassModel out{ctx, {FqPoly{}, FqPoly{}, FqPoly{}, A, B}, A, B, 0};
  return out;
}

// ------------------------------------------------------------- dual graphs

namespace {

struct GraphBuilder {
  std::vector<std::vector<int>> gram;
  std::vector<int> mult;
  explicit GraphBuilder(std::vector<int> multiplicities) : mult(std::move(multiplicities)) {
    const std::size_t n = mult.size();
    gram.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) gram[i][i] = -2;
  }
  void edge(int i, int j) {
    gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += 1;
    gram[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] += 1;
  }
  DualGraph done() { return {std::move(gram), std::move(mult)}; }
};

void require_index(Kodaira type, int n) {
  if ((type == Kodaira::In || type == Kodaira::Ins) && n < 1)
    throw Error(ErrorKind::InvalidArgument, "I_n and I_n* need n >= 1");
}

}  // namespace

DualGraph dual_graph(Kodaira type, int n) {
  require_index(type, n);
  switch (type) {
    case Kodaira::Good:
    case Kodaira::II:
      return {{{0}}, {1}};
    case Kodaira::In: {
      if (n == 1) return {{{0}}, {1}};
      GraphBuilder g(std::vector<int>(static_cast<std::size_t>(n), 1));
      if (n == 2) {
        g.edge(0, 1);
        g.edge(0, 1);
      } else {
        for (int i = 0; i < n; ++i) g.edge(i, (i + 1) % n);
      }
      return g.done();
    }
    case Kodaira::III: {
      GraphBuilder g({1, 1});
      g.edge(0, 1);
      g.edge(0, 1);
      return g.done();
    }
    case Kodaira::IV: {
      GraphBuilder g({1, 1, 1});
      g.edge(0, 1);
      g.edge(1, 2);
      g.edge(0, 2);
      return g.done();
    }
    case Kodaira::I0s:
    case Kodaira::Ins: {
      const int chain = type == Kodaira::I0s ? 1 : n + 1;
      std::vector<int> mult{1, 1, 1, 1};
      mult.insert(mult.end(), static_cast<std::size_t>(chain), 2);
      GraphBuilder g(mult);
      const int first = 4, last = 4 + chain - 1;
      g.edge(0, first);
      g.edge(1, first);
      g.edge(2, last);
      g.edge(3, last);
      for (int i = first; i < last; ++i) g.edge(i, i + 1);
      return g.done();
    }
    case Kodaira::IVs: {
      // outer nodes 0..2, inner nodes 3..5, center 6
      GraphBuilder g({1, 1, 1, 2, 2, 2, 3});
      for (int arm = 0; arm < 3; ++arm) {
        g.edge(arm, 3 + arm);
        g.edge(3 + arm, 6);
      }
      return g.done();
    }
    case Kodaira::IIIs: {
      GraphBuilder g({1, 2, 3, 4, 3, 2, 1, 2});
      for (int i = 0; i < 6; ++i) g.edge(i, i + 1);
      g.edge(3, 7);
      return g.done();
    }
    case Kodaira::IIs: {
      GraphBuilder g({1, 2, 3, 4, 5, 6, 4, 2, 3});
      for (int i = 0; i < 7; ++i) g.edge(i, i + 1);
      g.edge(5, 8);
      return g.done();
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown Kodaira type");
}

// -------------------------------------------------------------- fiber data

namespace {

std::vector<int> frobenius_action(Kodaira type, int n, bool split, int cubic_roots, int nodes) {
  std::vector<int> perm(static_cast<std::size_t>(nodes));
  std::iota(perm.begin(), perm.end(), 0);
  auto swap = [&](int i, int j) { std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]); };
  switch (type) {
    case Kodaira::In:
      if (!split)
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = (n - i) % n;
      break;
    case Kodaira::IV:
      if (!split) swap(1, 2);
      break;
    case Kodaira::Ins:
      if (!split) swap(2, 3);
      break;
    case Kodaira::IVs:
      if (!split) {
        swap(1, 2);
        swap(4, 5);
      }
      break;
    case Kodaira::I0s:
      if (cubic_roots == 1) {
        swap(2, 3);
      } else if (cubic_roots == 0) {
        perm[1] = 2;
        perm[2] = 3;
        perm[3] = 1;
      }
      break;
    default:
      break;
  }
  return perm;
}

std::vector<std::vector<int>> orbits_of(const std::vector<int>& perm) {
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit;
    for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(perm[i])) {
      seen[i] = true;
      orbit.push_back(static_cast<int>(i));
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

Integer tamagawa(Kodaira type, int n, bool split, int cubic_roots) {
  switch (type) {
    case Kodaira::Good:
    case Kodaira::II:
    case Kodaira::IIs:
      return 1;
    case Kodaira::In:
      return split ? Integer(n) : Integer(n % 2 == 0 ? 2 : 1);
    case Kodaira::III:
    case Kodaira::IIIs:
      return 2;
    case Kodaira::IV:
    case Kodaira::IVs:
      return split ? 3 : 1;
    case Kodaira::I0s:
      return 1 + cubic_roots;
    case Kodaira::Ins:
      return split ? 4 : 2;
  }
  return 1;
}

int euler_number(Kodaira type, int n) {
  switch (type) {
    case Kodaira::Good: return 0;
    case Kodaira::In: return n;
    case Kodaira::II: return 2;
    case Kodaira::III: return 3;
    case Kodaira::IV: return 4;
    case Kodaira::I0s: return 6;
    case Kodaira::Ins: return 6 + n;
    case Kodaira::IVs: return 8;
    case Kodaira::IIIs: return 9;
    case Kodaira::IIs: return 10;
  }
  return 0;
}

}  // namespace

FiberData make_fiber(const FieldCtx& ctx, const Place& v, Kodaira type, int n, bool split, int cubic_roots) {
  if (type == Kodaira::Good) throw Error(ErrorKind::InvalidArgument, "use make_good_fiber for good places");
  require_index(type, n);
  if (type == Kodaira::I0s) {
    if (cubic_roots != 0 && cubic_roots != 1 && cubic_roots != 3)
      throw Error(ErrorKind::InvalidArgument, "I0* needs 0, 1 or 3 cubic roots");
    split = cubic_roots == 3;
  } else {
    cubic_roots = -1;
  }
  if (type != Kodaira::In && type != Kodaira::Ins) n = 0;
  if (type == Kodaira::II || type == Kodaira::III || type == Kodaira::IIIs || type == Kodaira::IIs) split = true;

  FiberData f;
  f.place = v;
  f.d_v = v.degree;
  f.q_v = residue_cardinality(ctx, v);
  f.type = type;
  f.n = n;
  f.split = split;
  f.cubic_roots = cubic_roots;
  const DualGraph g = dual_graph(type, n);
  f.frobenius = frobenius_action(type, n, split, cubic_roots, static_cast<int>(g.multiplicity.size()));
  f.orbits = orbits_of(f.frobenius);
  for (const auto& orbit : f.orbits)
    f.components.push_back({static_cast<int>(orbit.size()), g.multiplicity[static_cast<std::size_t>(orbit.front())]});
  f.m_v = static_cast<int>(f.orbits.size());
  f.c_v = tamagawa(type, n, split, cubic_roots);
  f.f_v = type == Kodaira::In ? 1 : 2;
  f.e_v = euler_number(type, n);
  if (type == Kodaira::In)
    f.l_factor = split ? RatPoly{1, -1} : RatPoly{1, 1};
  else
    f.l_factor = RatPoly{1};
  return f;
}

FiberData make_good_fiber(const FieldCtx& ctx, const Place& v, const Integer& a_v) {
  FiberData f;
  f.place = v;
  f.d_v = v.degree;
  f.q_v = residue_cardinality(ctx, v);
  f.type = Kodaira::Good;
  f.frobenius = {0};
  f.orbits = {{0}};
  f.components = {{1, 1}};
  f.m_v = 1;
  f.c_v = 1;
  f.a_v = a_v;
  f.l_factor = RatPoly(std::vector<Rational>{Rational(1), Rational(-a_v), Rational(f.q_v)});
  return f;
}

namespace {

FqPoly exact_div(const FieldCtx& ctx, const FqPoly& f, const FqPoly& d) {
  auto [quo, r] = fq::divrem(ctx, f, d);
  if (!r.is_zero()) throw Error(ErrorKind::NotMinimalizable, "inexact division during minimalization");
  return quo;
}

FiberData local_fiber(const FieldCtx& ctx, FqPoly A, FqPoly B, const FqPoly& pi, const Place& place) {
  if (ctx.p() < 5) throw Error(ErrorKind::CharTooSmall, "Tate's algorithm here needs p >= 5");
  int vA = fq::valuation(ctx, A, pi);
  int vB = fq::valuation(ctx, B, pi);
  const FqPoly pi4 = fq::pow(ctx, pi, 4), pi6 = fq::pow(ctx, pi, 6);
  while (vA >= 4 && vB >= 6) {
    if (!A.is_zero()) A = exact_div(ctx, A, pi4);
    if (!B.is_zero()) B = exact_div(ctx, B, pi6);
    vA -= 4;
    vB -= 6;
  }
  const WeierstrassModel local{ctx, {}, A, B, 0};
  const FqPoly delta = discriminant(local);
  const int vD = fq::valuation(ctx, delta, pi);

  auto residue = [&](const FqPoly& f, int e) { return fq::rem(ctx, exact_div(ctx, f, fq::pow(ctx, pi, static_cast<unsigned>(e))), pi); };
  auto is_square = [&](const FqPoly& a) { return fq::residue_is_square(ctx, pi, a); };
  auto times = [&](long long c, const FqPoly& a) { return fq::rem(ctx, fq::scale(ctx, ctx.from_int(c), a), pi); };

  if (vD == 0) {
    const ResidueField k(ctx, pi);
    const Integer qv = residue_cardinality(ctx, place);
    const Integer points = k.count_points(k.encode(fq::rem(ctx, A, pi)), k.encode(fq::rem(ctx, B, pi)));
    return make_good_fiber(ctx, place, qv + 1 - points);
  }
  if (vA == 0) {
    const bool split = is_square(times(6, B));
    return make_fiber(ctx, place, Kodaira::In, vD, split);
  }
  if (3 * vA < vD) {
    const int n = vD - 6;
    if (n < 1 || vA != 2 || vB != 3) throw Error(ErrorKind::NotMinimalizable, "unexpected valuations for I_n*");
    const FqPoly unit = residue(delta, vD);
    bool split;
    if (n % 2 == 0) {
      split = is_square(unit);
    } else {
      split = is_square(fq::mul(ctx, times(-6, residue(B, 3)), unit));
    }
    return make_fiber(ctx, place, Kodaira::Ins, n, split);
  }
  switch (vD) {
    case 2: return make_fiber(ctx, place, Kodaira::II, 0, true);
    case 3: return make_fiber(ctx, place, Kodaira::III, 0, true);
    case 4: return make_fiber(ctx, place, Kodaira::IV, 0, is_square(residue(B, 2)));
    case 6: {
      const FqPoly a = vA >= 2 ? residue(A, 2) : FqPoly{};
      return make_fiber(ctx, place, Kodaira::I0s, 0, false, fq::residue_cubic_roots(ctx, pi, a, residue(B, 3)));
    }
    case 8: return make_fiber(ctx, place, Kodaira::IVs, 0, is_square(residue(B, 4)));
    case 9: return make_fiber(ctx, place, Kodaira::IIIs, 0, true);
    case 10: return make_fiber(ctx, place, Kodaira::IIs, 0, true);
    default:
      break;
  }
  throw Error(ErrorKind::NotMinimalizable, "v(disc) = " + std::to_string(vD) + " after minimalization");
}

}  // namespace

FiberData tate_local(const WeierstrassModel& model, const Place& v) {
  const auto& ctx = model.ctx;
  if (v.infinite) {
    const WeierstrassModel inf = model_at_infinity(model);
    return local_fiber(ctx, inf.A, inf.B, fq::variable(ctx), v);
  }
  return local_fiber(ctx, model.A, model.B, v.poly, v);
}

Integer fiber_point_count(const FiberData& fiber, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "extension degree must be >= 1");
  const auto sums = inverse_root_power_sums(fiber.l_factor, m);
  const Rational& s = sums[static_cast<std::size_t>(m - 1)];
  const Integer qm = pow_int(fiber.q_v, static_cast<unsigned>(m));
  Rational total = 1 - s;
  for (const auto& c : fiber.components)
    if (c.r >= 1 && m % c.r == 0) total += c.r * Rational(qm);
  if (!is_integer(total)) throw Error(ErrorKind::InvalidArgument, "non-integral fiber count; corrupt local factor");
  return boost::multiprecision::numerator(total);
}

std::vector<Place> discriminant_places(const WeierstrassModel& model) {
  std::vector<Place> out{Place::infinity()};
  for (auto& pi : fq::irreducible_factors(model.ctx, discriminant(model))) out.push_back(Place::finite(std::move(pi)));
  return out;
}

std::vector<FiberData> bad_fibers(const WeierstrassModel& model) {
  std::vector<FiberData> out;
  for (const auto& v : discriminant_places(model)) {
    FiberData f = tate_local(model, v);
    if (f.bad()) out.push_back(std::move(f));
  }
  return out;
}

SurfaceInvariants global_invariants(const std::vector<FiberData>& bad) {
  SurfaceInvariants inv;
  for (const auto& f : bad) {
    if (!f.bad()) continue;
    inv.e += f.e_v * f.d_v;
    inv.deg_cond += f.f_v * f.d_v;
    inv.m += f.m_v - 1;
    inv.Z.push_back(f.place);
  }
  if (inv.Z.empty()) throw Error(ErrorKind::UnsupportedModel, "no bad fibers: constant discriminant (isotrivial, nontrivial base)");
  if (inv.e % 12 != 0) throw Error(ErrorKind::EulerNotTwelveDivisible, "Euler number " + std::to_string(inv.e));
  inv.chi = inv.e / 12;
  inv.b2 = inv.e - 2;
  inv.deg_L = inv.deg_cond - 4;
  if (inv.deg_L < 0) throw Error(ErrorKind::UnsupportedModel, "conductor degree " + std::to_string(inv.deg_cond) + " below 4");
  inv.alpha = inv.chi - 1;
  inv.chi_lie = -inv.alpha;
  return inv;
}

SurfaceInvariants global_invariants(const WeierstrassModel& model) { return global_invariants(bad_fibers(model)); }

}  // namespace ellsurf
