#include "ellsurf/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ellsurf {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Conditional: return "CONDITIONAL";
    case Status::Skipped: return "SKIPPED";
  }
  return "?";
}

std::string_view to_string(MutationField field) {
  switch (field) {
    case MutationField::TamagawaNumber: return "c_v";
    case MutationField::OrbitSize: return "r_i";
    case MutationField::TraceOfFrobenius: return "a_v";
    case MutationField::ComponentCount: return "m_v";
    case MutationField::RemoveFiber: return "remove";
  }
  return "?";
}

MutationField parse_mutation_field(std::string_view name) {
  for (auto f : {MutationField::TamagawaNumber, MutationField::OrbitSize, MutationField::TraceOfFrobenius, MutationField::ComponentCount,
                 MutationField::RemoveFiber})
    if (to_string(f) == name) return f;
  throw Error(ErrorKind::ParseError, "unknown fiber datum '" + std::string(name) + "' (c_v, r_i, a_v, m_v, remove)");
}

bool Report::failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
}

const CheckResult* Report::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"euler_number",   "local_sanity",       "point_counts",   "p2_dual_path", "special_value",
                                              "q2_closed_form", "flach_siebel",       "ns_discriminant", "basis_independence",
                                              "order_relation", "tate_shioda",        "raynaud",        "geisser"};
  return names;
}

namespace {

CheckResult make(std::string name, bool ok, Snapshot lhs, Snapshot rhs, std::string details = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.status = ok ? Status::Pass : Status::Fail;
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  c.details = std::move(details);
  return c;
}

CheckResult not_run(std::string name, Status status, std::string why) {
  CheckResult c;
  c.name = std::move(name);
  c.status = status;
  c.details = std::move(why);
  return c;
}

// Value and log power, ignoring sign and order of vanishing.
SpecialValue magnitude(const SpecialValue& v) { return {1, v.value, v.log_power, 0}; }

SpecialValue fiber_closed_form(const FiberData& f) {
  Rational value = f.c_v;
  for (const auto& c : f.components) value *= c.r;
  for (int i = 0; i < f.m_v - 1; ++i) value *= f.d_v;
  return {1, value, f.m_v - 1, 0};
}

Rational q_power(const Integer& q, int e) {
  Rational out = 1;
  for (int i = 0; i < std::abs(e); ++i) out *= Rational(q);
  return e >= 0 ? out : 1 / out;
}

void apply_mutation(FiberData& f, const Mutation& mu) {
  switch (mu.field) {
    case MutationField::TamagawaNumber:
      f.c_v += mu.delta;
      break;
    case MutationField::OrbitSize:
      if (mu.component < 0 || mu.component >= static_cast<int>(f.components.size()))
        throw Error(ErrorKind::InvalidArgument, "orbit index " + std::to_string(mu.component) + " out of range");
      f.components[static_cast<std::size_t>(mu.component)].r += mu.delta;
      break;
    case MutationField::TraceOfFrobenius:
      f.a_v += mu.delta;
      f.l_factor = f.bad() ? RatPoly(std::vector<Rational>{1, Rational(-f.a_v)})
                           : RatPoly(std::vector<Rational>{1, Rational(-f.a_v), Rational(f.q_v)});
      break;
    case MutationField::ComponentCount:
      f.m_v += mu.delta;
      break;
    case MutationField::RemoveFiber:
      break;
  }
}

void apply_mutations(std::vector<FiberData>& fibers, const std::vector<Mutation>& mutations) {
  for (const auto& mu : mutations) {
    if (mu.field == MutationField::RemoveFiber) {
      std::erase_if(fibers, [&](const FiberData& f) { return f.place == mu.place; });
      continue;
    }
    for (auto& f : fibers)
      if (f.place == mu.place) apply_mutation(f, mu);
  }
}

bool is_unsupported(ErrorKind k) {
  switch (k) {
    case ErrorKind::CharTooSmall:
    case ErrorKind::NotMinimalizable:
    case ErrorKind::UnsupportedModel:
    case ErrorKind::PlaceBudgetExceeded:
    case ErrorKind::InsufficientCounts:
    case ErrorKind::TruncationInsufficient:
      return true;
    default:
      return false;
  }
}

// Runs `f`, returning the error text for data inconsistencies and rethrowing
// limits and unsupported input.
template <class F>
std::string guarded(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (is_unsupported(e.kind())) throw;
    return e.what();
  }
  return {};
}

Integer coefficient_difference_index(const RatPoly& a, const RatPoly& b) {
  const int top = std::max(a.degree(), b.degree());
  for (int k = 0; k <= top; ++k)
    if (a.coeff(k) != b.coeff(k)) return k;
  return -1;
}

// Random unimodular n x n matrix from elementary operations.
IntMatrix random_unimodular(int n, std::mt19937_64& rng) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<int> pick(0, n - 1), coeff(-2, 2);
  for (int step = 0; step < 3 * n; ++step) {
    const int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const int c = coeff(rng);
    for (int r = 0; r < n; ++r) u(r, j) += c * u(r, i);
  }
  return u;
}

}  // namespace

CheckResult check_dual_path(const RatPoly& p2_counts, const RatPoly& p2_product) {
  const bool ok = p2_counts == p2_product;
  std::string details;
  if (!ok) {
    const Integer k = coefficient_difference_index(p2_counts, p2_product);
    const int ki = static_cast<int>(k);
    details = "first difference at t^" + to_string(k) + ": " + to_string(p2_counts.coeff(ki)) + " vs " + to_string(p2_product.coeff(ki));
  }
  return make("p2_dual_path", ok, p2_counts, p2_product, details);
}

CheckResult check_special_value(const SpecialValue& p2_star, const SpecialValue& l_star, const SpecialValue& q2_star) {
  const SpecialValue rhs = l_star * q2_star * log_q_power(2);
  CheckResult c = make("special_value", abs_eq(p2_star, rhs), p2_star, rhs);
  c.sign_agrees = p2_star.sign == rhs.sign;
  if (!c.sign_agrees) c.details = "signs differ: " + p2_star.to_string() + " vs " + rhs.to_string();
  return c;
}

CheckResult check_q2_closed_form(const Q2Data& q2) {
  CheckResult c = make("q2_closed_form", abs_eq(q2.star, q2.closed_form), q2.star, q2.closed_form);
  c.sign_agrees = q2.star.sign == q2.closed_form.sign;
  return c;
}

CheckResult check_flach_siebel(const std::vector<FiberData>& bad, const SpecialValue& q2_star) {
  SpecialValue product{1, 1, 0, 0};
  Integer cJ = 1;
  std::ostringstream details;
  bool ok = true;
  for (const auto& f : bad) {
    if (!f.bad()) continue;
    cJ *= f.c_v;
    const std::string label = kodaira_name(f.type, f.n) + "@deg" + std::to_string(f.d_v);
    SpecialValue disc;
    try {
      disc = discriminant(component_lattice(f));
    } catch (const Error& e) {
      ok = false;
      details << label << ": " << e.what() << "; ";
      continue;
    }
    product = product * magnitude(disc);
    const bool positive = f.c_v > 0 && std::all_of(f.components.begin(), f.components.end(), [](const Component& c) { return c.r > 0; });
    if (!positive) {
      ok = false;
      details << label << ": c_v = " << to_string(f.c_v) << " and orbit sizes must be positive; ";
    } else if (!(magnitude(disc) == fiber_closed_form(f))) {
      ok = false;
      details << label << ": |Delta(R_v)| = " << magnitude(disc).to_string() << ", c_v prod r_i d_v^(m_v-1) = " << fiber_closed_form(f).to_string()
              << "; ";
    }
  }
  if (cJ <= 0) {
    details << "aggregate: c(J) = " << to_string(cJ);
    return make("flach_siebel", false, Rational(cJ), product, details.str());
  }
  const SpecialValue lhs = magnitude(SpecialValue(1, Rational(cJ), 0, 0) * q2_star);
  if (!(lhs == product)) {
    ok = false;
    details << "aggregate: c(J) Q2* = " << lhs.to_string() << " vs prod |Delta(R_v)| = " << product.to_string();
  }
  return make("flach_siebel", ok, lhs, product, details.str());
}

CheckResult check_ns_discriminant(const SpecialValue& ns, const std::vector<FiberData>& bad, const Rational& delta_nt) {
  SpecialValue rhs{1, delta_nt, 2, 0};
  for (const auto& f : bad)
    if (f.bad()) rhs = rhs * magnitude(discriminant(component_lattice(f)));
  CheckResult c = make("ns_discriminant", magnitude(ns) == rhs, magnitude(ns), rhs);
  c.sign_agrees = ns.sign > 0;
  c.details = "Delta(NS) sign " + std::string(ns.sign > 0 ? "+" : "-") + "; Delta_NT = " + to_string(delta_nt);
  return c;
}

CheckResult check_order_relation(int ord_p2, int m, int ord_l) {
  return make("order_relation", ord_p2 - 2 - m == ord_l, Rational(ord_p2 - 2 - m), Rational(ord_l),
              "ord P2 = " + std::to_string(ord_p2) + ", m = " + std::to_string(m));
}

CheckResult check_tate_shioda(int rho, int rank, int m, const std::string& rank_source) {
  CheckResult c = make("tate_shioda", rho == 2 + rank + m, Rational(rho), Rational(2 + rank + m),
                       "r = " + std::to_string(rank) + " (" + rank_source + "), m = " + std::to_string(m));
  if (c.status == Status::Pass) c.status = Status::Conditional;
  return c;
}

CheckResult check_raynaud(const SurfaceInvariants& inv) {
  const int from_alpha = -inv.alpha + inv.dim_B;
  const int direct = 1 - inv.chi;
  return make("raynaud", from_alpha == direct && direct == inv.chi_lie, Rational(from_alpha), Rational(direct),
              "alpha = " + std::to_string(inv.alpha) + ", chi = " + std::to_string(inv.chi) + ", chi(Lie) = " + std::to_string(inv.chi_lie));
}

CheckResult check_geisser(const std::optional<Rational>& br, const std::optional<Rational>& sha, const std::string& br_note,
                          const std::string& sha_note) {
  auto advisory = [](const Rational& x) {
    const bool integral = is_integer(x);
    bool square = false;
    if (integral && x > 0) {
      const Integer n = boost::multiprecision::numerator(x);
      const Integer s = boost::multiprecision::sqrt(n);
      square = s * s == n;
    }
    return std::string(integral ? "integral" : "NOT integral") + (square ? ", square" : ", NOT a square");
  };
  if (!sha && !br) return not_run("geisser", Status::Skipped, "[Br]: " + br_note + "; [Sha]: " + sha_note);
  if (br && sha) {
    CheckResult c = make("geisser", *br == *sha && *br > 0, *br, *sha);
    c.details = "[Br] " + advisory(*br) + "; [Sha] " + advisory(*sha);
    return c;
  }
  CheckResult c = not_run("geisser", Status::Conditional, "");
  if (sha) {
    c.rhs = *sha;
    c.details = "[Br] unavailable: " + br_note + "; [Sha] " + advisory(*sha);
    if (*sha <= 0) c.status = Status::Fail;
  } else {
    c.lhs = *br;
    c.details = "[Sha] unavailable: " + sha_note + "; [Br] " + advisory(*br);
    if (*br <= 0) c.status = Status::Fail;
  }
  return c;
}

namespace {

// Short model over F_q[t] localized at v and made minimal there.
struct LocalModel {
  FqPoly A, B, pi;
};

LocalModel local_model(const WeierstrassModel& model, const Place& v) {
  const auto& ctx = model.ctx;
  LocalModel out;
  if (v.infinite) {
    const WeierstrassModel inf = model_at_infinity(model);
    out = {inf.A, inf.B, fq::variable(ctx)};
  } else {
    out = {model.A, model.B, v.poly};
  }
  const FqPoly pi4 = fq::pow(ctx, out.pi, 4), pi6 = fq::pow(ctx, out.pi, 6);
  while (fq::valuation(ctx, out.A, out.pi, 4) >= 4 && fq::valuation(ctx, out.B, out.pi, 6) >= 6) {
    if (!out.A.is_zero()) out.A = fq::divrem(ctx, out.A, pi4).first;
    if (!out.B.is_zero()) out.B = fq::divrem(ctx, out.B, pi6).first;
    if (out.A.is_zero() && out.B.is_zero()) break;
  }
  return out;
}

}  // namespace

CheckResult check_local_sanity(const WeierstrassModel& model, const std::vector<FiberData>& places, int recount_degree) {
  const auto& ctx = model.ctx;
  std::vector<std::string> problems;
  int recounted = 0, templated = 0;
  for (const auto& f : places) {
    const std::string where = to_string(ctx, f.place);
    if (f.bad()) {
      ++templated;
      const FiberData t = make_fiber(ctx, f.place, f.type, f.n, f.split, f.cubic_roots);
      if (t.c_v != f.c_v || t.m_v != f.m_v || t.components != f.components || t.a_v != f.a_v || !(t.l_factor == f.l_factor) ||
          t.e_v != f.e_v || t.f_v != f.f_v || t.orbits != f.orbits)
        problems.push_back(where + ": fiber data differ from the " + kodaira_name(f.type, f.n) + " template");
      continue;
    }
    const Integer weil = 4 * f.q_v;
    if (f.a_v * f.a_v > weil) problems.push_back(where + ": a_v = " + to_string(f.a_v) + " violates the Weil bound");
    if (!(f.l_factor == RatPoly(std::vector<Rational>{1, Rational(-f.a_v), Rational(f.q_v)})))
      problems.push_back(where + ": L_v is not 1 - a_v T + q_v T^2");
    if (f.d_v > recount_degree) continue;
    ++recounted;
    const LocalModel lm = local_model(model, f.place);
    const WeierstrassModel reduced{ctx, {}, lm.A, lm.B, 0};
    if (fq::valuation(ctx, discriminant(reduced), lm.pi, 1) != 0) {
      problems.push_back(where + ": marked good but the minimal discriminant vanishes there");
      continue;
    }
    const ResidueField k(ctx, lm.pi);
    std::vector<std::uint64_t> squares(k.size(), 0);
    for (ResidueField::Code y = 0; y < k.size(); ++y) ++squares[k.mul(y, y)];
    const auto a = k.encode(fq::rem(ctx, lm.A, lm.pi)), b = k.encode(fq::rem(ctx, lm.B, lm.pi));
    Integer points = 1;
    for (ResidueField::Code x = 0; x < k.size(); ++x) points += squares[k.add(k.mul(k.add(k.mul(x, x), a), x), b)];
    const Integer from_l = f.q_v + 1 - f.a_v;
    if (points != from_l) problems.push_back(where + ": #E(k_v) = " + to_string(points) + " but L_v(1) = " + to_string(from_l));
  }
  std::string details = std::to_string(recounted) + " good places recounted (degree <= " + std::to_string(recount_degree) + "), " +
                        std::to_string(templated) + " bad fibers matched to templates";
  for (std::size_t i = 0; i < problems.size() && i < 8; ++i) details += "; " + problems[i];
  if (problems.size() > 8) details += "; ... " + std::to_string(problems.size() - 8) + " more";
  return make("local_sanity", problems.empty(), Rational(recounted + templated), Rational(static_cast<long long>(problems.size())), details);
}

std::vector<Integer> lefschetz_counts(const RatPoly& p2, const Integer& q, int n_max) {
  const auto sums = inverse_root_power_sums(p2, n_max);
  std::vector<Integer> out;
  for (int n = 1; n <= n_max; ++n) {
    const Rational total = 1 + Rational(pow_int(q, static_cast<unsigned>(2 * n))) + sums[static_cast<std::size_t>(n - 1)];
    if (!is_integer(total)) throw Error(ErrorKind::NonIntegralCoefficients, "non-integral count from " + p2.to_string());
    out.push_back(boost::multiprecision::numerator(total));
  }
  return out;
}

CheckResult check_point_counts(const std::vector<Integer>& counts, const RatPoly& p2, const Integer& q) {
  const auto expected = lefschetz_counts(p2, q, static_cast<int>(counts.size()));
  std::string details;
  for (std::size_t i = 0; i < counts.size(); ++i)
    details += (i ? ", " : "N = ") + to_string(counts[i]) + (counts[i] == expected[i] ? "" : " (Lefschetz " + to_string(expected[i]) + ")");
  const bool ok = counts == expected && !counts.empty();
  return make("point_counts", ok, Rational(counts.empty() ? Integer(0) : counts.front()),
              Rational(expected.empty() ? Integer(0) : expected.front()), details);
}

Report run_verification(const WeierstrassModel& model, const SurfaceMetadata& metadata, const VerifyOptions& options) {
  Report r(model);
  r.metadata = metadata;
  r.options = options;
  const auto& lim = options.limits;
  const Integer q(model.ctx.q());
  if (lim.n_max < 1 || lim.surplus_margin < 0 || lim.place_degree_cap < 1)
    throw Error(ErrorKind::InvalidArgument, "limits must be positive");
  if (lim.n_max > lim.place_degree_cap)
    throw Error(ErrorKind::TruncationInsufficient, "n_max = " + std::to_string(lim.n_max) + " exceeds place_degree_cap = " +
                                                       std::to_string(lim.place_degree_cap));

  std::vector<FiberData> bad = bad_fibers(model);
  // Planning uses the unperturbed fibers; the checks see the mutated ones.
  const SurfaceInvariants planned = global_invariants(bad);
  apply_mutations(bad, options.mutations);
  r.bad = bad;

  ScanOptions scan;
  scan.threads = options.threads;
  auto scan_to = [&](int degree) {
    PlaceTable t = scan_places(model, degree, scan);
    apply_mutations(t.fibers, options.mutations);
    return t;
  };
  int degree = std::min(lim.place_degree_cap, std::max(lim.n_max, planned.deg_L + lim.surplus_margin));
  r.table = scan_to(degree);

  std::vector<CheckResult> checks;
  auto finish = [&](std::vector<CheckResult> done) {
    for (const auto& name : check_names()) {
      auto it = std::find_if(done.begin(), done.end(), [&](const CheckResult& c) { return c.name == name; });
      r.checks.push_back(it != done.end() ? *it : not_run(name, Status::Skipped, "not evaluated: surface invariants unavailable"));
    }
    return r;
  };

  int e_sum = 0;
  for (const auto& f : bad) e_sum += f.e_v * f.d_v;
  try {
    r.inv = global_invariants(bad);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EulerNotTwelveDivisible) throw;
    checks.push_back(make("euler_number", false, Rational(e_sum), Rational(12 * ((e_sum + 11) / 12)), e.what()));
    return finish(checks);
  }
  checks.push_back(make("euler_number", e_sum == 12 * r.inv.chi, Rational(e_sum), Rational(12 * r.inv.chi),
                        "chi = " + std::to_string(r.inv.chi) + ", b2 = " + std::to_string(r.inv.b2)));
  const auto& inv = r.inv;

  // P2 from point counts; raise the scan while the counts leave the sign open.
  std::string p2_counts_error;
  for (;;) {
    try {
      r.counts = surface_counts(r.table, r.table.max_degree);
      r.p2_counts = p2_from_counts(r.counts, inv, q);
      break;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InsufficientCounts && r.table.max_degree < lim.place_degree_cap) {
        r.table = scan_to(r.table.max_degree + 1);
        continue;
      }
      if (is_unsupported(e.kind())) throw;
      p2_counts_error = e.what();
      break;
    }
  }

  std::string l_error = guarded([&] {
    if (r.table.max_degree >= inv.deg_L + lim.surplus_margin) {
      r.l_route = "expansion";
      r.L = l_function(r.table, inv, lim.surplus_margin);
    } else {
      r.l_route = "functional_equation";
      r.L = l_function_fe(r.table, inv, q);
    }
  });
  const std::string q2_error = guarded([&] { r.q2 = q2_assemble(bad, q); });
  std::string product_error = !l_error.empty()    ? "L unavailable: " + l_error
                              : !q2_error.empty() ? "Q2 unavailable: " + q2_error
                                                  : guarded([&] { r.p2_product = p2_from_product(*r.L, r.q2->Q2, q); });

  const std::optional<RatPoly>& p2 = r.p2_counts ? r.p2_counts : r.p2_product;
  if (p2) {
    r.p2_star = leading_term(*p2, q);
    r.rho = r.p2_star->order;
  }
  if (r.L) r.l_star = leading_term(*r.L, q);
  for (const auto& f : bad) r.c_J *= f.c_v;

  if (options.assume_rank) {
    r.rank = *options.assume_rank;
    r.rank_source = "assumed";
  } else if (metadata.mw_rank) {
    r.rank = *metadata.mw_rank;
    r.rank_source = "declared";
  } else if (r.l_star) {
    r.rank = r.l_star->order;
    r.rank_source = "bsd_inferred";
  }

  std::string ns_error;
  if (!r.rank) {
    r.br_note = "rank unknown";
  } else if (!metadata.mw_torsion_order) {
    r.br_note = "torsion order not declared";
  } else {
    ns_error = guarded([&] {
      try {
        r.ns_discriminant = discriminant(ns_lattice_build(inv, bad, *r.rank, *metadata.mw_torsion_order));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NontrivialMW) throw;
        r.br_note = e.what();
      }
    });
    if (!ns_error.empty()) r.br_note = ns_error;
  }

  // Predicted orders forced by the Artin-Tate and BSD formulas.
  if (r.p2_star && r.ns_discriminant) {
    const SpecialValue ratio = magnitude(*r.p2_star) / magnitude(*r.ns_discriminant);
    if (ratio.log_power != 0)
      r.br_note = "log powers of P2* and Delta(NS) differ by " + std::to_string(ratio.log_power);
    else
      r.predicted_br = ratio.value * q_power(q, inv.alpha);
  } else if (r.br_note.empty()) {
    r.br_note = "P2 unavailable";
  }
  if (!r.l_star) {
    r.sha_note = "L unavailable";
  } else if (!r.rank || *r.rank != 0) {
    r.sha_note = "positive rank: the Neron-Tate regulator is not computed";
  } else if (r.l_star->log_power != 0) {
    r.sha_note = "L vanishes at s = 1 although rank 0 is in use";
  } else if (!metadata.mw_torsion_order) {
    r.sha_note = "torsion order not declared";
  } else if (r.c_J == 0) {
    r.sha_note = "c(J) = 0";
  } else {
    const Rational t = Rational(*metadata.mw_torsion_order);
    const Rational delta_nt = 1 / (t * t);
    r.predicted_sha = r.l_star->value / (delta_nt * Rational(r.c_J) * q_power(q, inv.chi_lie));
  }

  const int recount = std::min(3, r.table.max_degree);
  checks.push_back(check_local_sanity(model, r.table.fibers, recount));

  if (r.p2_product) {
    const std::string err = guarded([&] { checks.push_back(check_point_counts(r.counts, *r.p2_product, q)); });
    if (!err.empty()) checks.push_back(make("point_counts", false, {}, {}, err));
  } else {
    checks.push_back(make("point_counts", false, {}, {}, "P2 via L and Q2 unavailable: " + product_error));
  }

  if (r.p2_counts && r.p2_product)
    checks.push_back(check_dual_path(*r.p2_counts, *r.p2_product));
  else
    checks.push_back(make("p2_dual_path", false, r.p2_counts ? Snapshot(*r.p2_counts) : Snapshot{},
                          r.p2_product ? Snapshot(*r.p2_product) : Snapshot{},
                          (r.p2_counts ? "" : "from counts: " + p2_counts_error + " ") + (r.p2_product ? "" : "via L Q2: " + product_error)));

  if (r.p2_star && r.l_star && r.q2)
    checks.push_back(check_special_value(*r.p2_star, *r.l_star, r.q2->star));
  else
    checks.push_back(make("special_value", false, {}, {}, "P2*, L* or Q2* unavailable"));

  if (r.q2) {
    checks.push_back(check_q2_closed_form(*r.q2));
    checks.push_back(check_flach_siebel(bad, r.q2->star));
  } else {
    checks.push_back(make("q2_closed_form", false, {}, {}, "Q2 unavailable: " + q2_error));
    checks.push_back(make("flach_siebel", false, {}, {}, "Q2 unavailable: " + q2_error));
  }

  if (r.ns_discriminant) {
    std::string err = guarded([&] { checks.push_back(check_ns_discriminant(*r.ns_discriminant, bad, 1)); });
    if (!err.empty()) checks.push_back(make("ns_discriminant", false, *r.ns_discriminant, {}, err));
  } else if (!ns_error.empty()) {
    checks.push_back(make("ns_discriminant", false, {}, {}, ns_error));
  } else {
    checks.push_back(not_run("ns_discriminant", Status::Skipped, r.br_note));
  }

  {
    std::mt19937_64 rng(options.seed);
    std::vector<std::pair<std::string, PairedGroup>> lattices;
    for (const auto& f : bad)
      if (f.bad()) lattices.emplace_back(kodaira_name(f.type, f.n) + "@" + to_string(model.ctx, f.place), component_lattice(f));
    if (r.ns_discriminant) lattices.emplace_back("NS", ns_lattice_build(inv, bad, *r.rank, *metadata.mw_torsion_order));
    std::vector<std::string> bad_bases;
    int trials = 0;
    for (const auto& [label, P] : lattices) {
      const GroupStructure gs = group_structure(P.group);
      const SpecialValue reference = discriminant(P);
      for (int t = 0; t < 4; ++t) {
        IntMatrix gens = gs.free_basis * random_unimodular(gs.rank, rng);
        // shift by relations and pass to an index-2 sublattice half the time
        std::uniform_int_distribution<int> c(-2, 2);
        for (int j = 0; j < gens.cols; ++j)
          for (int k = 0; k < P.group.relations.cols; ++k) {
            const int s = c(rng);
            for (int i = 0; i < gens.rows; ++i) gens(i, j) += s * P.group.relations(i, k);
          }
        if (gens.cols > 0 && (rng() & 1))
          for (int i = 0; i < gens.rows; ++i) gens(i, 0) *= 2;
        ++trials;
        if (!(discriminant_from(P, gens) == reference)) bad_bases.push_back(label);
      }
    }
    checks.push_back(make("basis_independence", bad_bases.empty(), Rational(trials), Rational(trials - static_cast<long long>(bad_bases.size())),
                          std::to_string(trials) + " random bases over " + std::to_string(lattices.size()) + " lattices" +
                              (bad_bases.empty() ? "" : "; disagreement on " + bad_bases.front())));
  }

  if (r.p2_star && r.l_star)
    checks.push_back(check_order_relation(r.p2_star->order, inv.m, r.l_star->order));
  else
    checks.push_back(make("order_relation", false, {}, {}, "P2* or L* unavailable"));

  if (r.rho && r.rank)
    checks.push_back(check_tate_shioda(*r.rho, *r.rank, inv.m, r.rank_source));
  else
    checks.push_back(not_run("tate_shioda", Status::Skipped, "rho or r unavailable"));

  checks.push_back(check_raynaud(inv));
  checks.push_back(check_geisser(r.predicted_br, r.predicted_sha, r.br_note, r.sha_note));
  return finish(checks);
}

}  // namespace ellsurf
