#include "ellsurf/zetal.hpp"

#include <algorithm>
#include <thread>

namespace ellsurf {

RatPoly substitute_power(const RatPoly& f, int d) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "substitution degree must be positive");
  std::vector<Rational> c(static_cast<std::size_t>(std::max(0, f.degree() * d + 1)), Rational(0));
  for (int k = 0; k <= f.degree(); ++k) c[static_cast<std::size_t>(k * d)] = f.coeff(k);
  return RatPoly(std::move(c));
}

PlaceTable scan_places(const WeierstrassModel& model, int max_degree, const ScanOptions& opts) {
  PlaceTable table;
  table.max_degree = max_degree;
  if (max_degree < 1) return table;
  const Integer largest = pow_int(Integer(model.ctx.q()), static_cast<unsigned>(max_degree));
  if (largest > opts.max_residue_size)
    throw Error(ErrorKind::PlaceBudgetExceeded, "residue fields up to size " + to_string(largest) + " exceed the budget " +
                                                    to_string(opts.max_residue_size));
  const std::vector<Place> places = places_enumerate(model.ctx, max_degree);
  table.fibers.resize(places.size());
  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(places.size())));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  auto work = [&](int id) {
    try {
      for (std::size_t i = static_cast<std::size_t>(id); i < places.size(); i += static_cast<std::size_t>(threads))
        table.fibers[i] = tate_local(model, places[i]);
    } catch (...) {
      errors[static_cast<std::size_t>(id)] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int id = 0; id < threads; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return table;
}

std::vector<FiberData> bad_part(const PlaceTable& table) {
  std::vector<FiberData> out;
  for (const auto& f : table.fibers)
    if (f.bad()) out.push_back(f);
  return out;
}

std::vector<Integer> surface_counts(const PlaceTable& table, int n_max) {
  if (n_max > table.max_degree)
    throw Error(ErrorKind::TruncationInsufficient, "counting to n = " + std::to_string(n_max) + " needs places up to degree " +
                                                       std::to_string(n_max) + ", table stops at " + std::to_string(table.max_degree));
  std::vector<Integer> counts(static_cast<std::size_t>(std::max(0, n_max)), Integer(0));
  for (const auto& f : table.fibers)
    for (int n = f.d_v; n <= n_max; n += f.d_v)
      counts[static_cast<std::size_t>(n - 1)] += f.d_v * fiber_point_count(f, n / f.d_v);
  return counts;
}

std::vector<Rational> h2_power_sums(const std::vector<Integer>& counts, const Integer& q) {
  std::vector<Rational> s;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const unsigned n = static_cast<unsigned>(i + 1);
    s.emplace_back(counts[i] - 1 - pow_int(q, 2 * n));
  }
  return s;
}

RatPoly p2_from_counts(const std::vector<Integer>& counts, const SurfaceInvariants& inv, const Integer& q) {
  const int b2 = inv.b2;
  const int need = (b2 + 1) / 2;
  if (static_cast<int>(counts.size()) < need)
    throw Error(ErrorKind::InsufficientCounts, std::to_string(counts.size()) + " counts; b2 = " + std::to_string(b2) + " needs " +
                                                   std::to_string(need));
  const std::vector<Rational> s = h2_power_sums(counts, q);
  const int degree = std::min(static_cast<int>(s.size()), b2);
  RatPoly partial;
  try {
    partial = newton_from_power_sums(s, degree);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InconsistentPowerSums) throw Error(ErrorKind::InconsistentCounts, e.what());
    throw;
  }
  const FeCompletion fe = functional_equation_complete(partial, b2, q, 2);
  if (fe.sign_ambiguous)
    throw Error(ErrorKind::InsufficientCounts, "both signs of the functional equation fit " + std::to_string(counts.size()) +
                                                   " counts; supply N_" + std::to_string(counts.size() + 1));
  if (!fe.poly.is_integral()) throw Error(ErrorKind::InconsistentCounts, "P2 = " + fe.poly.to_string() + " is not integral");
  const auto check = inverse_root_power_sums(fe.poly, static_cast<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    if (check[i] != s[i])
      throw Error(ErrorKind::InconsistentCounts, "N_" + std::to_string(i + 1) + " is not reproduced by " + fe.poly.to_string());
  return fe.poly;
}

RatPoly l_function(const PlaceTable& table, const SurfaceInvariants& inv, int margin) {
  if (margin < 0) throw Error(ErrorKind::InvalidArgument, "negative surplus margin");
  const int precision = inv.deg_L + margin + 1;
  if (table.max_degree < precision - 1)
    throw Error(ErrorKind::TruncationInsufficient, "L to degree " + std::to_string(precision - 1) + " needs places up to that degree; table stops at " +
                                                       std::to_string(table.max_degree));
  RatPoly series{1};
  for (const auto& f : table.fibers) {
    if (f.d_v >= precision) continue;
    series = series_mul(series, series_inverse(substitute_power(f.l_factor, f.d_v), precision), precision);
  }
  for (int k = inv.deg_L + 1; k < precision; ++k)
    if (series.coeff(k) != 0)
      throw Error(ErrorKind::NonPolynomialTail, "coefficient of t^" + std::to_string(k) + " is " + to_string(series.coeff(k)) +
                                                    ", expected 0 beyond deg L = " + std::to_string(inv.deg_L));
  if (series.degree() != inv.deg_L)
    throw Error(ErrorKind::NonPolynomialTail, "L = " + series.to_string() + " does not have degree " + std::to_string(inv.deg_L));
  if (!series.is_integral()) throw Error(ErrorKind::NonIntegralCoefficients, "L = " + series.to_string());
  return series;
}

RatPoly l_function_fe(const PlaceTable& table, const SurfaceInvariants& inv, const Integer& q) {
  const int half = (inv.deg_L + 1) / 2;
  if (table.max_degree < half)
    throw Error(ErrorKind::TruncationInsufficient, "deg L = " + std::to_string(inv.deg_L) + " needs places up to degree " +
                                                       std::to_string(half));
  const int precision = std::min(table.max_degree, inv.deg_L) + 1;
  RatPoly series{1};
  for (const auto& f : table.fibers) {
    if (f.d_v >= precision) continue;
    series = series_mul(series, series_inverse(substitute_power(f.l_factor, f.d_v), precision), precision);
  }
  const FeCompletion fe = functional_equation_complete(series, inv.deg_L, q, 2);
  if (fe.sign_ambiguous)
    throw Error(ErrorKind::TruncationInsufficient, "sign of the functional equation of L undetermined from places up to degree " +
                                                       std::to_string(table.max_degree));
  if (!fe.poly.is_integral()) throw Error(ErrorKind::NonIntegralCoefficients, "L = " + fe.poly.to_string());
  return fe.poly;
}

Q2Data q2_assemble(const std::vector<FiberData>& bad, const Integer& q) {
  RatPoly num{1}, den{1};
  Rational closed = 1;
  Q2Data out;
  for (const auto& f : bad) {
    if (!f.bad()) continue;
    const Rational qv = Rational(f.q_v);
    for (const auto& c : f.components) {
      Rational qr = 1;
      for (int i = 0; i < c.r; ++i) qr *= qv;
      num = num * (RatPoly{1} - RatPoly::monomial(qr, c.r * f.d_v));
      closed *= c.r;
    }
    den = den * (RatPoly{1} - RatPoly::monomial(qv, f.d_v));
    for (int i = 0; i < f.m_v - 1; ++i) closed *= f.d_v;
    out.m += f.m_v - 1;
  }
  out.Q2 = RatFunc(num, den);
  out.star = leading_term(out.Q2, q);
  out.closed_form = SpecialValue(1, closed, out.m, out.m);
  return out;
}

Q2Data q2_data(const std::vector<FiberData>& bad, const Integer& q) {
  Q2Data d = q2_assemble(bad, q);
  if (!(d.star == d.closed_form))
    throw Error(ErrorKind::ClosedFormMismatch, "leading term " + d.star.to_string() + " vs closed form " + d.closed_form.to_string());
  return d;
}

RatPoly p2_from_product(const RatPoly& L, const RatFunc& Q2, const Integer& q, const RatPoly& p1_B) {
  const RatPoly linear(std::vector<Rational>{Rational(1), Rational(-q)});
  std::vector<Rational> shifted;
  Rational qk = 1;
  for (const auto& c : p1_B.coefficients()) {
    shifted.push_back(c * qk);
    qk *= Rational(q);
  }
  const RatPoly front = p1_B * RatPoly(std::move(shifted)) * linear * linear * L;
  const RatPoly p2 = (RatFunc(front) * Q2).as_polynomial();
  if (!p2.is_integral()) throw Error(ErrorKind::NonIntegralCoefficients, "P2 = " + p2.to_string());
  return p2;
}

}  // namespace ellsurf
