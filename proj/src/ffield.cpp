#include "ellsurf/ffield.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>

namespace ellsurf {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Residue reduce_mod(long long value, std::uint32_t p) {
  long long r = value % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<Residue>(r);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- FieldCtx

FieldCtx::FieldCtx(std::uint32_t p, std::vector<Residue> modulus) : p_(p), modulus_(std::move(modulus)) {
  q_ = 1;
  for (int i = 0; i < degree(); ++i) q_ *= p_;
}

FieldCtx FieldCtx::make_any_char(std::uint32_t p, const std::vector<long long>& modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  std::vector<Residue> m;
  m.reserve(modulus.size());
  for (long long c : modulus) m.push_back(reduce_mod(c, p));
  while (!m.empty() && m.back() == 0) m.pop_back();
  if (m.size() < 2 || m.back() != 1) throw Error(ErrorKind::InvalidArgument, "modulus must be monic of degree >= 1");
  FieldCtx ctx(p, m);
  if (ctx.degree() > 1) {
    const FieldCtx base(p, {0, 1});
    FqPoly f;
    for (Residue r : m) f.c.push_back(FieldElem{{r}});
    if (!fq::is_irreducible(base, f)) throw Error(ErrorKind::NotIrreducible, "modulus is reducible over F_" + std::to_string(p));
  }
  return ctx;
}

FieldCtx FieldCtx::make(std::uint32_t p, const std::vector<long long>& modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p < 5) throw Error(ErrorKind::CharTooSmall, "characteristic " + std::to_string(p) + " is not supported (need p >= 5)");
  return make_any_char(p, modulus);
}

FieldElem FieldCtx::zero() const { return FieldElem{std::vector<Residue>(static_cast<std::size_t>(degree()), 0)}; }

FieldElem FieldCtx::one() const { return from_int(1); }

FieldElem FieldCtx::from_int(long long value) const {
  FieldElem a = zero();
  a.c[0] = reduce_mod(value, p_);
  return a;
}

FieldElem FieldCtx::generator() const {
  if (degree() == 1) return from_int(static_cast<long long>(p_ - modulus_[0]) % p_);
  FieldElem a = zero();
  a.c[1] = 1;
  return a;
}

FieldElem FieldCtx::element(std::uint64_t index) const {
  FieldElem a = zero();
  for (auto& d : a.c) {
    d = static_cast<Residue>(index % p_);
    index /= p_;
  }
  return a;
}

std::uint64_t FieldCtx::index(const FieldElem& a) const {
  std::uint64_t idx = 0;
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) idx = idx * p_ + *it;
  return idx;
}

bool FieldCtx::in_field(const FieldElem& a) const {
  return static_cast<int>(a.c.size()) == degree() && std::all_of(a.c.begin(), a.c.end(), [&](Residue r) { return r < p_; });
}

bool FieldCtx::is_zero(const FieldElem& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](Residue r) { return r == 0; });
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  FieldElem r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % p_;
  return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
  FieldElem r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + p_ - b.c[i]) % p_;
  return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const { return sub(zero(), a); }

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  const int d = degree();
  if (d == 1) {
    return FieldElem{{static_cast<Residue>(static_cast<std::uint64_t>(a.c[0]) * b.c[0] % p_)}};
  }
  std::vector<std::uint64_t> prod(static_cast<std::size_t>(2 * d - 1), 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) prod[static_cast<std::size_t>(i + j)] = (prod[static_cast<std::size_t>(i + j)] + static_cast<std::uint64_t>(a.c[static_cast<std::size_t>(i)]) * b.c[static_cast<std::size_t>(j)]) % p_;
  for (int k = 2 * d - 2; k >= d; --k) {
    const std::uint64_t f = prod[static_cast<std::size_t>(k)];
    if (f == 0) continue;
    prod[static_cast<std::size_t>(k)] = 0;
    for (int j = 0; j < d; ++j) {
      const std::uint64_t sub = f * modulus_[static_cast<std::size_t>(j)] % p_;
      auto& slot = prod[static_cast<std::size_t>(k - d + j)];
      slot = (slot + p_ - sub) % p_;
    }
  }
  FieldElem r = zero();
  for (int i = 0; i < d; ++i) r.c[static_cast<std::size_t>(i)] = static_cast<Residue>(prod[static_cast<std::size_t>(i)]);
  return r;
}

FieldElem FieldCtx::pow(FieldElem a, std::uint64_t exponent) const {
  FieldElem result = one();
  while (exponent > 0) {
    if (exponent & 1U) result = mul(result, a);
    exponent >>= 1U;
    if (exponent > 0) a = mul(a, a);
  }
  return result;
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  if (is_zero(a)) throw Error(ErrorKind::DivisionByZero, "inverse of zero in F_" + std::to_string(q_));
  return pow(a, q_ - 2);
}

FieldElem FieldCtx::frobenius(const FieldElem& a) const { return pow(a, p_); }

std::string FieldCtx::to_string(const FieldElem& a) const {
  if (degree() == 1) return std::to_string(a.c[0]);
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.c.size(); ++i) os << (i ? " " : "") << a.c[i];
  os << ")";
  return os.str();
}

// ------------------------------------------------------------------ FqPoly

namespace fq {

void trim(const FieldCtx& ctx, FqPoly& f) {
  while (!f.c.empty() && ctx.is_zero(f.c.back())) f.c.pop_back();
}

FqPoly from_ints(const FieldCtx& ctx, const std::vector<long long>& coefficients) {
  FqPoly f;
  for (long long c : coefficients) f.c.push_back(ctx.from_int(c));
  trim(ctx, f);
  return f;
}

FqPoly constant(const FieldCtx& ctx, const FieldElem& c) {
  FqPoly f{{c}};
  trim(ctx, f);
  return f;
}

FqPoly variable(const FieldCtx& ctx) { return FqPoly{{ctx.zero(), ctx.one()}}; }

FqPoly add(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
  FqPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), ctx.zero());
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] = ctx.add(r.c[i], a.c[i]);
    if (i < b.c.size()) r.c[i] = ctx.add(r.c[i], b.c[i]);
  }
  trim(ctx, r);
  return r;
}

FqPoly sub(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
  FqPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), ctx.zero());
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] = ctx.add(r.c[i], a.c[i]);
    if (i < b.c.size()) r.c[i] = ctx.sub(r.c[i], b.c[i]);
  }
  trim(ctx, r);
  return r;
}

FqPoly scale(const FieldCtx& ctx, const FieldElem& c, const FqPoly& a) {
  FqPoly r = a;
  for (auto& x : r.c) x = ctx.mul(c, x);
  trim(ctx, r);
  return r;
}

FqPoly mul(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  FqPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, ctx.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (ctx.is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = ctx.add(r.c[i + j], ctx.mul(a.c[i], b.c[j]));
  }
  trim(ctx, r);
  return r;
}

FqPoly pow(const FieldCtx& ctx, const FqPoly& a, unsigned exponent) {
  FqPoly result = constant(ctx, ctx.one());
  FqPoly b = a;
  while (exponent > 0) {
    if (exponent & 1U) result = mul(ctx, result, b);
    exponent >>= 1U;
    if (exponent > 0) b = mul(ctx, b, b);
  }
  return result;
}

std::pair<FqPoly, FqPoly> divrem(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero over F_q");
  if (a.degree() < b.degree()) return {FqPoly{}, a};
  FqPoly r = a;
  const int db = b.degree();
  const FieldElem lead_inv = ctx.inv(b.c.back());
  FqPoly quo;
  quo.c.assign(static_cast<std::size_t>(a.degree() - db + 1), ctx.zero());
  for (int k = a.degree(); k >= db; --k) {
    const FieldElem& top = r.c[static_cast<std::size_t>(k)];
    if (ctx.is_zero(top)) continue;
    const FieldElem f = ctx.mul(top, lead_inv);
    quo.c[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r.c[static_cast<std::size_t>(k - db + j)];
      slot = ctx.sub(slot, ctx.mul(f, b.c[static_cast<std::size_t>(j)]));
    }
  }
  trim(ctx, quo);
  trim(ctx, r);
  return {std::move(quo), std::move(r)};
}

FqPoly rem(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) { return divrem(ctx, a, b).second; }

bool divides(const FieldCtx& ctx, const FqPoly& d, const FqPoly& a) { return rem(ctx, a, d).is_zero(); }

FqPoly powmod(const FieldCtx& ctx, FqPoly a, const Integer& e, const FqPoly& pi) {
  if (e < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  FqPoly result = rem(ctx, constant(ctx, ctx.one()), pi);
  a = rem(ctx, a, pi);
  if (e == 0) return result;
  const unsigned top = boost::multiprecision::msb(e);
  for (unsigned bit = top + 1; bit-- > 0;) {
    result = rem(ctx, mul(ctx, result, result), pi);
    if (boost::multiprecision::bit_test(e, bit)) result = rem(ctx, mul(ctx, result, a), pi);
  }
  return result;
}

namespace {

Integer field_size(const FieldCtx& ctx, const FqPoly& pi) { return pow_int(Integer(ctx.q()), static_cast<unsigned>(pi.degree())); }

// Elements of k[x]/(x^3 + a x + b) as coefficient triples over k.
using Cubic = std::array<FqPoly, 3>;

Cubic cubic_mul(const FieldCtx& ctx, const FqPoly& pi, const FqPoly& a, const FqPoly& b, const Cubic& u, const Cubic& v) {
  std::array<FqPoly, 5> w;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w[static_cast<std::size_t>(i + j)] = add(ctx, w[static_cast<std::size_t>(i + j)], mul(ctx, u[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]));
  // x^4 = -a x^2 - b x, x^3 = -a x - b
  for (int k = 4; k >= 3; --k) {
    const FqPoly c = w[static_cast<std::size_t>(k)];
    w[static_cast<std::size_t>(k)] = FqPoly{};
    w[static_cast<std::size_t>(k - 2)] = sub(ctx, w[static_cast<std::size_t>(k - 2)], mul(ctx, a, c));
    w[static_cast<std::size_t>(k - 3)] = sub(ctx, w[static_cast<std::size_t>(k - 3)], mul(ctx, b, c));
  }
  return {rem(ctx, w[0], pi), rem(ctx, w[1], pi), rem(ctx, w[2], pi)};
}

}  // namespace

bool residue_is_square(const FieldCtx& ctx, const FqPoly& pi, const FqPoly& a) {
  const FqPoly r = rem(ctx, a, pi);
  if (r.is_zero() || ctx.p() == 2) return true;
  const FqPoly e = powmod(ctx, r, (field_size(ctx, pi) - 1) / 2, pi);
  return e == constant(ctx, ctx.one());
}

int residue_cubic_roots(const FieldCtx& ctx, const FqPoly& pi, const FqPoly& a_in, const FqPoly& b_in) {
  if (ctx.p() < 5) throw Error(ErrorKind::CharTooSmall, "cubic root count assumes p >= 5");
  const FqPoly a = rem(ctx, a_in, pi), b = rem(ctx, b_in, pi);
  // discriminant -4 a^3 - 27 b^2
  const FqPoly disc = rem(ctx, sub(ctx, scale(ctx, ctx.from_int(-4), pow(ctx, a, 3)), scale(ctx, ctx.from_int(27), mul(ctx, b, b))), pi);
  if (disc.is_zero()) return a.is_zero() ? 1 : 2;
  if (!residue_is_square(ctx, pi, disc)) return 1;
  // square discriminant: splits completely iff x^|k| = x modulo the cubic
  const Integer Q = field_size(ctx, pi);
  const FqPoly one = constant(ctx, ctx.one());
  Cubic result{one, FqPoly{}, FqPoly{}};
  const Cubic x{FqPoly{}, one, FqPoly{}};
  const unsigned top = boost::multiprecision::msb(Q);
  for (unsigned bit = top + 1; bit-- > 0;) {
    result = cubic_mul(ctx, pi, a, b, result, result);
    if (boost::multiprecision::bit_test(Q, bit)) result = cubic_mul(ctx, pi, a, b, result, x);
  }
  return result == x ? 3 : 0;
}

FqPoly gcd(const FieldCtx& ctx, FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly r = rem(ctx, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : monic(ctx, a);
}

namespace {

// Splits a monic squarefree g whose irreducible factors all have degree d.
void equal_degree_split(const FieldCtx& ctx, const FqPoly& g, int d, std::mt19937_64& rng, std::vector<FqPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const Integer e = (pow_int(Integer(ctx.q()), static_cast<unsigned>(d)) - 1) / 2;
  const FqPoly one = constant(ctx, ctx.one());
  std::uniform_int_distribution<std::uint64_t> pick(0, ctx.q() - 1);
  for (;;) {
    FqPoly a;
    for (int i = 0; i < g.degree(); ++i) a.c.push_back(ctx.element(pick(rng)));
    trim(ctx, a);
    if (a.degree() < 1) continue;
    const FqPoly u = gcd(ctx, g, sub(ctx, powmod(ctx, a, e, g), one));
    if (u.degree() < 1 || u.degree() >= g.degree()) continue;
    equal_degree_split(ctx, u, d, rng, out);
    equal_degree_split(ctx, divrem(ctx, g, u).first, d, rng, out);
    return;
  }
}

}  // namespace

std::vector<FqPoly> irreducible_factors(const FieldCtx& ctx, const FqPoly& f_in) {
  if (f_in.is_zero()) throw Error(ErrorKind::InvalidArgument, "factoring the zero polynomial");
  if (ctx.q() % 2 == 0) throw Error(ErrorKind::CharTooSmall, "equal-degree splitting needs odd q");
  std::mt19937_64 rng(0x5eed);
  std::vector<FqPoly> out;
  FqPoly f = monic(ctx, f_in);
  const FqPoly x = variable(ctx);
  const Integer q(ctx.q());
  FqPoly h = x;
  for (int d = 1; f.degree() >= 2 * d; ++d) {
    h = powmod(ctx, h, q, f);
    const FqPoly g = gcd(ctx, f, sub(ctx, h, x));
    if (g.degree() < 1) continue;
    equal_degree_split(ctx, g, d, rng, out);
    for (FqPoly c = g; c.degree() >= 1; c = gcd(ctx, f, c)) f = divrem(ctx, f, c).first;
    h = rem(ctx, h, f);
  }
  if (f.degree() >= 1) out.push_back(f);
  std::sort(out.begin(), out.end(), [&](const FqPoly& a, const FqPoly& b) {
    return place_less(ctx, Place{false, a, a.degree()}, Place{false, b, b.degree()});
  });
  return out;
}

FieldElem eval(const FieldCtx& ctx, const FqPoly& f, const FieldElem& x) {
  FieldElem acc = ctx.zero();
  for (auto it = f.c.rbegin(); it != f.c.rend(); ++it) acc = ctx.add(ctx.mul(acc, x), *it);
  return acc;
}

FqPoly reverse(const FieldCtx& ctx, const FqPoly& f, int k) {
  if (f.degree() > k) throw Error(ErrorKind::InvalidArgument, "reversal length below the degree");
  FqPoly r;
  r.c.assign(static_cast<std::size_t>(k) + 1, ctx.zero());
  for (int i = 0; i <= f.degree(); ++i) r.c[static_cast<std::size_t>(k - i)] = f.c[static_cast<std::size_t>(i)];
  trim(ctx, r);
  return r;
}

int valuation(const FieldCtx& ctx, const FqPoly& a, const FqPoly& d, int cap) {
  if (a.is_zero()) return cap;
  int v = 0;
  FqPoly cur = a;
  while (true) {
    auto [quo, r] = divrem(ctx, cur, d);
    if (!r.is_zero()) return v;
    cur = std::move(quo);
    ++v;
  }
}

bool is_monic(const FieldCtx& ctx, const FqPoly& a) { return !a.is_zero() && a.c.back() == ctx.one(); }

FqPoly monic(const FieldCtx& ctx, const FqPoly& a) {
  if (a.is_zero()) return a;
  return scale(ctx, ctx.inv(a.c.back()), a);
}

FqPoly monic_from_index(const FieldCtx& ctx, int degree, std::uint64_t index) {
  FqPoly f;
  f.c.reserve(static_cast<std::size_t>(degree) + 1);
  for (int i = 0; i < degree; ++i) {
    f.c.push_back(ctx.element(index % ctx.q()));
    index /= ctx.q();
  }
  f.c.push_back(ctx.one());
  return f;
}

bool is_irreducible(const FieldCtx& ctx, const FqPoly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  for (int d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= ctx.q();
    for (std::uint64_t idx = 0; idx < count; ++idx)
      if (divides(ctx, monic_from_index(ctx, d, idx), f)) return false;
  }
  return true;
}

std::string to_string(const FieldCtx& ctx, const FqPoly& f, std::string_view var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = f.degree(); k >= 0; --k) {
    const FieldElem& c = f.c[static_cast<std::size_t>(k)];
    if (ctx.is_zero(c)) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = c == ctx.one();
    if (k == 0 || !unit) os << ctx.to_string(c);
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace fq

// ------------------------------------------------------------------ places

Place Place::finite(FqPoly monic_irreducible) {
  const int d = monic_irreducible.degree();
  return Place{false, std::move(monic_irreducible), d};
}

Integer residue_cardinality(const FieldCtx& ctx, const Place& v) {
  return pow_int(Integer(ctx.q()), static_cast<unsigned>(v.degree));
}

std::string to_string(const FieldCtx& ctx, const Place& v) {
  if (v.infinite) return "inf";
  return fq::to_string(ctx, v.poly);
}

bool place_less(const FieldCtx& ctx, const Place& a, const Place& b) {
  if (a.infinite != b.infinite) return a.infinite;
  if (a.infinite) return false;
  if (a.degree != b.degree) return a.degree < b.degree;
  for (int k = a.degree; k >= 0; --k) {
    const auto ia = ctx.index(a.poly.c[static_cast<std::size_t>(k)]);
    const auto ib = ctx.index(b.poly.c[static_cast<std::size_t>(k)]);
    if (ia != ib) return ia < ib;
  }
  return false;
}

namespace {

// Irreducibles of every degree 1..max_degree; index k holds degree k + 1.
std::vector<std::vector<FqPoly>> irreducibles_up_to(const FieldCtx& ctx, int max_degree) {
  std::vector<std::vector<FqPoly>> by_degree;
  for (int d = 1; d <= max_degree; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= ctx.q();
    std::vector<FqPoly> found;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      FqPoly f = fq::monic_from_index(ctx, d, idx);
      bool reducible = false;
      for (int k = 1; 2 * k <= d && !reducible; ++k)
        for (const FqPoly& g : by_degree[static_cast<std::size_t>(k - 1)])
          if (fq::divides(ctx, g, f)) {
            reducible = true;
            break;
          }
      if (!reducible) found.push_back(std::move(f));
    }
    by_degree.push_back(std::move(found));
  }
  return by_degree;
}

}  // namespace

std::vector<Place> places_enumerate(const FieldCtx& ctx, int max_degree) {
  if (max_degree < 1) throw Error(ErrorKind::InvalidArgument, "place degree bound must be >= 1");
  std::vector<Place> places{Place::infinity()};
  for (auto& group : irreducibles_up_to(ctx, max_degree))
    for (auto& f : group) places.push_back(Place::finite(std::move(f)));
  return places;
}

std::vector<Place> places_of_degree(const FieldCtx& ctx, int degree) {
  if (degree < 1) throw Error(ErrorKind::InvalidArgument, "place degree must be >= 1");
  std::vector<Place> out;
  auto all = irreducibles_up_to(ctx, degree);
  for (auto& f : all.back()) out.push_back(Place::finite(std::move(f)));
  return out;
}

Integer irreducible_count(std::uint64_t q, int degree) {
  auto mobius = [](int n) {
    int result = 1;
    for (int d = 2; d * d <= n; ++d) {
      if (n % d != 0) continue;
      n /= d;
      if (n % d == 0) return 0;
      result = -result;
    }
    if (n > 1) result = -result;
    return result;
  };
  Integer total = 0;
  for (int e = 1; e <= degree; ++e)
    if (degree % e == 0) total += mobius(e) * pow_int(Integer(q), static_cast<unsigned>(degree / e));
  return total / degree;
}

// ------------------------------------------------------------ ResidueField

ResidueField::ResidueField(const FieldCtx& ctx, const FqPoly& pi) : ctx_(ctx), pi_(pi), p_(ctx.p()) {
  if (!fq::is_monic(ctx, pi) || pi.degree() < 1) throw Error(ErrorKind::InvalidArgument, "residue field needs a monic place polynomial");
  digits_ = ctx.degree() * pi.degree();
  size_ = 1;
  for (int i = 0; i < digits_; ++i) size_ *= p_;
  if (size_ > (1ULL << 28)) throw Error(ErrorKind::PlaceBudgetExceeded, "residue field too large for tables");

  const std::uint64_t order = size_ - 1;
  const auto factors = prime_factors(order);
  const FqPoly one_poly = fq::constant(ctx, ctx.one());
  auto powmod = [&](FqPoly base, std::uint64_t e) {
    FqPoly result = one_poly;
    while (e > 0) {
      if (e & 1U) result = fq::rem(ctx, fq::mul(ctx, result, base), pi_);
      e >>= 1U;
      if (e > 0) base = fq::rem(ctx, fq::mul(ctx, base, base), pi_);
    }
    return result;
  };

  Code generator = 0;
  FqPoly gpoly;
  for (Code cand = size_ == 2 ? 1 : 2; cand < size_; ++cand) {
    gpoly = decode(cand);
    bool primitive = true;
    for (auto ell : factors)
      if (powmod(gpoly, order / ell) == one_poly) {
        primitive = false;
        break;
      }
    if (primitive) {
      generator = cand;
      break;
    }
  }
  if (generator == 0) throw Error(ErrorKind::NotIrreducible, "no primitive element; place polynomial is reducible");

  // Multiplication by the generator as a matrix over F_p acting on digits.
  const auto D = static_cast<std::size_t>(digits_);
  std::vector<std::uint32_t> matrix(D * D, 0);
  std::uint64_t basis_code = 1;
  for (std::size_t col = 0; col < D; ++col) {
    const FqPoly prod = fq::rem(ctx, fq::mul(ctx, decode(static_cast<Code>(basis_code)), gpoly), pi_);
    Code image = encode(prod);
    for (std::size_t row = 0; row < D; ++row) {
      matrix[row * D + col] = image % p_;
      image /= p_;
    }
    basis_code *= p_;
  }

  exp_.resize(order);
  log_.assign(size_, 0);
  std::vector<std::uint32_t> v(D, 0), next(D, 0);
  v[0] = 1;
  for (std::uint64_t k = 0; k < order; ++k) {
    Code code = 0;
    for (std::size_t i = D; i-- > 0;) code = code * p_ + v[i];
    exp_[k] = code;
    log_[code] = static_cast<std::uint32_t>(k);
    for (std::size_t row = 0; row < D; ++row) {
      std::uint64_t acc = 0;
      for (std::size_t col = 0; col < D; ++col) acc += static_cast<std::uint64_t>(matrix[row * D + col]) * v[col];
      next[row] = static_cast<std::uint32_t>(acc % p_);
    }
    std::swap(v, next);
  }

  // zech_[k] = log(1 + g^k); adding 1 only touches the lowest digit.
  zech_.resize(order);
  for (std::uint64_t k = 0; k < order; ++k) {
    const Code c = exp_[k];
    const Code c1 = c % p_ == p_ - 1 ? c - (p_ - 1) : c + 1;
    zech_[k] = c1 == 0 ? kNoLog : log_[c1];
  }
}

ResidueField::Code ResidueField::encode(const FqPoly& f) const {
  const FqPoly r = fq::rem(ctx_, f, pi_);
  std::uint64_t code = 0;
  for (int j = pi_.degree() - 1; j >= 0; --j) {
    const std::uint64_t idx = j <= r.degree() ? ctx_.index(r.c[static_cast<std::size_t>(j)]) : 0;
    code = code * ctx_.q() + idx;
  }
  return static_cast<Code>(code);
}

FqPoly ResidueField::decode(Code code) const {
  FqPoly f;
  for (int j = 0; j < pi_.degree(); ++j) {
    f.c.push_back(ctx_.element(code % ctx_.q()));
    code = static_cast<Code>(code / ctx_.q());
  }
  fq::trim(ctx_, f);
  return f;
}

ResidueField::Code ResidueField::add(Code a, Code b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint64_t order = size_ - 1;
  const std::uint64_t la = log_[a];
  const std::uint32_t z = zech_[(log_[b] + order - la) % order];
  if (z == kNoLog) return 0;
  return exp_[(la + z) % order];
}

ResidueField::Code ResidueField::neg(Code a) const {
  if (a == 0 || p_ == 2) return a;
  const std::uint64_t order = size_ - 1;
  return exp_[(log_[a] + order / 2) % order];
}

ResidueField::Code ResidueField::mul(Code a, Code b) const {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t order = size_ - 1;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % order];
}

ResidueField::Code ResidueField::pow(Code a, std::uint64_t exponent) const {
  if (exponent == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = size_ - 1;
  return exp_[static_cast<std::uint64_t>(log_[a]) * (exponent % order) % order];
}

bool ResidueField::is_square(Code a) const {
  if (a == 0 || p_ == 2) return true;
  return log_[a] % 2 == 0;
}

int ResidueField::cubic_root_count(Code a, Code b) const {
  int roots = 0;
  for (Code x = 0; x < size_; ++x) {
    const Code value = add(add(pow(x, 3), mul(a, x)), b);
    if (value == 0) ++roots;
  }
  return roots;
}

std::uint64_t ResidueField::count_points(Code a, Code b) const {
  const std::uint64_t order = size_ - 1;
  std::uint64_t points = 1;
  for (Code x = 0; x < size_; ++x) {
    Code value = b;
    if (x != 0) {
      const std::uint64_t lx = log_[x];
      Code x3 = exp_[3 * lx % order];
      Code ax = a == 0 ? 0 : exp_[(lx + log_[a]) % order];
      value = add(add(x3, ax), b);
    }
    if (value == 0)
      points += 1;
    else if (is_square(value))
      points += 2;
  }
  return points;
}

}  // namespace ellsurf
