#include "ellsurf/exactalg.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ellsurf {

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Rational& value) {
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

namespace {

Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw Error(ErrorKind::ParseError, "empty integer");
  Integer value = 0;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch < '0' || ch > '9') throw Error(ErrorKind::ParseError, "bad digit in '" + std::string(text) + "'");
    value = value * 10 + (ch - '0');
  }
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer num = parse_integer(text.substr(0, slash));
  const Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  return Rational(num, den);
}

Integer pow_int(const Integer& base, unsigned exponent) {
  Integer result = 1;
  Integer b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

bool is_integer(const Rational& value) { return boost::multiprecision::denominator(value) == 1; }

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

RatPoly::RatPoly(std::initializer_list<long long> coefficients) {
  c_.reserve(coefficients.size());
  for (long long c : coefficients) c_.emplace_back(c);
  trim();
}

RatPoly RatPoly::constant(const Rational& c) { return RatPoly(std::vector<Rational>{c}); }

RatPoly RatPoly::monomial(const Rational& c, int k) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(k) + 1, Rational(0));
  coeffs.back() = c;
  return RatPoly(std::move(coeffs));
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RatPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return c_[static_cast<std::size_t>(k)];
}

Rational RatPoly::eval(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

bool RatPoly::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& c) { return is_integer(c); });
}

RatPoly RatPoly::truncated(int max_degree) const {
  if (max_degree < 0) return {};
  std::vector<Rational> coeffs(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(c_.size(), max_degree + 1));
  return RatPoly(std::move(coeffs));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return RatPoly(std::move(out));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + Rational(-1) * b; }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return RatPoly(std::move(out));
}

RatPoly operator*(const Rational& c, const RatPoly& a) {
  std::vector<Rational> out(a.c_);
  for (auto& x : out) x *= c;
  return RatPoly(std::move(out));
}

std::string RatPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= degree(); ++k) {
    const Rational& c = c_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << ellsurf::to_string(mag);
    if (k > 0) {
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

DivRem divrem(const RatPoly& dividend, const RatPoly& divisor) {
  if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> rem(dividend.coefficients());
  const int dd = divisor.degree();
  const Rational lead = divisor.coeff(dd);
  if (dividend.degree() < dd) return {RatPoly{}, dividend};
  std::vector<Rational> quo(static_cast<std::size_t>(dividend.degree() - dd + 1), Rational(0));
  for (int k = dividend.degree(); k >= dd; --k) {
    const Rational f = rem[static_cast<std::size_t>(k)] / lead;
    if (f == 0) continue;
    quo[static_cast<std::size_t>(k - dd)] = f;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= f * divisor.coeff(j);
  }
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly pow(const RatPoly& base, unsigned exponent) {
  RatPoly result{1};
  RatPoly b = base;
  while (exponent > 0) {
    if (exponent & 1U) result = result * b;
    exponent >>= 1U;
    if (exponent > 0) b = b * b;
  }
  return result;
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a;
  RatPoly y = b;
  while (!y.is_zero()) {
    RatPoly r = divrem(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return Rational(1) / x.coeff(x.degree()) * x;
}

RatPoly series_mul(const RatPoly& a, const RatPoly& b, int precision) {
  if (precision <= 0 || a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(static_cast<std::size_t>(precision), Rational(0));
  for (int i = 0; i <= a.degree() && i < precision; ++i) {
    const Rational& ai = a.coefficients()[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    for (int j = 0; j <= b.degree() && i + j < precision; ++j)
      out[static_cast<std::size_t>(i + j)] += ai * b.coefficients()[static_cast<std::size_t>(j)];
  }
  return RatPoly(std::move(out));
}

RatPoly series_inverse(const RatPoly& a, int precision) {
  const Rational a0 = a.coeff(0);
  if (a0 == 0) throw Error(ErrorKind::DivisionByZero, "series inverse needs a nonzero constant term");
  std::vector<Rational> inv(static_cast<std::size_t>(std::max(precision, 0)), Rational(0));
  for (int n = 0; n < precision; ++n) {
    Rational acc = n == 0 ? Rational(1) : Rational(0);
    for (int k = 1; k <= n && k <= a.degree(); ++k) acc -= a.coeff(k) * inv[static_cast<std::size_t>(n - k)];
    inv[static_cast<std::size_t>(n)] = acc / a0;
  }
  return RatPoly(std::move(inv));
}

std::vector<Rational> inverse_root_power_sums(const RatPoly& p, int count) {
  // P = 1 + c1 t + ... ; Newton: s_k = -k c_k - sum_{i=1}^{k-1} c_i s_{k-i}
  if (p.coeff(0) != 1) throw Error(ErrorKind::InvalidArgument, "power sums need constant term 1");
  std::vector<Rational> s(static_cast<std::size_t>(std::max(count, 0)), Rational(0));
  for (int k = 1; k <= count; ++k) {
    Rational acc = -Rational(k) * p.coeff(k);
    for (int i = 1; i < k; ++i) acc -= p.coeff(i) * s[static_cast<std::size_t>(k - i - 1)];
    s[static_cast<std::size_t>(k - 1)] = acc;
  }
  return s;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(RatPoly numerator, RatPoly denominator) : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = RatPoly{1};
    return;
  }
  const RatPoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divrem(num_, g).quotient;
    den_ = divrem(den_, g).quotient;
  }
  const Rational lead = den_.coeff(den_.degree());
  num_ = Rational(1) / lead * num_;
  den_ = Rational(1) / lead * den_;
}

RatPoly RatFunc::as_polynomial() const {
  if (!is_polynomial()) throw Error(ErrorKind::NonPolynomial, "rational function does not clear: denominator " + den_.to_string());
  return num_;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.num_.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

// ------------------------------------------------------------ SpecialValue

SpecialValue::SpecialValue(int sign_, Rational value_, int log_power_, int order_)
    : sign(sign_), value(std::move(value_)), log_power(log_power_), order(order_) {
  if (value < 0) {
    value = -value;
    sign = -sign;
  }
  if (value == 0) throw Error(ErrorKind::InvalidArgument, "special values are nonzero");
  sign = sign < 0 ? -1 : 1;
}

SpecialValue operator*(const SpecialValue& a, const SpecialValue& b) {
  return {a.sign * b.sign, a.value * b.value, a.log_power + b.log_power, a.order + b.order};
}

SpecialValue operator/(const SpecialValue& a, const SpecialValue& b) {
  return {a.sign * b.sign, a.value / b.value, a.log_power - b.log_power, a.order - b.order};
}

std::string SpecialValue::to_string() const {
  std::ostringstream os;
  os << (sign < 0 ? "-" : "") << ellsurf::to_string(value);
  if (log_power != 0) os << "*(log q)^" << log_power;
  os << " [ord " << order << "]";
  return os.str();
}

bool abs_eq(const SpecialValue& a, const SpecialValue& b) { return a.abs() == b.abs(); }

SpecialValue log_q_power(int k) { return {1, 1, k, k}; }

// ------------------------------------------------------ reconstruction

RatPoly newton_from_power_sums(std::span<const Rational> power_sums, int degree) {
  if (degree < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
  if (static_cast<int>(power_sums.size()) < degree)
    throw Error(ErrorKind::InvalidArgument, "fewer power sums than the requested degree");
  // e_k = (1/k) sum_{i=1}^k (-1)^{i-1} e_{k-i} s_i
  const int m = static_cast<int>(power_sums.size());
  std::vector<Rational> e(static_cast<std::size_t>(m) + 1, Rational(0));
  e[0] = 1;
  for (int k = 1; k <= m; ++k) {
    Rational acc = 0;
    for (int i = 1; i <= k; ++i) {
      const Rational term = e[static_cast<std::size_t>(k - i)] * power_sums[static_cast<std::size_t>(i - 1)];
      acc += (i % 2 == 1) ? term : Rational(-term);
    }
    e[static_cast<std::size_t>(k)] = acc / k;
    if (k > degree && e[static_cast<std::size_t>(k)] != 0)
      throw Error(ErrorKind::InconsistentPowerSums,
                  "elementary symmetric function e_" + std::to_string(k) + " = " + to_string(e[static_cast<std::size_t>(k)]) +
                      " should vanish above degree " + std::to_string(degree));
  }
  std::vector<Rational> coeffs(static_cast<std::size_t>(degree) + 1, Rational(0));
  for (int k = 0; k <= degree; ++k) coeffs[static_cast<std::size_t>(k)] = (k % 2 == 0) ? e[static_cast<std::size_t>(k)] : Rational(-e[static_cast<std::size_t>(k)]);
  return RatPoly(std::move(coeffs));
}

namespace {

// q^{w(j - n/2)} for w*n even; j may be below n/2.
Rational fe_scale(const Integer& q, int weight, int j, int n) {
  const int twice = weight * (2 * j - n);
  const int exponent = twice / 2;
  const Rational base = pow_int(q, static_cast<unsigned>(std::abs(exponent)));
  return exponent >= 0 ? base : Rational(1) / base;
}

std::optional<RatPoly> complete_with_sign(const RatPoly& partial, int n, const Integer& q, int weight, int sign) {
  const int half = (n + 1) / 2;
  std::vector<Rational> coeffs(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int j = 0; j <= half && j <= n; ++j) coeffs[static_cast<std::size_t>(j)] = partial.coeff(j);
  for (int j = half + 1; j <= n; ++j)
    coeffs[static_cast<std::size_t>(j)] = sign * fe_scale(q, weight, j, n) * coeffs[static_cast<std::size_t>(n - j)];
  // Every index constrained by its mirror must agree, including the middle one.
  for (int j = 0; j <= n; ++j) {
    const Rational mirrored = sign * fe_scale(q, weight, j, n) * coeffs[static_cast<std::size_t>(n - j)];
    if (coeffs[static_cast<std::size_t>(j)] != mirrored) return std::nullopt;
  }
  for (int j = half + 1; j <= partial.degree(); ++j) {
    if (j > n) {
      if (partial.coeff(j) != 0) return std::nullopt;
    } else if (partial.coeff(j) != coeffs[static_cast<std::size_t>(j)]) {
      return std::nullopt;
    }
  }
  return RatPoly(std::move(coeffs));
}

}  // namespace

FeCompletion functional_equation_complete(const RatPoly& partial, int n, const Integer& q, int weight,
                                          std::optional<int> sign) {
  if (n < 0 || weight < 1) throw Error(ErrorKind::InvalidArgument, "degree and weight must be nonnegative/positive");
  if ((weight * n) % 2 != 0) throw Error(ErrorKind::InvalidArgument, "odd weight*degree needs a square q; unsupported");
  if (n == 0) {
    if (partial.degree() > 0) throw Error(ErrorKind::NoConsistentSign, "degree-0 completion of a nonconstant polynomial");
    return {RatPoly{1}, 1, false};
  }
  if (sign) {
    auto poly = complete_with_sign(partial, n, q, weight, *sign);
    if (!poly) throw Error(ErrorKind::NoConsistentSign, "supplied sign does not fit " + partial.to_string());
    return {std::move(*poly), *sign, false};
  }
  auto plus = complete_with_sign(partial, n, q, weight, 1);
  auto minus = complete_with_sign(partial, n, q, weight, -1);
  if (plus && minus) return {std::move(*plus), 1, *plus != *minus};
  if (plus) return {std::move(*plus), 1, false};
  if (minus) return {std::move(*minus), -1, false};
  throw Error(ErrorKind::NoConsistentSign, "no sign makes " + partial.to_string() + " self-dual of degree " + std::to_string(n));
}

namespace {

// Order of vanishing at t = 1/q and the cofactor.
std::pair<int, RatPoly> strip_factor(RatPoly f, const Integer& q) {
  const Rational root = Rational(1) / Rational(q);
  const RatPoly linear(std::vector<Rational>{Rational(1), Rational(-q)});
  int order = 0;
  while (!f.is_zero() && f.eval(root) == 0) {
    f = divrem(f, linear).quotient;
    ++order;
  }
  return {order, std::move(f)};
}

}  // namespace

SpecialValue leading_term(const RatFunc& f, const Integer& q) {
  if (f.numerator().is_zero()) throw Error(ErrorKind::InvalidArgument, "leading term of the zero function");
  auto [num_order, num_rest] = strip_factor(f.numerator(), q);
  auto [den_order, den_rest] = strip_factor(f.denominator(), q);
  const Rational root = Rational(1) / Rational(q);
  const Rational value = num_rest.eval(root) / den_rest.eval(root);
  const int order = num_order - den_order;
  return {value < 0 ? -1 : 1, value < 0 ? Rational(-value) : value, order, order};
}

SpecialValue leading_term(const RatPoly& f, const Integer& q) { return leading_term(RatFunc(f), q); }

}  // namespace ellsurf
