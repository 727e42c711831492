#pragma once

// Exact rational arithmetic: polynomials in t = q^{-s}, rational functions,
// Newton reconstruction from power sums, functional-equation completion and
// leading terms at t = 1/q as elements of Q^x (log q)^k.

#include <boost/multiprecision/cpp_int.hpp>

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ellsurf/error.hpp"

namespace ellsurf {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);
/// Parses "a" or "a/b"; throws ParseError on malformed input.
Rational parse_rational(std::string_view text);

Integer pow_int(const Integer& base, unsigned exponent);
bool is_integer(const Rational& value);

/// Polynomial with rational coefficients; index = degree. Zero has no coefficients.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coefficients);
  RatPoly(std::initializer_list<long long> coefficients);

  static RatPoly constant(const Rational& c);
  /// c * t^k
  static RatPoly monomial(const Rational& c, int k);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  /// Zero beyond the degree.
  Rational coeff(int k) const;
  Rational eval(const Rational& t) const;
  bool is_integral() const;

  RatPoly truncated(int max_degree) const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const Rational& c, const RatPoly& a);
  friend bool operator==(const RatPoly& a, const RatPoly& b) = default;

  std::string to_string(std::string_view var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct DivRem {
  RatPoly quotient;
  RatPoly remainder;
};

/// Throws DivisionByZero when divisor is zero.
DivRem divrem(const RatPoly& dividend, const RatPoly& divisor);
RatPoly pow(const RatPoly& base, unsigned exponent);
/// Monic greatest common divisor; gcd(0, 0) = 0.
RatPoly gcd(const RatPoly& a, const RatPoly& b);

/// Truncated power-series product / inverse modulo t^{precision}.
RatPoly series_mul(const RatPoly& a, const RatPoly& b, int precision);
RatPoly series_inverse(const RatPoly& a, int precision);

/// Power sums s_1..s_count of the inverse roots of a polynomial with constant term 1.
std::vector<Rational> inverse_root_power_sums(const RatPoly& p, int count);

/// Reduced quotient of polynomials; denominator monic.
class RatFunc {
 public:
  RatFunc() : num_(RatPoly{1}), den_(RatPoly{1}) {}
  RatFunc(RatPoly numerator, RatPoly denominator);
  explicit RatFunc(RatPoly numerator) : RatFunc(std::move(numerator), RatPoly{1}) {}

  const RatPoly& numerator() const { return num_; }
  const RatPoly& denominator() const { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }
  /// The polynomial value; throws NonPolynomial otherwise.
  RatPoly as_polynomial() const;

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) = default;

 private:
  RatPoly num_;
  RatPoly den_;
};

/// sign * value * (log q)^log_power, the leading coefficient of a function
/// vanishing to `order` at s = 1.
struct SpecialValue {
  int sign = 1;
  Rational value = 1;
  int log_power = 0;
  int order = 0;

  SpecialValue() = default;
  SpecialValue(int sign_, Rational value_, int log_power_, int order_);

  /// Signed rational sign * value.
  Rational signed_value() const { return sign * value; }
  SpecialValue abs() const { return {1, value, log_power, order}; }

  friend SpecialValue operator*(const SpecialValue& a, const SpecialValue& b);
  friend SpecialValue operator/(const SpecialValue& a, const SpecialValue& b);
  friend bool operator==(const SpecialValue& a, const SpecialValue& b) = default;

  std::string to_string() const;
};

/// Equality ignoring sign.
bool abs_eq(const SpecialValue& a, const SpecialValue& b);
/// (+, 1, k, k): leading term of (1 - q t)^k.
SpecialValue log_q_power(int k);

/// The polynomial with constant term 1 and degree <= `degree` whose inverse
/// roots have power sums s[0..]; surplus sums beyond `degree` must agree.
RatPoly newton_from_power_sums(std::span<const Rational> power_sums, int degree);

struct FeCompletion {
  RatPoly poly;
  int sign = 1;
  /// Both signs fit the supplied coefficients; `sign` then defaults to +1.
  bool sign_ambiguous = false;
};

/// Completes a degree-n polynomial satisfying
///   P(t) = sign * (q^{w/2} t)^n * P(1/(q^w t))
/// from its coefficients up to degree ceil(n/2). Supplied coefficients above
/// that are consistency checks. Throws NoConsistentSign.
FeCompletion functional_equation_complete(const RatPoly& partial, int n, const Integer& q, int weight,
                                          std::optional<int> sign = std::nullopt);

/// Writes f = (1 - q t)^rho g with g(1/q) finite and nonzero.
SpecialValue leading_term(const RatFunc& f, const Integer& q);
SpecialValue leading_term(const RatPoly& f, const Integer& q);

}  // namespace ellsurf
