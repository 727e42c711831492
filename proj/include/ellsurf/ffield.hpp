#pragma once

// Finite fields F_q = F_p[x]/(modulus), polynomials over F_q, the closed
// points of the projective line over F_q, and residue fields k(v).

#include <cstdint>
#include <string>
#include <vector>

#include "ellsurf/error.hpp"
#include "ellsurf/exactalg.hpp"

namespace ellsurf {

using Residue = std::uint32_t;

/// Element of F_q as coefficients of a polynomial over F_p, length = extension degree.
struct FieldElem {
  std::vector<Residue> c;
  friend bool operator==(const FieldElem&, const FieldElem&) = default;
  friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

class FieldCtx {
 public:
  /// `modulus` lists the coefficients of a monic polynomial over F_p, lowest
  /// degree first. Throws NotPrime, CharTooSmall or NotIrreducible.
  static FieldCtx make(std::uint32_t p, const std::vector<long long>& modulus);
  static FieldCtx prime(std::uint32_t p) { return make(p, {0, 1}); }
  /// Same as make() but accepts p = 2, 3. Only for exercising field code.
  static FieldCtx make_any_char(std::uint32_t p, const std::vector<long long>& modulus);

  std::uint32_t p() const { return p_; }
  int degree() const { return static_cast<int>(modulus_.size()) - 1; }
  std::uint64_t q() const { return q_; }
  const std::vector<Residue>& modulus() const { return modulus_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(long long value) const;
  /// The class of x in F_p[x]/(modulus).
  FieldElem generator() const;
  /// Elements indexed 0..q-1 by their base-p digits.
  FieldElem element(std::uint64_t index) const;
  std::uint64_t index(const FieldElem& a) const;
  bool in_field(const FieldElem& a) const;

  bool is_zero(const FieldElem& a) const;
  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  /// Throws DivisionByZero.
  FieldElem inv(const FieldElem& a) const;
  FieldElem pow(FieldElem a, std::uint64_t exponent) const;
  /// a^p
  FieldElem frobenius(const FieldElem& a) const;

  std::string to_string(const FieldElem& a) const;

  friend bool operator==(const FieldCtx&, const FieldCtx&) = default;

 private:
  FieldCtx(std::uint32_t p, std::vector<Residue> modulus);
  std::uint32_t p_ = 0;
  std::vector<Residue> modulus_;
  std::uint64_t q_ = 0;
};

/// Polynomial over F_q, lowest degree first, no trailing zeros.
struct FqPoly {
  std::vector<FieldElem> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  friend bool operator==(const FqPoly&, const FqPoly&) = default;
};

namespace fq {

FqPoly from_ints(const FieldCtx& ctx, const std::vector<long long>& coefficients);
FqPoly constant(const FieldCtx& ctx, const FieldElem& c);
/// t
FqPoly variable(const FieldCtx& ctx);
void trim(const FieldCtx& ctx, FqPoly& f);
FqPoly add(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b);
FqPoly sub(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b);
FqPoly scale(const FieldCtx& ctx, const FieldElem& c, const FqPoly& a);
FqPoly mul(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b);
FqPoly pow(const FieldCtx& ctx, const FqPoly& a, unsigned exponent);
/// Quotient and remainder; throws DivisionByZero.
std::pair<FqPoly, FqPoly> divrem(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b);
FqPoly rem(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b);
bool divides(const FieldCtx& ctx, const FqPoly& d, const FqPoly& a);
FieldElem eval(const FieldCtx& ctx, const FqPoly& f, const FieldElem& x);
/// t^k * f(1/t), i.e. reversal padded to length k + 1 (requires deg f <= k).
FqPoly reverse(const FieldCtx& ctx, const FqPoly& f, int k);
/// Largest e with d^e | a; `cap` for a = 0.
int valuation(const FieldCtx& ctx, const FqPoly& a, const FqPoly& d, int cap = 1 << 20);
FqPoly monic(const FieldCtx& ctx, const FqPoly& a);
bool is_monic(const FieldCtx& ctx, const FqPoly& a);
/// Monic gcd; gcd(0, 0) = 0.
FqPoly gcd(const FieldCtx& ctx, FqPoly a, FqPoly b);
/// Distinct monic irreducible factors of a nonzero f, sorted like places.
/// Distinct-degree then equal-degree (Cantor-Zassenhaus) splitting with a fixed
/// seed, so the work done is reproducible. Odd q only.
std::vector<FqPoly> irreducible_factors(const FieldCtx& ctx, const FqPoly& f);
/// Exhaustive trial division by monic polynomials of degree <= deg/2.
bool is_irreducible(const FieldCtx& ctx, const FqPoly& f);
/// Monic polynomials of the given degree indexed 0..q^degree-1 by their lower coefficients.
FqPoly monic_from_index(const FieldCtx& ctx, int degree, std::uint64_t index);
std::string to_string(const FieldCtx& ctx, const FqPoly& f, std::string_view var = "t");

// Arithmetic in k = F_q[t]/(pi) on reduced polynomials, no tables; usable for
// residue fields far too large for ResidueField.
/// a^e mod pi
FqPoly powmod(const FieldCtx& ctx, FqPoly a, const Integer& e, const FqPoly& pi);
/// Euler's criterion in k.
bool residue_is_square(const FieldCtx& ctx, const FqPoly& pi, const FqPoly& a);
/// Distinct roots in k of x^3 + a x + b.
int residue_cubic_roots(const FieldCtx& ctx, const FqPoly& pi, const FqPoly& a, const FqPoly& b);

}  // namespace fq

/// A closed point of P^1 over F_q: a monic irreducible polynomial or infinity.
struct Place {
  bool infinite = false;
  FqPoly poly;  // empty for infinity
  int degree = 1;

  static Place infinity() { return Place{true, {}, 1}; }
  static Place finite(FqPoly monic_irreducible);

  friend bool operator==(const Place&, const Place&) = default;
};

/// q^{d_v}
Integer residue_cardinality(const FieldCtx& ctx, const Place& v);
std::string to_string(const FieldCtx& ctx, const Place& v);
/// Infinity first, then by degree, then by coefficient vector read from the top.
bool place_less(const FieldCtx& ctx, const Place& a, const Place& b);

/// Infinity and every monic irreducible of degree <= max_degree, sorted.
std::vector<Place> places_enumerate(const FieldCtx& ctx, int max_degree);
/// Only the finite places of exactly the given degree, sorted.
std::vector<Place> places_of_degree(const FieldCtx& ctx, int degree);
/// (1/d) sum_{e | d} mu(e) q^{d/e}
Integer irreducible_count(std::uint64_t q, int degree);

/// k(v) = F_q[t]/(pi) with elements coded as integers 0..Q-1 (base-p digits),
/// exponential, logarithm and Zech tables for arithmetic and quadratic character.
class ResidueField {
 public:
  using Code = std::uint32_t;

  ResidueField(const FieldCtx& ctx, const FqPoly& pi);

  std::uint64_t size() const { return size_; }
  Code encode(const FqPoly& f) const;
  FqPoly decode(Code code) const;

  Code zero() const { return 0; }
  Code one() const { return 1; }
  Code add(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  Code pow(Code a, std::uint64_t exponent) const;
  bool is_square(Code a) const;
  /// Number of roots in k(v) of x^3 + a x + b.
  int cubic_root_count(Code a, Code b) const;
  /// #E(k(v)) for y^2 = x^3 + a x + b, point at infinity included.
  std::uint64_t count_points(Code a, Code b) const;

 private:
  FieldCtx ctx_;
  FqPoly pi_;
  int digits_ = 0;
  std::uint64_t size_ = 0;
  std::uint32_t p_ = 0;
  std::vector<Code> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  static constexpr std::uint32_t kNoLog = 0xffffffffU;
};

}  // namespace ellsurf
