#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ellsurf/exactalg.hpp"

using namespace ellsurf;

namespace {

// Expands prod (1 - a_i t) directly.
RatPoly from_inverse_roots(const std::vector<long long>& roots) {
  RatPoly p{1};
  for (long long a : roots) p = p * RatPoly{1, -a};
  return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const RatPoly a{1, -2}, b{1, -3};
  CHECK(a * b == RatPoly{1, -5, 6});
  CHECK((a * b).eval(1) == 2);
  auto dr = divrem(a * b, a);
  CHECK(dr.quotient == b);
  CHECK(dr.remainder.is_zero());
  CHECK_THROWS_AS(divrem(a, RatPoly{}), Error);
  CHECK(RatPoly{}.degree() == -1);
  CHECK(gcd(a * b, a * a) == Rational(-1, 2) * a);
}

TEST_CASE("series inverse") {
  const RatPoly f{1, -5};
  const RatPoly inv = series_inverse(f, 6);
  CHECK(series_mul(f, inv, 6) == RatPoly{1});
  CHECK(inv.coeff(5) == 3125);
}

TEST_CASE("newton reconstruction") {
  std::vector<Rational> s{5, 13};
  CHECK(newton_from_power_sums(s, 2) == RatPoly{1, -5, 6});
  std::vector<Rational> zero{0};
  CHECK(newton_from_power_sums(zero, 1) == RatPoly{1});
  std::vector<Rational> bad{5, 13, 1};
  CHECK_THROWS_AS(newton_from_power_sums(bad, 2), Error);
}

TEST_CASE("newton round trip on random integer polynomials") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-9, 9), deg(0, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = deg(rng);
    std::vector<Rational> c{1};
    for (int i = 1; i <= n; ++i) c.emplace_back(coef(rng));
    const RatPoly p(c);
    const auto sums = inverse_root_power_sums(p, n + 3);
    CHECK(newton_from_power_sums(sums, n) == p);
  }
}

TEST_CASE("functional equation completion") {
  const RatPoly full = pow(RatPoly{1, -5}, 10);
  SUBCASE("from power sums 10*5^n") {
    std::vector<Rational> sums;
    for (int k = 1; k <= 5; ++k) sums.emplace_back(10 * pow_int(5, static_cast<unsigned>(k)));
    const RatPoly half = newton_from_power_sums(sums, 5);
    const auto done = functional_equation_complete(half, 10, 5, 2);
    CHECK(done.poly == full);
    CHECK(done.sign == 1);
  }
  SUBCASE("idempotent") {
    auto done = functional_equation_complete(full, 10, 5, 2);
    CHECK(done.poly == full);
  }
  SUBCASE("weight one curve") {
    auto done = functional_equation_complete(RatPoly{1}, 2, 5, 1);
    CHECK(done.poly == RatPoly{1, 0, 5});
  }
  SUBCASE("degree zero") { CHECK(functional_equation_complete(RatPoly{1}, 0, 5, 2).poly == RatPoly{1}); }
  SUBCASE("sign -1 ambiguity") {
    // (1 - 5t)(1 + 5t) has middle coefficient zero; both signs fit the low half.
    auto done = functional_equation_complete(RatPoly{1}, 2, 5, 2);
    CHECK(done.sign_ambiguous);
    auto minus = functional_equation_complete(RatPoly{1}, 2, 5, 2, -1);
    CHECK(minus.poly == RatPoly{1, 0, -25});
  }
  SUBCASE("inconsistent") { CHECK_THROWS_AS(functional_equation_complete(RatPoly{1, 3, 1}, 2, 5, 2), Error); }
}

TEST_CASE("leading terms") {
  const Integer q = 5;
  auto a = leading_term(pow(RatPoly{1, -5}, 2), q);
  CHECK(a == SpecialValue(1, 1, 2, 2));
  auto b = leading_term(RatPoly{1, 0, 0, -125}, q);
  CHECK(b == SpecialValue(1, 3, 1, 1));
  auto c = leading_term(RatPoly{1, 0, 5}, q);
  CHECK(c == SpecialValue(1, Rational(6, 5), 0, 0));
  auto d = leading_term(RatFunc(RatPoly{1, 0, -25}, RatPoly{1, -5}), q);
  CHECK(d == SpecialValue(1, 2, 0, 0));
}

TEST_CASE("leading term is multiplicative") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> root(-6, 6), len(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<long long> ra, rb;
    for (int i = len(rng); i > 0; --i) ra.push_back(root(rng));
    for (int i = len(rng); i > 0; --i) rb.push_back(root(rng));
    if (ra.empty() && rb.empty()) continue;
    const RatPoly f = from_inverse_roots(ra), g = from_inverse_roots(rb);
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(leading_term(f * g, 5) == leading_term(f, 5) * leading_term(g, 5));
  }
}

TEST_CASE("special value algebra") {
  SpecialValue a(1, 1, 8, 8), b(1, 1, 2, 2);
  CHECK(a * b == SpecialValue(1, 1, 10, 10));
  CHECK(a / a == SpecialValue(1, 1, 0, 0));
  SpecialValue neg(-1, 1, 10, 10), pos(1, 1, 10, 10);
  CHECK(abs_eq(neg, pos));
  CHECK_FALSE(neg == pos);
  CHECK_THROWS_AS(SpecialValue(1, 0, 0, 0), Error);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("12345678901234567890") == Rational(Integer("12345678901234567890")));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("rational function reduction") {
  RatFunc f(RatPoly{1, 0, -25}, RatPoly{2, -10});
  CHECK(f.is_polynomial());
  CHECK(f.as_polynomial() == Rational(1, 2) * RatPoly{1, 5});
  CHECK_THROWS_AS(RatFunc(RatPoly{1}, RatPoly{1, -5}).as_polynomial(), Error);
}
