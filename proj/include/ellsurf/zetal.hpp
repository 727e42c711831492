#pragma once

// Global zeta data of the surface: point counts over extensions of F_q,
// P2(X, t) from counts and from the product L(J, t) Q2(t), and Q2 itself.
// Everything is a polynomial or rational function in t = q^{-s}.

#include <vector>

#include "ellsurf/exactalg.hpp"
#include "ellsurf/tatefiber.hpp"

namespace ellsurf {

/// Fiber data at every place of degree <= max_degree, in place order.
struct PlaceTable {
  int max_degree = 0;
  std::vector<FiberData> fibers;
};

struct ScanOptions {
  int threads = 1;
  /// Refuse scans whose largest residue field exceeds this many elements.
  Integer max_residue_size = 2000000;
};

/// Runs Tate's algorithm (bad places) or counts points (good places) at every
/// place of degree <= max_degree. Throws PlaceBudgetExceeded.
PlaceTable scan_places(const WeierstrassModel& model, int max_degree, const ScanOptions& opts = {});

/// The bad fibers of the table, in place order.
std::vector<FiberData> bad_part(const PlaceTable& table);

/// N_n = #X(F_{q^n}) for n = 1..n_max, summing d_v * #X_v(F_{q^n}) over the
/// places with d_v | n. Throws TruncationInsufficient if the table is too short.
std::vector<Integer> surface_counts(const PlaceTable& table, int n_max);

/// Surplus power sums s_n = N_n - 1 - q^{2n} (b1 = b3 = 0).
std::vector<Rational> h2_power_sums(const std::vector<Integer>& counts, const Integer& q);

/// P2 of degree b2 from counts via Newton's identities and the weight-2
/// functional equation; every supplied count is re-derived from the result.
/// Throws InsufficientCounts (too few counts, or the sign of the functional
/// equation is not yet determined), InconsistentCounts, NoConsistentSign.
RatPoly p2_from_counts(const std::vector<Integer>& counts, const SurfaceInvariants& inv, const Integer& q);

/// prod_v L_v(t^{d_v})^{-1} expanded to degree deg_L + margin; the tail must vanish.
/// Throws TruncationInsufficient, NonPolynomialTail, NonIntegralCoefficients.
RatPoly l_function(const PlaceTable& table, const SurfaceInvariants& inv, int margin = 2);

/// L from places of degree <= ceil(deg_L / 2) or more, completed by the
/// weight-2 functional equation; coefficients supplied beyond the half are
/// checked. Throws TruncationInsufficient (too few places or undetermined sign),
/// NoConsistentSign, NonIntegralCoefficients.
RatPoly l_function_fe(const PlaceTable& table, const SurfaceInvariants& inv, const Integer& q);

struct Q2Data {
  RatFunc Q2;
  /// Leading term of Q2 at t = 1/q.
  SpecialValue star;
  /// prod_v d_v^{m_v - 1} prod_i r_i (log q)^m.
  SpecialValue closed_form;
  int m = 0;
};

/// prod_{v bad} P2(X_v, t) / (1 - q_v t^{d_v}) with P2(X_v, t) = prod_i (1 - (q_v t^{d_v})^{r_i}).
Q2Data q2_assemble(const std::vector<FiberData>& bad, const Integer& q);
/// q2_assemble, throwing ClosedFormMismatch when the two values of Q2* differ.
Q2Data q2_data(const std::vector<FiberData>& bad, const Integer& q);

/// P1(B, t) P1(B, q t) (1 - q t)^2 L(t) Q2(t). B is trivial for every supported
/// model, so p1_B defaults to 1. Throws NonPolynomial, NonIntegralCoefficients.
RatPoly p2_from_product(const RatPoly& L, const RatFunc& Q2, const Integer& q, const RatPoly& p1_B = RatPoly{1});

/// f(t^d)
RatPoly substitute_power(const RatPoly& f, int d);

}  // namespace ellsurf
