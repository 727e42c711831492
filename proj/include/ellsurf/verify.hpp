#pragma once

// The full check suite for one surface: both routes to P2, special values,
// the per-fiber lattice identities, Tate-Shioda bookkeeping and the orders of
// Br(X) and Sha(J/F) that the Artin-Tate and BSD formulas would force.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ellsurf/exactalg.hpp"
#include "ellsurf/lattice.hpp"
#include "ellsurf/tatefiber.hpp"
#include "ellsurf/zetal.hpp"

namespace ellsurf {

enum class Status { Pass, Fail, Conditional, Skipped };

/// "PASS", "FAIL", "CONDITIONAL", "SKIPPED"
std::string_view to_string(Status status);

using Snapshot = std::variant<std::monostate, SpecialValue, RatPoly, Rational>;

struct CheckResult {
  std::string name;
  Status status = Status::Skipped;
  Snapshot lhs;
  Snapshot rhs;
  /// Whether the signed comparison agrees as well; only meaningful for PASS/FAIL.
  bool sign_agrees = true;
  std::string details;
};

struct SurfaceMetadata {
  std::optional<int> mw_rank;
  std::optional<Integer> mw_torsion_order;
  std::string notes;
  friend bool operator==(const SurfaceMetadata&, const SurfaceMetadata&) = default;
};

struct Limits {
  /// Point counts N_1..N_{n_max}; raised automatically while the sign of the
  /// functional equation is undetermined, up to place_degree_cap.
  int n_max = 5;
  int place_degree_cap = 6;
  int surplus_margin = 2;
  friend bool operator==(const Limits&, const Limits&) = default;
};

enum class MutationField { TamagawaNumber, OrbitSize, TraceOfFrobenius, ComponentCount, RemoveFiber };

/// "c_v", "r_i", "a_v", "m_v", "remove"
std::string_view to_string(MutationField field);
/// Throws ParseError.
MutationField parse_mutation_field(std::string_view name);

/// Fault injection: perturbs one datum of the fiber at `place` before any
/// invariant is derived from it.
struct Mutation {
  Place place;
  MutationField field = MutationField::TamagawaNumber;
  int delta = 1;
  /// Orbit index for OrbitSize.
  int component = 0;
};

struct VerifyOptions {
  Limits limits;
  int threads = 1;
  /// Overrides the declared Mordell-Weil rank.
  std::optional<int> assume_rank;
  /// Seeds the random changes of basis in the basis-independence check.
  std::uint64_t seed = 1;
  std::vector<Mutation> mutations;
};

struct Report {
  explicit Report(WeierstrassModel model_) : model(std::move(model_)) {}

  WeierstrassModel model;
  SurfaceMetadata metadata;
  VerifyOptions options;
  SurfaceInvariants inv;
  /// Every bad fiber, in place order.
  std::vector<FiberData> bad;
  /// Every place of degree <= scan_degree.
  PlaceTable table;
  std::vector<Integer> counts;
  std::optional<RatPoly> p2_counts;
  std::optional<RatPoly> p2_product;
  std::optional<RatPoly> L;
  /// "expansion" (Euler product to deg L + margin) or "functional_equation".
  std::string l_route;
  std::optional<Q2Data> q2;
  std::optional<SpecialValue> p2_star;
  std::optional<SpecialValue> l_star;
  std::optional<SpecialValue> ns_discriminant;
  Integer c_J = 1;
  std::optional<int> rho;
  std::optional<int> rank;
  /// "declared", "assumed" or "bsd_inferred".
  std::string rank_source;
  std::optional<Rational> predicted_br;
  std::optional<Rational> predicted_sha;
  std::string br_note;
  std::string sha_note;
  std::vector<CheckResult> checks;

  bool failed() const;
  const CheckResult* find(std::string_view name) const;
};

/// Names of the checks in report order.
const std::vector<std::string>& check_names();

/// Runs the pipeline and every check. Throws for unsupported input
/// (CharTooSmall, NotMinimalizable, UnsupportedModel, PlaceBudgetExceeded,
/// InsufficientCounts, TruncationInsufficient); inconsistencies that a
/// mutation can cause become FAIL results instead.
Report run_verification(const WeierstrassModel& model, const SurfaceMetadata& metadata, const VerifyOptions& options = {});

// Individual checks, exposed for fault-injection tests.

CheckResult check_dual_path(const RatPoly& p2_counts, const RatPoly& p2_product);
/// P2* = L* Q2* (log q)^2 in absolute value.
CheckResult check_special_value(const SpecialValue& p2_star, const SpecialValue& l_star, const SpecialValue& q2_star);
CheckResult check_q2_closed_form(const Q2Data& q2);
/// Per fiber |Delta_ar(R_v)| = c_v d_v^{m_v - 1} prod r_i (log q)^{m_v - 1}, and
/// c(J) Q2* = prod |Delta_ar(R_v)|.
CheckResult check_flach_siebel(const std::vector<FiberData>& bad, const SpecialValue& q2_star);
/// |Delta_ar(NS)| = Delta_NT prod |Delta_ar(R_v)| (log q)^2.
CheckResult check_ns_discriminant(const SpecialValue& ns, const std::vector<FiberData>& bad, const Rational& delta_nt);
CheckResult check_order_relation(int ord_p2, int m, int ord_l);
/// rho = 2 + r + m; CONDITIONAL when it holds, since r is declared or inferred.
CheckResult check_tate_shioda(int rho, int rank, int m, const std::string& rank_source);
/// chi(S, Lie J) as -alpha (dim B = 0) and as 1 - chi(X, O_X).
CheckResult check_raynaud(const SurfaceInvariants& inv);
/// Predicted [Br] and [Sha] must agree; CONDITIONAL when only [Sha] is available.
CheckResult check_geisser(const std::optional<Rational>& br, const std::optional<Rational>& sha, const std::string& br_note,
                          const std::string& sha_note);

/// #E(k(v)) recounted from the model by tabulating squares; a mismatch with
/// L_v(1) or with the fiber template of the type is reported per place.
CheckResult check_local_sanity(const WeierstrassModel& model, const std::vector<FiberData>& places, int recount_degree);

/// N_n from the places against 1 + q^{2n} + (power sums of inverse roots of P2).
CheckResult check_point_counts(const std::vector<Integer>& counts, const RatPoly& p2, const Integer& q);

/// 1 + q^{2n} + sum of n-th powers of the inverse roots of p2, for n = 1..n_max.
std::vector<Integer> lefschetz_counts(const RatPoly& p2, const Integer& q, int n_max);

}  // namespace ellsurf
