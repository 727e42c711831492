#pragma once

// Weierstrass models over F_q(t), Tate's algorithm for residue characteristic
// at least 5, per-place fiber data and global invariants of the surface.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ellsurf/exactalg.hpp"
#include "ellsurf/ffield.hpp"

namespace ellsurf {

enum class Kodaira { Good, In, II, III, IV, I0s, Ins, IVs, IIIs, IIs };

/// "good", "I3", "II", "I0*", "I2*", "II*", ...
std::string kodaira_name(Kodaira type, int n);
/// Inverse of kodaira_name; throws ParseError.
std::pair<Kodaira, int> parse_kodaira(std::string_view name);

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with coefficients in F_q[t],
/// kept alongside the short form y^2 = x^3 + A x + B used by every computation.
struct WeierstrassModel {
  FieldCtx ctx;
  std::array<FqPoly, 5> a;  // a1, a2, a3, a4, a6
  FqPoly A;
  FqPoly B;
  /// Twist weight k used at infinity (A_inf = s^{4k} A(1/s)); 0 picks the least admissible k.
  int infinity_weight = 0;
};

/// Throws UnsupportedModel when the discriminant vanishes identically and
/// InvalidArgument when an explicit infinity weight is too small.
WeierstrassModel make_model(const FieldCtx& ctx, std::array<FqPoly, 5> a, int infinity_weight = 0);
/// y^2 = x^3 + A x + B
WeierstrassModel make_short_model(const FieldCtx& ctx, FqPoly A, FqPoly B, int infinity_weight = 0);

/// -16 (4 A^3 + 27 B^2)
FqPoly discriminant(const WeierstrassModel& model);
int effective_infinity_weight(const WeierstrassModel& model);
/// Short model in s = 1/t: A_inf = s^{4k} A(1/s), B_inf = s^{6k} B(1/s).
WeierstrassModel model_at_infinity(const WeierstrassModel& model);

struct Component {
  int r = 1;             // size of the Frobenius orbit of geometric components
  int multiplicity = 1;  // multiplicity in the fiber
  friend bool operator==(const Component&, const Component&) = default;
};

/// Intersection matrix of the geometric components; node 0 is the identity component.
struct DualGraph {
  std::vector<std::vector<int>> gram;
  std::vector<int> multiplicity;
};

DualGraph dual_graph(Kodaira type, int n);

struct FiberData {
  Place place;
  int d_v = 1;
  Integer q_v = 0;
  Kodaira type = Kodaira::Good;
  int n = 0;
  bool split = true;
  /// Roots in k(v) of the cubic attached to I0*; -1 for other types.
  int cubic_roots = -1;
  /// Frobenius action on geometric components and its orbits (orbit 0 holds node 0).
  std::vector<int> frobenius;
  std::vector<std::vector<int>> orbits;
  /// One entry per orbit.
  std::vector<Component> components;
  int m_v = 1;
  Integer c_v = 1;
  int f_v = 0;
  int e_v = 0;
  Integer a_v = 0;
  /// L_v(T) in T = q_v^{-s}.
  RatPoly l_factor{1};

  bool bad() const { return type != Kodaira::Good; }
};

/// Fiber data determined by the Kodaira type and its splitting data alone.
/// `cubic_roots` is used only for I0* (0, 1 or 3).
FiberData make_fiber(const FieldCtx& ctx, const Place& v, Kodaira type, int n, bool split, int cubic_roots = -1);
FiberData make_good_fiber(const FieldCtx& ctx, const Place& v, const Integer& a_v);

/// Tate's algorithm at v. Throws CharTooSmall, NotMinimalizable.
FiberData tate_local(const WeierstrassModel& model, const Place& v);

/// Points of the fiber over the degree-m extension of k(v).
Integer fiber_point_count(const FiberData& fiber, int m);

/// Finite places dividing the discriminant plus infinity, sorted.
std::vector<Place> discriminant_places(const WeierstrassModel& model);
/// tate_local at every candidate place, keeping the bad fibers.
std::vector<FiberData> bad_fibers(const WeierstrassModel& model);

struct SurfaceInvariants {
  int e = 0;
  int chi = 0;
  int b2 = 0;
  int deg_cond = 0;
  int deg_L = 0;
  int m = 0;
  int alpha = 0;
  int chi_lie = 0;
  // Fixed by the supported class: trivial base abelian variety, zero section present.
  int B_order = 1;
  int dim_B = 0;
  int dim_A = 0;
  int delta = 1;
  int alpha_index = 1;
  std::vector<Place> Z;
};

/// Throws EulerNotTwelveDivisible, UnsupportedModel (no bad fibers).
SurfaceInvariants global_invariants(const std::vector<FiberData>& bad);
SurfaceInvariants global_invariants(const WeierstrassModel& model);

}  // namespace ellsurf
