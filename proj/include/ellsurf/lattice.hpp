#pragma once

// Finitely generated abelian groups given by generators and relations,
// Smith normal form, discriminants of pairings, z-invariants of complexes,
// and the lattices attached to fibers and to the Neron-Severi group.

#include <optional>
#include <string>
#include <vector>

#include "ellsurf/exactalg.hpp"
#include "ellsurf/tatefiber.hpp"

namespace ellsurf {

template <class T>
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c)) {}
  Matrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows = static_cast<int>(init.size());
    cols = rows ? static_cast<int>(init.begin()->size()) : 0;
    for (const auto& row : init) {
      if (static_cast<int>(row.size()) != cols) throw Error(ErrorKind::InvalidArgument, "ragged matrix literal");
      for (long long x : row) data.emplace_back(x);
    }
  }
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  T& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
  const T& operator()(int i, int j) const {
    return data[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)];
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
IntMatrix transpose(const IntMatrix& a);
RatMatrix transpose(const RatMatrix& a);
RatMatrix to_rational(const IntMatrix& a);
/// Columns side by side; row counts must agree.
IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix column_slice(const IntMatrix& a, const std::vector<int>& columns);

/// Exact determinant by fraction-free elimination.
Rational determinant(const RatMatrix& a);
Integer determinant(const IntMatrix& a);
/// Coefficients of det(x I - a), lowest degree first.
std::vector<Rational> characteristic_polynomial(const RatMatrix& a);

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal with d1 | d2 | ...
  IntMatrix V;  // cols x cols, unimodular
  int rank = 0;
  /// The nonzero diagonal entries, all positive.
  std::vector<Integer> invariants;
};

/// U M V = D.
SmithForm smith_normal_form(const IntMatrix& M);
/// Inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& U);
/// Basis (as columns) of the integer kernel of M.
IntMatrix integer_kernel(const IntMatrix& M);

/// Z^{n_gens} modulo the span of the relation columns.
struct FgGroup {
  int n_gens = 0;
  IntMatrix relations;  // n_gens x k

  static FgGroup free(int n) { return {n, IntMatrix(n, 0)}; }
};

struct GroupStructure {
  int rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
  Integer torsion_order = 1;
  /// Columns in ambient coordinates whose classes form a basis of a free complement of torsion.
  IntMatrix free_basis;
};

GroupStructure group_structure(const FgGroup& group);
/// The subgroup of Z^n / span(relations) generated by the columns of `gens`.
GroupStructure subgroup_structure(const IntMatrix& gens, const IntMatrix& relations);
/// Whether v lies in the span of the columns of `gens`.
bool in_span(const IntMatrix& gens, const std::vector<Integer>& v);
/// [span(super) : span(sub)] for sub inside super; nullopt when infinite. Throws InvalidArgument if not contained.
std::optional<Integer> lattice_index(const IntMatrix& super, const IntMatrix& sub);

/// Group with a symmetric rational pairing on its generators. The arithmetic
/// pairing is log_scale * log q times the given one; log_scale = 0 marks a plain
/// intersection pairing.
struct PairedGroup {
  FgGroup group;
  RatMatrix pairing;
  Integer log_scale = 0;
};

/// Throws InvalidArgument if not symmetric or if relations do not pair to zero.
void validate(const PairedGroup& P);

/// det psi(b_i, b_j) / (N : N')^2, graded by (log q)^rank when log_scale != 0.
/// The returned SpecialValue has order 0. Throws DegeneratePairing.
SpecialValue discriminant(const PairedGroup& P);
/// The same quantity computed from the columns of `gens`, which must be a
/// maximal independent set; the index comes from the Smith form.
SpecialValue discriminant_from(const PairedGroup& P, const IntMatrix& gens);

/// Cochain complex: maps[i] sends groups[i] to groups[i + 1]; degrees start at `first_degree`.
struct GroupComplex {
  std::vector<FgGroup> groups;
  std::vector<IntMatrix> maps;
  int first_degree = 0;
};

/// Orders of H^i (nullopt when infinite), one per group.
std::vector<std::optional<Integer>> homology_orders(const GroupComplex& C);
/// prod [H^i]^{(-1)^i}. Throws InfiniteHomology, InvalidArgument (not a complex).
Rational z_invariant(const GroupComplex& C);

struct TriangleCheck {
  Rational zK, zL, zM;
  bool holds = false;
};

/// 0 -> K -> L -> M -> 0 degreewise exact via chain maps iota[i], pi[i].
/// Throws NotExact.
TriangleCheck z_triangle_check(const GroupComplex& K, const GroupComplex& L, const GroupComplex& M,
                               const std::vector<IntMatrix>& iota, const std::vector<IntMatrix>& pi);

struct YunResult {
  SpecialValue delta_lambda;
  SpecialValue delta_lambda0;
  /// Positive: the pairing between two different groups has no preferred orientation.
  SpecialValue delta_mixed;
  bool holds_abs = false;
  bool holds_signed = false;
};

/// Gamma, Gamma' given by generator columns in the coordinates of Lambda.
/// Throws NotIsotropic, IndexInfinite, DegeneratePairing.
YunResult yun_split(const PairedGroup& lambda, const IntMatrix& gamma, const IntMatrix& gamma_prime);

struct SplitCheck {
  SpecialValue delta_n, delta_sub, delta_quotient;
  bool holds = false;
};

/// N' = span(sub) inside N, N'' = N/N' with the pairing of the components in
/// span_Q(complement). Throws NotOrthogonal if complement is not orthogonal to N'
/// or the two spans do not fill N over Q.
SplitCheck orthogonal_split_check(const PairedGroup& N, const IntMatrix& sub, const IntMatrix& complement);

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Exact signature of a symmetric rational matrix from sign changes of its characteristic polynomial.
Signature signature(const RatMatrix& a);

/// Gram matrix of the Frobenius orbits of geometric components (over k(v)).
RatMatrix orbit_gram(const FiberData& fiber);
/// R_v: orbits modulo the fiber cycle, arithmetic grade log q_v = d_v log q. Throws GoodFiber.
PairedGroup component_lattice(const FiberData& fiber);

/// Basis O, F, then the non-identity orbits of each bad fiber in order.
/// Throws NontrivialMW unless mw_rank = 0 and mw_torsion = 1.
PairedGroup ns_lattice_build(const SurfaceInvariants& inv, const std::vector<FiberData>& bad, int mw_rank,
                             const Integer& mw_torsion);

std::string to_string(const IntMatrix& m);

}  // namespace ellsurf
