#include "ellsurf/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace ellsurf {

// ---------------------------------------------------------------- matrices

namespace {

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols != b.rows) throw Error(ErrorKind::InvalidArgument, "matrix shapes do not match");
  Matrix<T> c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> transposed(const Matrix<T>& a) {
  Matrix<T> t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

void swap_rows(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= f * row_src
void row_axpy(IntMatrix& m, int dst, int src, const Integer& f) {
  for (int j = 0; j < m.cols; ++j) m(dst, j) -= f * m(src, j);
}

void col_axpy(IntMatrix& m, int dst, int src, const Integer& f) {
  for (int i = 0; i < m.rows; ++i) m(i, dst) -= f * m(i, src);
}

}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b); }
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }
IntMatrix transpose(const IntMatrix& a) { return transposed(a); }
RatMatrix transpose(const RatMatrix& a) { return transposed(a); }

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = Rational(a.data[i]);
  return r;
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows != b.rows) throw Error(ErrorKind::InvalidArgument, "hconcat row mismatch");
  IntMatrix c(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) c(i, j) = a(i, j);
    for (int j = 0; j < b.cols; ++j) c(i, a.cols + j) = b(i, j);
  }
  return c;
}

IntMatrix column_slice(const IntMatrix& a, const std::vector<int>& columns) {
  IntMatrix c(a.rows, static_cast<int>(columns.size()));
  for (int i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < columns.size(); ++j) c(i, static_cast<int>(j)) = a(i, columns[j]);
  return c;
}

Rational determinant(const RatMatrix& a) {
  if (a.rows != a.cols) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  RatMatrix m = a;
  const int n = m.rows;
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (m(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      const Rational f = m(r, c) / m(c, c);
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows != a.cols) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  const int n = m.rows;
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int swap_with = -1;
      for (int r = k + 1; r < n; ++r)
        if (m(r, k) != 0) {
          swap_with = r;
          break;
        }
      if (swap_with < 0) return 0;
      swap_rows(m, k, swap_with);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<Rational> characteristic_polynomial(const RatMatrix& a) {
  if (a.rows != a.cols) throw Error(ErrorKind::InvalidArgument, "characteristic polynomial of a non-square matrix");
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  const int n = a.rows;
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1, 0);
  c[static_cast<std::size_t>(n)] = 1;
  RatMatrix M(n, n);
  for (int k = 1; k <= n; ++k) {
    RatMatrix next = a * M;
    for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    M = std::move(next);
    const RatMatrix AM = a * M;
    Rational trace = 0;
    for (int i = 0; i < n; ++i) trace += AM(i, i);
    c[static_cast<std::size_t>(n - k)] = -trace / k;
  }
  return c;
}

// ------------------------------------------------------------ Smith form

SmithForm smith_normal_form(const IntMatrix& M) {
  SmithForm s{IntMatrix::identity(M.rows), M, IntMatrix::identity(M.cols), 0, {}};
  IntMatrix& D = s.D;
  const int limit = std::min(D.rows, D.cols);
  int t = 0;
  for (; t < limit; ++t) {
    while (true) {
      // pivot: nonzero entry of least absolute value in the trailing block
      int pr = -1, pc = -1;
      Integer best = 0;
      for (int i = t; i < D.rows; ++i)
        for (int j = t; j < D.cols; ++j)
          if (D(i, j) != 0 && (pr < 0 || abs_int(D(i, j)) < best)) {
            best = abs_int(D(i, j));
            pr = i;
            pc = j;
          }
      if (pr < 0) break;
      swap_rows(D, t, pr);
      swap_rows(s.U, t, pr);
      swap_cols(D, t, pc);
      swap_cols(s.V, t, pc);
      bool clean = true;
      for (int i = t + 1; i < D.rows; ++i) {
        if (D(i, t) == 0) continue;
        const Integer f = D(i, t) / D(t, t);
        row_axpy(D, i, t, f);
        row_axpy(s.U, i, t, f);
        if (D(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < D.cols; ++j) {
        if (D(t, j) == 0) continue;
        const Integer f = D(t, j) / D(t, t);
        col_axpy(D, j, t, f);
        col_axpy(s.V, j, t, f);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad_row = -1;
      for (int i = t + 1; i < D.rows && bad_row < 0; ++i)
        for (int j = t + 1; j < D.cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;
      // row_t += row_bad brings a non-multiple into row t
      row_axpy(D, t, bad_row, -1);
      row_axpy(s.U, t, bad_row, -1);
    }
    if (D(t, t) == 0) break;
    if (D(t, t) < 0) {
      for (int j = 0; j < D.cols; ++j) D(t, j) = -D(t, j);
      for (int j = 0; j < s.U.cols; ++j) s.U(t, j) = -s.U(t, j);
    }
    s.invariants.push_back(D(t, t));
  }
  s.rank = static_cast<int>(s.invariants.size());
  return s;
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
  const int n = U.rows;
  if (U.cols != n) throw Error(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
  RatMatrix a = to_rational(U);
  RatMatrix inv = to_rational(IntMatrix::identity(n));
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (a(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw Error(ErrorKind::InvalidArgument, "singular matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(a(pivot, j), a(c, j));
      std::swap(inv(pivot, j), inv(c, j));
    }
    const Rational p = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational f = a(r, c);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < inv.data.size(); ++i) {
    if (!is_integer(inv.data[i])) throw Error(ErrorKind::InvalidArgument, "matrix is not unimodular");
    out.data[i] = boost::multiprecision::numerator(inv.data[i]);
  }
  return out;
}

IntMatrix integer_kernel(const IntMatrix& M) {
  const SmithForm s = smith_normal_form(M);
  std::vector<int> cols;
  for (int j = s.rank; j < M.cols; ++j) cols.push_back(j);
  return column_slice(s.V, cols);
}

// ----------------------------------------------------------------- groups

namespace {

// Rows [first, first + count) of m.
IntMatrix row_slice(const IntMatrix& m, int first, int count) {
  IntMatrix out(count, m.cols);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = m(first + i, j);
  return out;
}

IntMatrix column_vector(const std::vector<Integer>& v) {
  IntMatrix m(static_cast<int>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
  return m;
}

// Basis columns of the lattice spanned by the columns of g.
IntMatrix span_basis(const IntMatrix& g) {
  const SmithForm s = smith_normal_form(g);
  const IntMatrix Uinv = unimodular_inverse(s.U);
  IntMatrix b(g.rows, s.rank);
  for (int j = 0; j < s.rank; ++j)
    for (int i = 0; i < g.rows; ++i) b(i, j) = Uinv(i, j) * s.invariants[static_cast<std::size_t>(j)];
  return b;
}

// Coordinates X with basis * X = target; nullopt if some column is outside the span.
std::optional<IntMatrix> coordinates(const IntMatrix& basis, const IntMatrix& target) {
  const SmithForm s = smith_normal_form(basis);
  const IntMatrix Ut = s.U * target;
  IntMatrix Y(basis.cols, target.cols);
  for (int j = 0; j < target.cols; ++j) {
    for (int i = 0; i < basis.rows; ++i) {
      if (i < s.rank) {
        const Integer& d = s.invariants[static_cast<std::size_t>(i)];
        if (Ut(i, j) % d != 0) return std::nullopt;
        Y(i, j) = Ut(i, j) / d;
      } else if (Ut(i, j) != 0) {
        return std::nullopt;
      }
    }
  }
  return s.V * Y;
}

// {x in Z^{m.cols} : m x in span(rel)}, as basis columns.
IntMatrix preimage(const IntMatrix& m, const IntMatrix& rel) {
  const IntMatrix K = integer_kernel(hconcat(m, rel));
  return span_basis(row_slice(K, 0, m.cols));
}

RatMatrix gram_of(const RatMatrix& P, const IntMatrix& basis) {
  const RatMatrix b = to_rational(basis);
  return transpose(b) * P * b;
}

Rational pow_rational(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

SpecialValue graded(const Rational& signed_value, const Integer& scale, int rank) {
  if (signed_value == 0) throw Error(ErrorKind::DegeneratePairing, "pairing is degenerate modulo torsion");
  const int log_power = scale == 0 ? 0 : rank;
  const Rational v = scale == 0 ? signed_value : signed_value * pow_rational(Rational(scale), rank);
  return SpecialValue(v < 0 ? -1 : 1, v < 0 ? Rational(-v) : v, log_power, 0);
}

SpecialValue discriminant_of_structure(const RatMatrix& P, const GroupStructure& s, const Integer& scale) {
  const Rational det = determinant(gram_of(P, s.free_basis));
  const Rational t = Rational(s.torsion_order);
  return graded(det / (t * t), scale, s.rank);
}

}  // namespace

GroupStructure subgroup_structure(const IntMatrix& gens, const IntMatrix& relations) {
  if (gens.rows != relations.rows) throw Error(ErrorKind::InvalidArgument, "generator/relation row mismatch");
  const int s = gens.cols;
  GroupStructure out;
  out.free_basis = IntMatrix(gens.rows, 0);
  if (s == 0) return out;
  // relations among the generators
  const IntMatrix K = integer_kernel(hconcat(gens, relations));
  const IntMatrix rel = row_slice(K, 0, s);
  const SmithForm f = smith_normal_form(rel);
  const IntMatrix Uinv = unimodular_inverse(f.U);
  std::vector<int> free_cols;
  for (int i = 0; i < s; ++i) {
    if (i < f.rank) {
      const Integer& d = f.invariants[static_cast<std::size_t>(i)];
      if (d > 1) {
        out.torsion.push_back(d);
        out.torsion_order *= d;
      }
    } else {
      free_cols.push_back(i);
    }
  }
  out.rank = static_cast<int>(free_cols.size());
  out.free_basis = gens * column_slice(Uinv, free_cols);
  return out;
}

GroupStructure group_structure(const FgGroup& group) {
  return subgroup_structure(IntMatrix::identity(group.n_gens), group.relations);
}

bool in_span(const IntMatrix& gens, const std::vector<Integer>& v) {
  return coordinates(gens, column_vector(v)).has_value();
}

std::optional<Integer> lattice_index(const IntMatrix& super, const IntMatrix& sub) {
  const IntMatrix basis = span_basis(super);
  const auto X = coordinates(basis, sub);
  if (!X) throw Error(ErrorKind::InvalidArgument, "sublattice not contained in the lattice");
  const SmithForm s = smith_normal_form(*X);
  if (s.rank < basis.cols) return std::nullopt;
  Integer index = 1;
  for (const auto& d : s.invariants) index *= d;
  return index;
}

void validate(const PairedGroup& P) {
  const int n = P.group.n_gens;
  if (P.pairing.rows != n || P.pairing.cols != n || P.group.relations.rows != n)
    throw Error(ErrorKind::InvalidArgument, "pairing and group sizes disagree");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (P.pairing(i, j) != P.pairing(j, i)) throw Error(ErrorKind::InvalidArgument, "pairing is not symmetric");
  const RatMatrix pr = P.pairing * to_rational(P.group.relations);
  for (const auto& x : pr.data)
    if (x != 0) throw Error(ErrorKind::InvalidArgument, "relations do not pair to zero");
}

SpecialValue discriminant(const PairedGroup& P) {
  validate(P);
  return discriminant_of_structure(P.pairing, group_structure(P.group), P.log_scale);
}

SpecialValue discriminant_from(const PairedGroup& P, const IntMatrix& gens) {
  validate(P);
  const GroupStructure s = group_structure(P.group);
  if (gens.cols != s.rank) throw Error(ErrorKind::InvalidArgument, "generator count differs from the rank");
  const auto index = lattice_index(IntMatrix::identity(P.group.n_gens), hconcat(gens, P.group.relations));
  if (!index) throw Error(ErrorKind::InvalidArgument, "generators are not linearly independent of full rank");
  const Rational det = determinant(gram_of(P.pairing, gens));
  const Rational idx = Rational(*index);
  return graded(det / (idx * idx), P.log_scale, s.rank);
}

// -------------------------------------------------------------- complexes

std::vector<std::optional<Integer>> homology_orders(const GroupComplex& C) {
  const std::size_t n = C.groups.size();
  if (C.maps.size() + 1 != n && !(n == 0 && C.maps.empty()))
    throw Error(ErrorKind::InvalidArgument, "a complex of k groups needs k - 1 maps");
  std::vector<std::optional<Integer>> out;
  for (std::size_t i = 0; i < n; ++i) {
    const FgGroup& g = C.groups[i];
    IntMatrix cycles;
    if (i + 1 < n) {
      const IntMatrix& d = C.maps[i];
      if (d.cols != g.n_gens || d.rows != C.groups[i + 1].n_gens)
        throw Error(ErrorKind::InvalidArgument, "map shape does not match its groups");
      cycles = preimage(d, C.groups[i + 1].relations);
    } else {
      cycles = IntMatrix::identity(g.n_gens);
    }
    IntMatrix boundaries = g.relations;
    if (i > 0) boundaries = hconcat(boundaries, C.maps[i - 1]);
    try {
      out.push_back(lattice_index(cycles, boundaries));
    } catch (const Error&) {
      throw Error(ErrorKind::InvalidArgument, "not a complex of well-defined maps at position " + std::to_string(i));
    }
  }
  return out;
}

Rational z_invariant(const GroupComplex& C) {
  const auto orders = homology_orders(C);
  Rational z = 1;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (!orders[i]) throw Error(ErrorKind::InfiniteHomology, "homology in degree " + std::to_string(C.first_degree + static_cast<int>(i)) + " is infinite");
    const int degree = C.first_degree + static_cast<int>(i);
    if (degree % 2 == 0)
      z *= Rational(*orders[i]);
    else
      z /= Rational(*orders[i]);
  }
  return z;
}

namespace {

void require_exact(bool ok, const std::string& what, std::size_t degree) {
  if (!ok) throw Error(ErrorKind::NotExact, what + " fails in position " + std::to_string(degree));
}

bool columns_in(const IntMatrix& m, const IntMatrix& span) {
  if (m.cols == 0) return true;
  if (span.cols == 0) return std::all_of(m.data.begin(), m.data.end(), [](const Integer& x) { return x == 0; });
  return coordinates(span, m).has_value();
}

bool equal_lattices(const IntMatrix& super, const IntMatrix& sub) {
  if (!columns_in(sub, super)) return false;
  const auto idx = lattice_index(super, sub);
  return idx && *idx == 1;
}

}  // namespace

TriangleCheck z_triangle_check(const GroupComplex& K, const GroupComplex& L, const GroupComplex& M,
                               const std::vector<IntMatrix>& iota, const std::vector<IntMatrix>& pi) {
  const std::size_t n = L.groups.size();
  if (K.groups.size() != n || M.groups.size() != n || iota.size() != n || pi.size() != n ||
      K.first_degree != L.first_degree || M.first_degree != L.first_degree)
    throw Error(ErrorKind::NotExact, "complexes and maps have different lengths");
  for (std::size_t i = 0; i < n; ++i) {
    const auto &Ki = K.groups[i], &Li = L.groups[i], &Mi = M.groups[i];
    require_exact(iota[i].rows == Li.n_gens && iota[i].cols == Ki.n_gens, "shape of iota", i);
    require_exact(pi[i].rows == Mi.n_gens && pi[i].cols == Li.n_gens, "shape of pi", i);
    require_exact(columns_in(iota[i] * Ki.relations, Li.relations), "iota well-defined", i);
    require_exact(columns_in(pi[i] * Li.relations, Mi.relations), "pi well-defined", i);
    require_exact(columns_in(pi[i] * iota[i], Mi.relations), "pi o iota = 0", i);
    require_exact(equal_lattices(preimage(iota[i], Li.relations), Ki.relations), "injectivity", i);
    require_exact(equal_lattices(IntMatrix::identity(Mi.n_gens), hconcat(pi[i], Mi.relations)), "surjectivity", i);
    require_exact(equal_lattices(preimage(pi[i], Mi.relations), hconcat(iota[i], Li.relations)), "exactness in the middle", i);
    if (i + 1 < n) {
      IntMatrix lhs = iota[i + 1] * K.maps[i];
      IntMatrix rhs = L.maps[i] * iota[i];
      for (std::size_t k = 0; k < lhs.data.size(); ++k) lhs.data[k] -= rhs.data[k];
      require_exact(columns_in(lhs, L.groups[i + 1].relations), "iota commutes with differentials", i);
      lhs = pi[i + 1] * L.maps[i];
      rhs = M.maps[i] * pi[i];
      for (std::size_t k = 0; k < lhs.data.size(); ++k) lhs.data[k] -= rhs.data[k];
      require_exact(columns_in(lhs, M.groups[i + 1].relations), "pi commutes with differentials", i);
    }
  }
  TriangleCheck out;
  out.zK = z_invariant(K);
  out.zL = z_invariant(L);
  out.zM = z_invariant(M);
  out.holds = out.zK * out.zM == out.zL;
  return out;
}

// -------------------------------------------------------------- Yun, split

YunResult yun_split(const PairedGroup& lambda, const IntMatrix& gamma, const IntMatrix& gamma_prime) {
  validate(lambda);
  const auto& P = lambda.pairing;
  const IntMatrix& R = lambda.group.relations;
  const RatMatrix gg = transpose(to_rational(gamma)) * P * to_rational(gamma);
  for (const auto& x : gg.data)
    if (x != 0) throw Error(ErrorKind::NotIsotropic, "Gamma is not isotropic");
  const RatMatrix ggp = transpose(to_rational(gamma)) * P * to_rational(gamma_prime);
  for (const auto& x : ggp.data)
    if (x != 0) throw Error(ErrorKind::NotIsotropic, "Gamma' is not orthogonal to Gamma");
  if (!columns_in(gamma, hconcat(gamma_prime, R))) throw Error(ErrorKind::InvalidArgument, "Gamma is not inside Gamma'");

  const GroupStructure whole = group_structure(lambda.group);
  const GroupStructure sA = subgroup_structure(gamma, R);
  const GroupStructure sPrime = subgroup_structure(gamma_prime, R);
  if (sPrime.rank != whole.rank - sA.rank) throw Error(ErrorKind::IndexInfinite, "Gamma' has infinite index in the orthogonal of Gamma");

  YunResult out;
  out.delta_lambda = discriminant(lambda);
  const GroupStructure s0 = subgroup_structure(gamma_prime, hconcat(R, gamma));
  out.delta_lambda0 = discriminant_of_structure(P, s0, lambda.log_scale);

  const GroupStructure sB = group_structure({lambda.group.n_gens, hconcat(R, gamma_prime)});
  if (sA.rank != sB.rank) throw Error(ErrorKind::DegeneratePairing, "Gamma and Lambda/Gamma' have different ranks");
  const RatMatrix mixed = transpose(to_rational(sA.free_basis)) * P * to_rational(sB.free_basis);
  const Rational det = determinant(mixed);
  const Rational value = (det < 0 ? Rational(-det) : det) / (Rational(sA.torsion_order) * Rational(sB.torsion_order));
  out.delta_mixed = graded(value, lambda.log_scale, sA.rank).abs();
  const SpecialValue rhs = out.delta_lambda0 * out.delta_mixed * out.delta_mixed;
  out.holds_abs = abs_eq(out.delta_lambda, rhs);
  out.holds_signed = out.delta_lambda == rhs;
  return out;
}

namespace {

// Some rational solution of A y = b, or nullopt.
std::optional<std::vector<Rational>> solve_rational(const RatMatrix& A, const std::vector<Rational>& b) {
  const int rows = A.rows, cols = A.cols;
  RatMatrix m(rows, cols + 1);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = A(i, j);
    m(i, cols) = b[static_cast<std::size_t>(i)];
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    for (int j = 0; j <= cols; ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (int j = 0; j <= cols; ++j) m(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (int j = 0; j <= cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (m(i, cols) != 0) return std::nullopt;
  std::vector<Rational> y(static_cast<std::size_t>(cols), 0);
  for (int i = 0; i < r; ++i) y[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] = m(i, cols);
  return y;
}

}  // namespace

SplitCheck orthogonal_split_check(const PairedGroup& N, const IntMatrix& sub, const IntMatrix& complement) {
  validate(N);
  const auto& P = N.pairing;
  const IntMatrix& R = N.group.relations;
  const int n = N.group.n_gens;
  const RatMatrix cross = transpose(to_rational(sub)) * P * to_rational(complement);
  for (const auto& x : cross.data)
    if (x != 0) throw Error(ErrorKind::NotOrthogonal, "complement is not orthogonal to the subgroup");
  const GroupStructure whole = group_structure(N.group);
  const GroupStructure s1 = subgroup_structure(sub, R);
  const GroupStructure s2 = subgroup_structure(complement, R);
  const GroupStructure both = subgroup_structure(hconcat(sub, complement), R);
  if (s1.rank + s2.rank != whole.rank || both.rank != whole.rank)
    throw Error(ErrorKind::NotOrthogonal, "subgroup and complement do not split N over Q");

  // Pairing on N/N' through the projection onto the complement.
  const IntMatrix frame = hconcat(hconcat(s1.free_basis, s2.free_basis), R);
  const RatMatrix frameQ = to_rational(frame);
  RatMatrix proj(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j)] = 1;
    const auto y = solve_rational(frameQ, e);
    if (!y) throw Error(ErrorKind::NotOrthogonal, "generator outside the rational span");
    for (int k = 0; k < s2.rank; ++k) {
      const Rational& coef = (*y)[static_cast<std::size_t>(s1.rank + k)];
      for (int i = 0; i < n; ++i) proj(i, j) += coef * Rational(s2.free_basis(i, k));
    }
  }
  PairedGroup quotient{{n, hconcat(R, sub)}, transpose(proj) * P * proj, N.log_scale};

  SplitCheck out;
  out.delta_n = discriminant(N);
  out.delta_sub = discriminant_of_structure(P, s1, N.log_scale);
  out.delta_quotient = discriminant(quotient);
  out.holds = out.delta_n == out.delta_sub * out.delta_quotient;
  return out;
}

Signature signature(const RatMatrix& a) {
  const auto c = characteristic_polynomial(a);
  Signature s;
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  s.zero = static_cast<int>(low);
  auto changes = [&](bool alternate) {
    int count = 0, last = 0;
    for (std::size_t k = low; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      int sign = c[k] > 0 ? 1 : -1;
      if (alternate && k % 2 == 1) sign = -sign;
      if (last != 0 && sign != last) ++count;
      last = sign;
    }
    return count;
  };
  s.positive = changes(false);
  s.negative = changes(true);
  return s;
}

// ------------------------------------------------------- fiber/NS lattices

RatMatrix orbit_gram(const FiberData& fiber) {
  const DualGraph g = dual_graph(fiber.type, fiber.n);
  const int m = static_cast<int>(fiber.orbits.size());
  RatMatrix out(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      long long sum = 0;
      for (int i : fiber.orbits[static_cast<std::size_t>(a)])
        for (int j : fiber.orbits[static_cast<std::size_t>(b)])
          sum += g.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      out(a, b) = sum;
    }
  return out;
}

PairedGroup component_lattice(const FiberData& fiber) {
  if (!fiber.bad()) throw Error(ErrorKind::GoodFiber, "no component lattice at a good place");
  const DualGraph g = dual_graph(fiber.type, fiber.n);
  const int m = static_cast<int>(fiber.orbits.size());
  IntMatrix cycle(m, 1);
  for (int a = 0; a < m; ++a)
    cycle(a, 0) = g.multiplicity[static_cast<std::size_t>(fiber.orbits[static_cast<std::size_t>(a)].front())];
  return PairedGroup{{m, cycle}, orbit_gram(fiber), Integer(fiber.d_v)};
}

PairedGroup ns_lattice_build(const SurfaceInvariants& inv, const std::vector<FiberData>& bad, int mw_rank,
                             const Integer& mw_torsion) {
  if (mw_rank != 0 || mw_torsion != 1)
    throw Error(ErrorKind::NontrivialMW, "Mordell-Weil group declared rank " + std::to_string(mw_rank) + ", torsion " +
                                             to_string(mw_torsion) + "; lattice needs height pairings");
  int size = 2;
  for (const auto& f : bad)
    if (f.bad()) size += static_cast<int>(f.orbits.size()) - 1;
  RatMatrix G(size, size);
  G(0, 0) = -inv.chi;
  G(0, 1) = G(1, 0) = 1;
  int offset = 2;
  for (const auto& f : bad) {
    if (!f.bad()) continue;
    const RatMatrix block = orbit_gram(f);
    const int m = block.rows;
    for (int a = 1; a < m; ++a)
      for (int b = 1; b < m; ++b) G(offset + a - 1, offset + b - 1) = block(a, b) * f.d_v;
    offset += m - 1;
  }
  return PairedGroup{FgGroup::free(size), G, 1};
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < m.cols; ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace ellsurf
