#pragma once

// Seeded randomized trials for the lattice identities, each against an oracle
// that does not go through the Smith-form code: cofactor determinants and
// explicit block constructions with known answers. Shared by test_lattice and
// the acceptance runner.

#include <random>
#include <string>

#include "ellsurf/lattice.hpp"

namespace ellsurf::trials {

// Cofactor expansion; independent of the elimination code.
inline Rational cofactor_det(const RatMatrix& a) {
  const int n = a.rows;
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Rational det = 0;
  for (int j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    RatMatrix minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
      for (int k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = a(i, k);
    const Rational term = a(0, j) * cofactor_det(minor);
    det += (j % 2 == 0) ? term : Rational(-term);
  }
  return det;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, int r, int c, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(r, c);
  for (auto& x : m.data) x = dist(rng);
  return m;
}

inline IntMatrix random_unimodular(std::mt19937_64& rng, int n) {
  IntMatrix w = IntMatrix::identity(n);
  if (n < 2) return w;
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
  for (int step = 0; step < 3 * n; ++step) {
    const int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const int f = coef(rng);
    for (int k = 0; k < n; ++k) w(k, i) += f * w(k, j);
  }
  return w;
}

inline RatMatrix congruent(const RatMatrix& g, const IntMatrix& w) { return transpose(to_rational(w)) * g * to_rational(w); }

inline Rational rpow(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

inline Rational rabs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline IntMatrix column(const std::vector<long long>& v) {
  IntMatrix m(static_cast<int>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
  return m;
}

struct RandomComplex {
  GroupComplex C;
  Rational z;  // independent value
};

// Free complex Z^n --d--> Z^n with det d != 0: z = 1/|det d|.
inline RandomComplex random_square(std::mt19937_64& rng, int n) {
  while (true) {
    const IntMatrix d = random_matrix(rng, n, n, 3);
    const Rational det = cofactor_det(to_rational(d));
    if (det == 0) continue;
    return {{{FgGroup::free(n), FgGroup::free(n)}, {d}, 0}, 1 / rabs(det)};
  }
}

inline IntMatrix block_upper(const IntMatrix& a, const IntMatrix& h, const IntMatrix& b) {
  IntMatrix m(a.rows + b.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) m(i, j) = a(i, j);
  for (int i = 0; i < h.rows; ++i)
    for (int j = 0; j < h.cols; ++j) m(i, a.cols + j) = h(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) m(a.rows + i, a.cols + j) = b(i, j);
  return m;
}

inline IntMatrix minus(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] -= b.data[i];
  return m;
}

struct TrialResult {
  int trials = 0;
  int failures = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first_failure = "trial " + std::to_string(trials) + ": " + what;
  }
  bool passed(int min_trials) const { return failures == 0 && trials >= min_trials; }
};

/// z(L) = z(K) z(M) for K -> L -> M with K, M square free complexes
/// (z = 1/|det|), L glued by a random map and re-based in both degrees.
inline TrialResult z_triangle_trials(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  TrialResult res;
  for (; res.trials < count; ++res.trials) {
    const int nk = 1 + static_cast<int>(rng() % 2), nm = 1 + static_cast<int>(rng() % 2);
    const RandomComplex K = random_square(rng, nk);
    const RandomComplex M = random_square(rng, nm);
    const IntMatrix& dK = K.C.maps[0];
    const IntMatrix& dM = M.C.maps[0];
    // glue h = dK s0 - s1 dM keeps d^2 = 0 in longer complexes; here it is any map M0 -> K1
    const IntMatrix s0 = random_matrix(rng, nk, nm, 2), s1 = random_matrix(rng, nk, nm, 2);
    const IntMatrix h = minus(dK * s0, s1 * dM);
    const IntMatrix dL = block_upper(dK, h, dM);
    const IntMatrix W0 = random_unimodular(rng, nk + nm), W1 = random_unimodular(rng, nk + nm);
    const IntMatrix W0inv = unimodular_inverse(W0), W1inv = unimodular_inverse(W1);
    const GroupComplex L{{FgGroup::free(nk + nm), FgGroup::free(nk + nm)}, {W1inv * dL * W0}, 0};
    IntMatrix inc(nk + nm, nk), proj(nm, nk + nm);
    for (int i = 0; i < nk; ++i) inc(i, i) = 1;
    for (int i = 0; i < nm; ++i) proj(i, nk + i) = 1;
    const std::vector<IntMatrix> iota{W0inv * inc, W1inv * inc};
    const std::vector<IntMatrix> pi{proj * W0, proj * W1};
    const TriangleCheck t = z_triangle_check(K.C, L, M.C, iota, pi);
    res.record(t.zK == K.z && t.zM == M.z, "z(K) or z(M) differs from 1/|det|");
    res.record(t.zL == K.z * M.z, "z(L) = " + to_string(t.zL) + " but z(K) z(M) = " + to_string(K.z * M.z));
    res.record(t.holds, "triangle check reports failure");
  }
  return res;
}

/// Delta of a random lattice with torsion equals det(G0)/|T|^2, whatever the
/// basis and whichever finite-index generators are used.
inline TrialResult discriminant_basis_trials(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  TrialResult res;
  for (; res.trials < count; ++res.trials) {
    const int r = 1 + static_cast<int>(rng() % 3);
    const int t = static_cast<int>(rng() % 2);  // number of torsion coordinates
    const int n = r + t;
    RatMatrix G0(n, n);
    Rational det0;
    do {
      const IntMatrix x = random_matrix(rng, r, r, 3);
      RatMatrix g = to_rational(transpose(x) * x);
      for (int i = 0; i < r; ++i) g(i, i) += static_cast<long long>(rng() % 3) - 1;
      det0 = cofactor_det(g);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) G0(i, j) = g(i, j);
    } while (det0 == 0);
    IntMatrix R0(n, t);
    long long tors = 1;
    for (int i = 0; i < t; ++i) {
      const long long a = 2 + static_cast<long long>(rng() % 4);
      R0(r + i, i) = a;
      tors *= a;
    }
    const IntMatrix W = random_unimodular(rng, n);
    const IntMatrix Winv = unimodular_inverse(W);
    const PairedGroup P{{n, Winv * R0}, congruent(G0, W), 0};
    const SpecialValue d = discriminant(P);
    const Rational expected = det0 / Rational(tors * tors);
    res.record(d == SpecialValue(expected < 0 ? -1 : 1, rabs(expected), 0, 0),
               "Delta = " + d.to_string() + ", expected " + to_string(expected));
    // a finite-index set of generators: the free part times a random nonsingular X
    IntMatrix X;
    do X = random_matrix(rng, r, r, 2);
    while (determinant(X) == 0);
    IntMatrix free_part(n, r);
    for (int i = 0; i < r; ++i) free_part(i, i) = 1;
    res.record(discriminant_from(P, Winv * free_part * X) == d, "Delta from sublattice generators differs");
  }
  return res;
}

/// Yun's lemma on U-like lattices: isotropic Gamma = c span(e_i) inside
/// Gamma' = span(e_i, L0); |Delta| must equal |det G| (times scale^n), and each
/// isotropic dimension flips the sign once.
inline TrialResult yun_trials(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  TrialResult res;
  for (; res.trials < count; ++res.trials) {
    const int r = 1 + static_cast<int>(rng() % 2);
    const int l = static_cast<int>(rng() % 3);
    const int n = 2 * r + l;
    RatMatrix G(n, n);
    IntMatrix A;
    do A = random_matrix(rng, r, r, 3);
    while (determinant(A) == 0);
    RatMatrix L0(l, l);
    do {
      const IntMatrix x = random_matrix(rng, l, l, 2);
      L0 = to_rational(transpose(x) * x);
      for (int i = 0; i < l; ++i) L0(i, i) += 1;
    } while (l > 0 && cofactor_det(L0) == 0);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) G(r + i, r + j) = L0(i, j);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) G(i, r + l + j) = G(r + l + j, i) = Rational(A(i, j));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < l; ++j) {
        const Rational x = static_cast<long long>(rng() % 5) - 2;
        G(r + l + i, r + j) = G(r + j, r + l + i) = x;
      }
    for (int i = 0; i < r; ++i)
      for (int j = i; j < r; ++j) {
        const Rational x = static_cast<long long>(rng() % 5) - 2;
        G(r + l + i, r + l + j) = G(r + l + j, r + l + i) = x;
      }
    const long long c = 1 + static_cast<long long>(rng() % 3);
    IntMatrix gamma(n, r), gp(n, r + l);
    for (int i = 0; i < r; ++i) {
      gamma(i, i) = c;
      gp(i, i) = 1;
    }
    for (int i = 0; i < l; ++i) gp(r + i, r + i) = 1;
    const IntMatrix W = random_unimodular(rng, n);
    const IntMatrix Winv = unimodular_inverse(W);
    const long long scale = static_cast<long long>(rng() % 3);
    const PairedGroup P{FgGroup::free(n), congruent(G, W), scale};
    const YunResult y = yun_split(P, Winv * gamma, Winv * gp);
    res.record(y.holds_abs, "absolute identity fails");
    const Rational expected = rabs(cofactor_det(G)) * (scale ? rpow(Rational(scale), n) : Rational(1));
    res.record(y.delta_lambda.value == expected, "|Delta(Lambda)| = " + to_string(y.delta_lambda.value) + ", expected " + to_string(expected));
    res.record(y.delta_lambda.sign == y.delta_lambda0.sign * (r % 2 ? -1 : 1), "sign flip count");
    res.record(y.holds_signed == (r % 2 == 0), "signed identity status");
  }
  return res;
}

/// Delta(N) = Delta(N') Delta(N / N') for orthogonal blocks, with optional
/// torsion placed on either side.
inline TrialResult orthogonal_split_trials(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  TrialResult res;
  for (; res.trials < count; ++res.trials) {
    const int a = 1 + static_cast<int>(rng() % 2), b = 1 + static_cast<int>(rng() % 2);
    const int t = static_cast<int>(rng() % 2);
    const int n = a + b + t;
    RatMatrix G(n, n);
    Rational da, db;
    do {
      const IntMatrix x = random_matrix(rng, a, a, 3);
      const IntMatrix y = random_matrix(rng, b, b, 3);
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j) G(i, j) = Rational((transpose(x) * x)(i, j)) * ((res.trials % 3 == 0) ? -1 : 1);
      for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) G(a + i, a + j) = Rational((transpose(y) * y)(i, j));
      RatMatrix ga(a, a), gb(b, b);
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j) ga(i, j) = G(i, j);
      for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) gb(i, j) = G(a + i, a + j);
      da = cofactor_det(ga);
      db = cofactor_det(gb);
    } while (da == 0 || db == 0);
    IntMatrix R(n, t);
    if (t) R(n - 1, 0) = 2 + static_cast<long long>(rng() % 3);
    IntMatrix sub(n, a), comp(n, b);
    for (int i = 0; i < a; ++i) sub(i, i) = 1;
    for (int i = 0; i < b; ++i) comp(a + i, i) = 1;
    if (t && rng() % 2) {
      std::vector<long long> v(static_cast<std::size_t>(n), 0);
      v.back() = 1;
      sub = hconcat(sub, column(v));
    }
    const IntMatrix W = random_unimodular(rng, n);
    const IntMatrix Winv = unimodular_inverse(W);
    const PairedGroup N{{n, Winv * R}, congruent(G, W), 0};
    const SplitCheck s = orthogonal_split_check(N, Winv * sub, Winv * comp);
    res.record(s.holds, "split identity fails");
    const Rational tors = t ? Rational(R(n - 1, 0)) : Rational(1);
    const Rational expected = rabs(da * db / (tors * tors));
    res.record(s.delta_n.value == expected, "|Delta(N)| = " + to_string(s.delta_n.value) + ", expected " + to_string(expected));
  }
  return res;
}

}  // namespace ellsurf::trials
