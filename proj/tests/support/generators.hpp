#pragma once

#include <vector>

#include "einstab/matrix.hpp"
#include "einstab/rational.hpp"
#include "einstab/rng.hpp"

namespace einstab::testing {

inline Rational rand_rational(Rng& rng, long long num_bound = 9,
                              long long den_bound = 9) {
  return Rational(rng.int_in(-num_bound, num_bound), rng.int_in(1, den_bound));
}

inline Rational rand_positive_rational(Rng& rng, long long num_bound = 9,
                                       long long den_bound = 9) {
  return Rational(rng.int_in(1, num_bound), rng.int_in(1, den_bound));
}

inline Rational rand_nonneg_rational(Rng& rng, long long num_bound = 9,
                                     long long den_bound = 9) {
  return Rational(rng.int_in(0, num_bound), rng.int_in(1, den_bound));
}

inline SymMatrix<Rational> rand_sym(Rng& rng, int dim,
                                    long long num_bound = 9,
                                    long long den_bound = 4) {
  SymMatrix<Rational> m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      m.set(i, j, rand_rational(rng, num_bound, den_bound));
  return m;
}

inline Mat<Rational> rand_skew(Rng& rng, int n, long long num_bound = 9,
                               long long den_bound = 4) {
  Mat<Rational> w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Rational v = rand_rational(rng, num_bound, den_bound);
      w.at(i, j) = v;
      w.at(j, i) = -v;
    }
  return w;
}

/// Random invertible matrix built as a product of unit-triangular
/// factors (determinant 1 by construction).
inline Mat<Rational> rand_unimodular(Rng& rng, int n, long long bound = 3) {
  Mat<Rational> lower = Mat<Rational>::identity(n);
  Mat<Rational> upper = Mat<Rational>::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      lower.at(i, j) = Rational(rng.int_in(-bound, bound));
      upper.at(j, i) = Rational(rng.int_in(-bound, bound));
    }
  return lower * upper;
}

/// Random full-rank r x m integer matrix with nonzero columns.
inline Mat<int> rand_classifying_matrix(Rng& rng, int r, int m) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<int> b(r, m);
    for (int a = 0; a < r; ++a)
      for (int j = 0; j < m; ++j)
        b.at(a, j) = static_cast<int>(rng.int_in(-2, 2));
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) {
      bool nonzero = false;
      for (int a = 0; a < r; ++a) nonzero = nonzero || b.at(a, j) != 0;
      ok = nonzero;
    }
    if (ok && rank(mat_cast<Rational>(b)) == r) return b;
  }
  // Deterministic fallback: identity block padded with ones.
  Mat<int> b(r, m);
  for (int a = 0; a < r; ++a) b.at(a, a) = 1;
  for (int j = r; j < m; ++j) b.at(0, j) = 1;
  return b;
}

}  // namespace einstab::testing
