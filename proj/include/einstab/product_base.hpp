#pragma once

#include <string>
#include <vector>

#include "einstab/errors.hpp"
#include "einstab/matrix.hpp"
#include "einstab/rational.hpp"
#include "einstab/submersion.hpp"

namespace einstab {

/// Per-factor data of a Riemannian-product base under an Einstein
/// submersion: real dimension, scalar curvature, and the squared norm
/// of the A-tensor restricted to the factor's horizontal lift.
template <class T>
struct BaseFactorData {
  std::vector<int> n;
  std::vector<T> scal;
  std::vector<T> a_norm_sq;

  int factors() const { return static_cast<int>(n.size()); }

  static BaseFactorData make(std::vector<int> n, std::vector<T> scal,
                             std::vector<T> a_norm_sq) {
    if (n.size() < 2) throw InvalidParams("need at least two base factors");
    if (scal.size() != n.size() || a_norm_sq.size() != n.size())
      throw InvalidParams("per-factor arrays must have equal length");
    for (int d : n)
      if (d < 2) throw InvalidParams("factor dimensions must be >= 2");
    for (const T& a : a_norm_sq)
      if (a < T(0)) throw InvalidParams("|A^(p)|^2 must be non-negative");
    return BaseFactorData{std::move(n), std::move(scal), std::move(a_norm_sq)};
  }
};

/// Coefficients d_p = (8|A^(p)|^2 - 2 s_p) / n_p^2 diagonalizing the
/// second-variation form on trace-free combinations of the normalized
/// pulled-back factor metrics: Q(sum c_p pi*(g_p/n_p)) = sum c_p^2 d_p.
template <class T>
std::vector<T> diagonal_coefficients(const BaseFactorData<T>& data) {
  std::vector<T> d;
  d.reserve(data.n.size());
  for (std::size_t p = 0; p < data.n.size(); ++p) {
    const long long np = data.n[p];
    d.push_back((T(8) * data.a_norm_sq[p] - T(2) * data.scal[p]) /
                ratio<T>(np * np, 1));
  }
  return d;
}

/// Second-variation value along pi*(g_p/n_p - g_q/n_q); equals d_p + d_q.
/// Indices are zero-based.
template <class T>
ValueVerdict<T> pairwise_difference_value(const BaseFactorData<T>& data, int p,
                                          int q) {
  const int m = data.factors();
  if (p < 0 || q < 0 || p >= m || q >= m || p == q)
    throw IndexOutOfRange("factor indices must be distinct and within range");
  const auto d = diagonal_coefficients(data);
  ValueVerdict<T> out;
  out.value = d[static_cast<std::size_t>(p)] + d[static_cast<std::size_t>(q)];
  out.verdict = out.value < T(0) ? Verdict::Unstable : Verdict::Inconclusive;
  out.direction = "pi*(g_" + std::to_string(p + 1) + "/n_" +
                  std::to_string(p + 1) + " - g_" + std::to_string(q + 1) +
                  "/n_" + std::to_string(q + 1) + ")";
  return out;
}

template <class T>
struct CoindexBound {
  SymMatrix<T> form;
  Inertia inertia;
  std::vector<std::vector<T>> span;
};

/// Consecutive-difference coefficient basis e_p - e_{p+1}; restricting
/// `count` keeps the first `count` differences.
template <class T>
std::vector<std::vector<T>> difference_span(int m, int count) {
  if (count < 0 || count > m - 1)
    throw InvalidParams("difference span size out of range");
  std::vector<std::vector<T>> span;
  for (int p = 0; p + 1 < m && p < count; ++p) {
    std::vector<T> c(static_cast<std::size_t>(m), T(0));
    c[static_cast<std::size_t>(p)] = T(1);
    c[static_cast<std::size_t>(p + 1)] = T(-1);
    span.push_back(std::move(c));
  }
  return span;
}

/// Restricts the diagonal form to the given span of trace-free
/// coefficient vectors and computes its inertia; n_neg is a coindex
/// lower bound for the Einstein metric.
template <class T>
CoindexBound<T> coindex_lower_bound(const std::vector<T>& d,
                                    const std::vector<std::vector<T>>& span,
                                    const T& zero_tol = T(0)) {
  const int m = static_cast<int>(d.size());
  const int k = static_cast<int>(span.size());
  const T sum_tol = is_exact_v<T> ? T(0) : T(1e-12);
  Mat<T> basis(k, m);
  for (int a = 0; a < k; ++a) {
    if (static_cast<int>(span[static_cast<std::size_t>(a)].size()) != m)
      throw InvalidParams("span vector length mismatch");
    T sum(0);
    for (int p = 0; p < m; ++p) {
      basis.at(a, p) = span[static_cast<std::size_t>(a)][static_cast<std::size_t>(p)];
      sum += basis.at(a, p);
    }
    if (scalar_abs(sum) > sum_tol)
      throw SpanNotTraceFree("span vector " + std::to_string(a) +
                             " has nonzero coefficient sum " +
                             format_scalar(sum));
  }
  if (rank(basis, sum_tol) < k)
    throw SpanDependent("span vectors are linearly dependent");

  SymMatrix<T> q(k);
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      T v(0);
      for (int p = 0; p < m; ++p)
        v += basis.at(a, p) * d[static_cast<std::size_t>(p)] * basis.at(b, p);
      q.set(a, b, v);
    }
  return CoindexBound<T>{q, inertia(q, zero_tol), span};
}

}  // namespace einstab
