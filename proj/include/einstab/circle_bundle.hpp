#pragma once

#include <string>
#include <vector>

#include "einstab/errors.hpp"
#include "einstab/matrix.hpp"
#include "einstab/rational.hpp"
#include "einstab/submersion.hpp"

namespace einstab {

/// Pointwise data on the base of a circle bundle: the curvature 2-form
/// omega (skew) and a symmetric 2-tensor hcheck, both as n x n matrices
/// in an orthonormal frame. Norms are full tensor norms:
/// |omega|^2 = sum_{ij} omega_ij^2.
template <class T>
struct PointwiseTensorPair {
  int n = 0;
  Mat<T> omega;
  Mat<T> hcheck;

  static PointwiseTensorPair make(Mat<T> omega, Mat<T> hcheck) {
    const int n = omega.rows();
    if (n < 2) throw InvalidParams("base dimension must be >= 2");
    if (omega.cols() != n || hcheck.rows() != n || hcheck.cols() != n)
      throw InvalidParams("omega and hcheck must be n x n");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!(omega.at(i, j) == -omega.at(j, i)))
          throw InvalidParams("omega must be skew-symmetric");
        if (!(hcheck.at(i, j) == hcheck.at(j, i)))
          throw InvalidParams("hcheck must be symmetric");
      }
    return PointwiseTensorPair{n, std::move(omega), std::move(hcheck)};
  }

  T omega_norm_sq() const {
    T s(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += omega.at(i, j) * omega.at(i, j);
    return s;
  }
};

/// Paired eigenvalue data b_i of hcheck = omega omega^T in the frame
/// block-diagonalizing omega: hcheck = diag(b_1, b_1, ..., b_m, b_m[, 0])
/// with m = floor(n/2).
template <class T>
struct OmegaSpectrum {
  int n = 0;
  std::vector<T> b;

  static OmegaSpectrum make(int n, std::vector<T> b) {
    if (n < 2) throw InvalidParams("base dimension must be >= 2");
    if (static_cast<int>(b.size()) != n / 2)
      throw InvalidParams("spectrum must have floor(n/2) entries");
    for (const T& bi : b)
      if (bi < T(0)) throw InvalidParams("spectrum entries must be >= 0");
    return OmegaSpectrum{n, std::move(b)};
  }

  T omega_norm_sq() const {
    T s(0);
    for (const T& bi : b) s += bi;
    return T(2) * s;
  }
  T h_norm_sq() const {
    T s(0);
    for (const T& bi : b) s += bi * bi;
    return T(2) * s;
  }
  T tr_h_cubed() const {
    T s(0);
    for (const T& bi : b) s += bi * bi * bi;
    return T(2) * s;
  }
};

template <class T>
struct CircleEinsteinData {
  int n = 0;
  T E{};
  OmegaSpectrum<T> spectrum;
  T base_scal{};  // (n/4 + 1/2) |omega|^2
};

/// Validates the Einstein normalization |omega|^2 = 4E within tol and
/// derives the base scalar curvature.
template <class T>
CircleEinsteinData<T> circle_einstein_check(int n, const T& E,
                                            const OmegaSpectrum<T>& spectrum,
                                            const T& tol = T(0)) {
  if (spectrum.n != n) throw InvalidParams("spectrum dimension mismatch");
  if (!(E > T(0))) throw InvalidParams("Einstein constant must be positive");
  const T om2 = spectrum.omega_norm_sq();
  const T res = om2 - T(4) * E;
  if (scalar_abs(res) > tol)
    throw ConstraintViolation("normalization |omega|^2 = 4E violated (|omega|^2 = " +
                              format_scalar(om2) + ", 4E = " +
                              format_scalar(T(4) * E) + ")");
  CircleEinsteinData<T> out{n, E, spectrum, T(0)};
  out.base_scal = (ratio<T>(n, 4) + ratio<T>(1, 2)) * om2;
  return out;
}

template <class T>
struct PullbackCorrections {
  SymMatrix<T> laplacian;  // correction to the rough Laplacian
  SymMatrix<T> curvature;  // correction to the curvature action
};

namespace detail {

template <class T>
void assert_routes_agree(const Mat<T>& sums, const Mat<T>& products,
                         const char* what) {
  const T tol = is_exact_v<T> ? T(0) : T(1e-12);
  for (int i = 0; i < sums.rows(); ++i)
    for (int j = 0; j < sums.cols(); ++j)
      if (scalar_abs(sums.at(i, j) - products.at(i, j)) > tol)
        throw Error(std::string(what) +
                    ": index-sum and matrix-product routes disagree");
}

}  // namespace detail

/// Corrections picked up by the rough Laplacian and the curvature
/// action when a symmetric 2-tensor is pulled back from the base:
///   lap_ij  = sum_kl ( 1/2 w_ki w_kl h_lj + 1/2 w_kj w_kl h_li
///                      - 1/2 w_ik w_jl h_kl )
///   curv_ij = sum_kl ( -1/2 w_ik w_jl h_kl + 1/4 w_kj w_il h_kl ).
/// Both are evaluated by the literal index sums and by the closed
/// matrix products, and the two routes are asserted to agree.
template <class T>
PullbackCorrections<T> pullback_corrections(const PointwiseTensorPair<T>& p) {
  const int n = p.n;
  const Mat<T>& w = p.omega;
  const Mat<T>& h = p.hcheck;

  Mat<T> lap_sum(n, n), curv_sum(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T lap(0), curv(0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          lap += ratio<T>(1, 2) * w.at(k, i) * w.at(k, l) * h.at(l, j);
          lap += ratio<T>(1, 2) * w.at(k, j) * w.at(k, l) * h.at(l, i);
          lap -= ratio<T>(1, 2) * w.at(i, k) * w.at(j, l) * h.at(k, l);
          curv -= ratio<T>(1, 2) * w.at(i, k) * w.at(j, l) * h.at(k, l);
          curv += ratio<T>(1, 4) * w.at(k, j) * w.at(i, l) * h.at(k, l);
        }
      lap_sum.at(i, j) = lap;
      curv_sum.at(i, j) = curv;
    }

  const Mat<T> wt = transpose(w);
  const Mat<T> wtw = wt * w;
  const Mat<T> whwt = w * h * wt;
  const Mat<T> whw = w * h * w;
  const T half = ratio<T>(1, 2);
  const T quarter = ratio<T>(1, 4);
  const Mat<T> lap_prod = half * (wtw * h) + half * (h * wtw) - half * whwt;
  const Mat<T> curv_prod = (T(0) - half) * whwt + quarter * whw;

  detail::assert_routes_agree(lap_sum, lap_prod, "laplacian correction");
  detail::assert_routes_agree(curv_sum, curv_prod, "curvature correction");

  return PullbackCorrections<T>{SymMatrix<T>::from_mat(lap_prod),
                                SymMatrix<T>::from_mat(curv_prod)};
}

/// Total correction of the stability form under pullback:
///   sum_ijkl ( w_ki w_kl h_lj h_ij + w_ik w_jl h_kl h_ij ),
/// equal to tr(w^T w h^2) + tr(w h w^T h). Index-sum and trace routes
/// are asserted to agree.
template <class T>
T stability_form_correction(const PointwiseTensorPair<T>& p) {
  const int n = p.n;
  const Mat<T>& w = p.omega;
  const Mat<T>& h = p.hcheck;

  T sum(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          sum += w.at(k, i) * w.at(k, l) * h.at(l, j) * h.at(i, j);
          sum += w.at(i, k) * w.at(j, l) * h.at(k, l) * h.at(i, j);
        }

  const Mat<T> wt = transpose(w);
  const T traced = trace(wt * w * h * h) + trace(w * h * wt * h);

  const T tol = is_exact_v<T> ? T(0) : T(1e-12);
  if (scalar_abs(sum - traced) > tol)
    throw Error("stability form correction: index-sum and trace routes "
                "disagree");
  return traced;
}

/// Second-variation value along the pullback of
/// hcheck - (|omega|^2/n) g_check for hcheck built from the curvature
/// form (hcheck = 2 Ric - 2E g):
///   2 D1 - D2 + tr h^3 - 1/2 |w|^2 |h|^2 - (2/n) |w|^2 |h|^2
///   + |w|^6/(2n) + |w|^6/n^2,
/// where D1 = <delta^nabla d^nabla h, h> and D2 = <nabla*nabla h, h> are
/// caller-supplied derivative scalars (0 for the harmonic-curvature
/// algebraic part).
template <class T>
T ricci_deviation_direction_value(const OmegaSpectrum<T>& spectrum, const T& D1,
                                  const T& D2) {
  const int n = spectrum.n;
  const T om2 = spectrum.omega_norm_sq();
  const T h2 = spectrum.h_norm_sq();
  const T om6 = om2 * om2 * om2;
  return T(2) * D1 - D2 + spectrum.tr_h_cubed() - ratio<T>(1, 2) * om2 * h2 -
         ratio<T>(2, n) * om2 * h2 + om6 / ratio<T>(2 * n, 1) +
         om6 / ratio<T>(static_cast<long long>(n) * n, 1);
}

/// Same value from an explicit curvature form, with hcheck := w w^T.
template <class T>
T ricci_deviation_direction_value(const Mat<T>& omega, const T& D1,
                                  const T& D2) {
  const int n = omega.rows();
  const Mat<T> h = omega * transpose(omega);
  T om2(0), h2(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      om2 += omega.at(i, j) * omega.at(i, j);
      h2 += h.at(i, j) * h.at(i, j);
    }
  const T trh3 = trace(h * h * h);
  const T om6 = om2 * om2 * om2;
  return T(2) * D1 - D2 + trh3 - ratio<T>(1, 2) * om2 * h2 -
         ratio<T>(2, n) * om2 * h2 + om6 / ratio<T>(2 * n, 1) +
         om6 / ratio<T>(static_cast<long long>(n) * n, 1);
}

template <class T>
struct SimplexCubic {
  T value{};
  /// Residual of the parity-specific factorization identity; zero for
  /// every point on the simplex.
  T factorization_residual{};
};

/// The normalized cubic controlling the sign of the algebraic part:
///   f(t) = sum t_i^3 - (1 + 4/n) sum t_i^2 + 2/n + 4/n^2
/// on the simplex sum t_i = 1, t_i >= 0, with m = floor(n/2) variables.
/// For n = 2m it factors as sum (t_i - 1/m)^2 (t_i - 1); for n = 2m+1 as
/// sum (t_i - 2/(2m+1))^2 (t_i - 1) - (2+4m)/(2m+1)^3.
template <class T>
SimplexCubic<T> simplex_cubic_value(const std::vector<T>& t, int n,
                                    const T& tol = T(0)) {
  const int m = n / 2;
  if (n < 2) throw InvalidParams("base dimension must be >= 2");
  if (static_cast<int>(t.size()) != m)
    throw NotOnSimplex("expected floor(n/2) simplex coordinates");
  T sum(0);
  for (const T& ti : t) {
    if (ti < T(0)) throw NotOnSimplex("simplex coordinates must be >= 0");
    sum += ti;
  }
  if (scalar_abs(sum - T(1)) > tol)
    throw NotOnSimplex("simplex coordinates must sum to 1 (sum = " +
                       format_scalar(sum) + ")");

  T s2(0), s3(0);
  for (const T& ti : t) {
    s2 += ti * ti;
    s3 += ti * ti * ti;
  }
  SimplexCubic<T> out;
  out.value = s3 - (T(1) + ratio<T>(4, n)) * s2 + ratio<T>(2, n) +
              ratio<T>(4, static_cast<long long>(n) * n);

  T factored(0);
  if (n % 2 == 0) {
    const T c = ratio<T>(1, m);
    for (const T& ti : t) factored += (ti - c) * (ti - c) * (ti - T(1));
  } else {
    const T c = ratio<T>(2, 2 * m + 1);
    for (const T& ti : t) factored += (ti - c) * (ti - c) * (ti - T(1));
    factored -= ratio<T>(2 + 4 * static_cast<long long>(m),
                         static_cast<long long>(2 * m + 1) * (2 * m + 1) *
                             (2 * m + 1));
  }
  out.factorization_residual = out.value - factored;
  return out;
}

struct SimplexScanResult {
  Rational max_value;
  std::vector<Rational> argmax;
  bool max_nonpositive = true;
  bool equality_only_at_barycenter = true;  // meaningful for even n
  Verdict verdict = Verdict::Inconclusive;
};

/// Exhaustive exact maximum of the cubic over the grid with spacing
/// 1/grid_steps on the simplex. The maximum is non-positive; for even n
/// it vanishes only at the barycenter, for odd n it is strictly
/// negative.
inline SimplexScanResult simplex_scan(int n, int grid_steps) {
  if (grid_steps < 1) throw InvalidParams("grid_steps must be >= 1");
  const int m = n / 2;
  if (n < 2) throw InvalidParams("base dimension must be >= 2");

  SimplexScanResult out;
  bool first = true;
  int max_count = 0;
  std::vector<Rational> bary(static_cast<std::size_t>(m), Rational(1, m));

  std::vector<int> comp(static_cast<std::size_t>(m), 0);
  // Enumerate compositions of grid_steps into m parts.
  const auto eval = [&](const std::vector<int>& parts) {
    std::vector<Rational> t;
    t.reserve(parts.size());
    for (int pi : parts) t.emplace_back(pi, grid_steps);
    const Rational v = simplex_cubic_value<Rational>(t, n).value;
    if (first || v > out.max_value) {
      out.max_value = v;
      out.argmax = t;
      max_count = 1;
      first = false;
    } else if (v == out.max_value) {
      ++max_count;
    }
  };
  const auto recurse = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == m - 1) {
      comp[static_cast<std::size_t>(idx)] = remaining;
      eval(comp);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      comp[static_cast<std::size_t>(idx)] = v;
      self(self, idx + 1, remaining - v);
    }
  };
  recurse(recurse, 0, grid_steps);

  out.max_nonpositive = out.max_value <= 0;
  if (n % 2 == 0) {
    out.equality_only_at_barycenter =
        out.max_value < 0 || (max_count == 1 && out.argmax == bary);
  } else {
    out.equality_only_at_barycenter = out.max_value < 0;
  }
  if (!out.max_nonpositive)
    throw Error("simplex maximum is positive; this contradicts the "
                "factorization identities");
  out.verdict =
      out.max_value < 0 ? Verdict::Unstable : Verdict::Inconclusive;
  return out;
}

template <class T>
struct KahlerBound {
  T value{};
  T bound{};
  Verdict verdict = Verdict::Inconclusive;
  std::string witness;
};

/// Value of the form along the J'-composed harmonic (1,1)-direction on
/// a Kaehler-Einstein base:
///   value = -((n+2)/(2n)) |w|^2 |h|^2 + (|w|^2/n)(|h|^2 + <h(J'., J'.), h>)
/// bounded above by -(1/2 - 1/n) |w|^2 |h|^2, with equality exactly for
/// J-invariant h. Unstable for n >= 4.
template <class T>
KahlerBound<T> kahler_direction_bound(int n, const T& omega_norm_sq,
                                      const T& h_norm_sq,
                                      const T& hJ_pairing) {
  if (n < 2) throw InvalidParams("base dimension must be >= 2");
  if (!(omega_norm_sq > T(0)))
    throw InvalidParams("|omega|^2 must be positive");
  if (h_norm_sq < T(0)) throw InvalidParams("|h|^2 must be non-negative");
  if (scalar_abs(hJ_pairing) > h_norm_sq)
    throw PairingOutOfRange(
        "|<h(J'., J'.), h>| <= |h|^2 violated (pairing " +
        format_scalar(hJ_pairing) + ", |h|^2 " + format_scalar(h_norm_sq) +
        ")");

  KahlerBound<T> out;
  out.value = -ratio<T>(n + 2, 2 * static_cast<long long>(n)) * omega_norm_sq *
                  h_norm_sq +
              omega_norm_sq / T(n) * (h_norm_sq + hJ_pairing);
  out.bound = -(ratio<T>(1, 2) - ratio<T>(1, n)) * omega_norm_sq * h_norm_sq;
  if (out.value > out.bound)
    throw Error("value exceeds its Cauchy-Schwarz bound; pairing input is "
                "inconsistent");
  out.verdict = (n >= 4 && out.value < T(0)) ? Verdict::Unstable
                                             : Verdict::Inconclusive;
  out.witness = "pi* h with h(X,Y) = eta(J'X, Y), eta a harmonic (1,1)-form "
                "orthogonal to the Kaehler form";
  return out;
}

}  // namespace einstab
