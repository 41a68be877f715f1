#pragma once

#include <string>

#include "einstab/errors.hpp"
#include "einstab/rational.hpp"

namespace einstab {

enum class Verdict { Unstable, Inconclusive };

inline const char* to_cstring(Verdict v) {
  return v == Verdict::Unstable ? "Unstable" : "Inconclusive";
}

template <class T>
struct ValueVerdict {
  T value{};
  Verdict verdict = Verdict::Inconclusive;
  std::string direction;  // description of the witness TT-tensor
};

/// Scalar invariants of an Einstein Riemannian submersion with totally
/// geodesic fibers: base/fiber dimensions, Einstein constant, fiber and
/// base scalar curvatures, and the squared norm of the O'Neill A-tensor.
template <class T>
struct SubmersionInvariants {
  int n = 0;  // base dimension
  int r = 0;  // fiber dimension
  T E{};
  T fiber_scal{};  // scalar curvature of the fiber metric
  T base_scal{};   // scalar curvature of the base metric
  T a_norm_sq{};   // full-tensor-norm |A|^2

  /// Total scalar curvature s = E (n + r).
  T total_scal() const { return E * T(n + r); }
};

/// Validates the two Einstein constraint identities
///   fiber_scal + |A|^2 = E r   and   base_scal - 2|A|^2 = E n
/// and returns the record iff both residuals are within tol.
template <class T>
SubmersionInvariants<T> check_einstein_invariants(int n, int r, const T& E,
                                                  const T& fiber_scal,
                                                  const T& base_scal,
                                                  const T& a_norm_sq,
                                                  const T& tol = T(0)) {
  if (n < 1 || r < 1) throw InvalidParams("dimensions n, r must be >= 1");
  if (a_norm_sq < T(0)) throw InvalidParams("|A|^2 must be non-negative");
  if (tol < T(0)) throw InvalidParams("tol must be non-negative");

  const T res_fiber = fiber_scal + a_norm_sq - E * T(r);
  const T res_base = base_scal - T(2) * a_norm_sq - E * T(n);
  if (scalar_abs(res_fiber) > tol)
    throw ConstraintViolation(
        "fiber constraint fiber_scal + |A|^2 = E r violated, residual " +
        format_scalar(res_fiber));
  if (scalar_abs(res_base) > tol)
    throw ConstraintViolation(
        "base constraint base_scal - 2|A|^2 = E n violated, residual " +
        format_scalar(res_base));
  return SubmersionInvariants<T>{n, r, E, fiber_scal, base_scal, a_norm_sq};
}

/// The per-unit-volume second-variation value along the TT-tensor
/// g - ((n+r)/n) pi* g_base:
///   (2(n+r)/n^2) (r * base_scal - 2 n * fiber_scal).
/// Negative value certifies linear instability.
template <class T>
ValueVerdict<T> submersion_instability(const SubmersionInvariants<T>& inv) {
  const T core = T(inv.r) * inv.base_scal - T(2 * inv.n) * inv.fiber_scal;
  const T value = ratio<T>(2 * (inv.n + inv.r),
                           static_cast<long long>(inv.n) * inv.n) *
                  core;
  ValueVerdict<T> out;
  out.value = value;
  out.verdict = value < T(0) ? Verdict::Unstable : Verdict::Inconclusive;
  out.direction = "g - ((n+r)/n) pi*(g_base)";
  return out;
}

/// Canonical-variation criterion for Einstein fiber (constant E_fiber)
/// and Einstein base (constant E_base):
///   r * base_scal - 2 n * fiber_scal = r n (E_base - 2 E_fiber),
/// so E_base < 2 E_fiber certifies instability.
template <class T>
ValueVerdict<T> canonical_variation_value(int n, int r, const T& E_fiber,
                                          const T& E_base) {
  if (n < 1 || r < 1) throw InvalidParams("dimensions n, r must be >= 1");
  ValueVerdict<T> out;
  out.value = T(r) * T(n) * (E_base - T(2) * E_fiber);
  out.verdict =
      E_base < T(2) * E_fiber ? Verdict::Unstable : Verdict::Inconclusive;
  out.direction = "g - ((n+r)/n) pi*(g_base)";
  return out;
}

}  // namespace einstab
