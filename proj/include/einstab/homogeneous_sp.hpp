#pragma once

#include <string>
#include <vector>

#include "einstab/errors.hpp"
#include "einstab/rational.hpp"
#include "einstab/submersion.hpp"

namespace einstab {

/// Parameters of the normal homogeneous family
/// Sp(mq)/(Sp(q) x ... x Sp(q)) fibered over
/// Sp(mq)/(Sp(kq) x Sp(q) x ... x Sp(q)) with fiber
/// Sp(kq)/(Sp(q) x ... x Sp(q)). All curvature data is exact rational;
/// every verdict threshold is a sharp integer inequality.
struct SpFamilyParams {
  int m = 0;
  int q = 0;
  int k = 0;

  static SpFamilyParams make(int m, int q, int k) {
    if (m < 3) throw InvalidParams("m must be >= 3");
    if (q < 1) throw InvalidParams("q must be >= 1");
    if (!(1 < k && k < m)) throw InvalidParams("k must satisfy 1 < k < m");
    return SpFamilyParams{m, q, k};
  }
};

struct SpInvariants {
  long long r = 0;  // fiber dimension 2k(k-1)q^2
  long long n = 0;  // base dimension 2(m-k)(m+k-1)q^2
  Rational fiber_scal;      // s_hat
  Rational base_scal;       // s_check
  Rational fiber_einstein;  // Einstein constant of the fiber metric
  Rational ricci_eig_mixed;  // Ricci eigenvalue on the kq-q summands
  Rational ricci_eig_small;  // Ricci eigenvalue on the q-q summands
  Rational quantity;         // r s_check - 2 n s_hat
  Rational bracket;          // simplified bracket factor
};

namespace detail {

inline Rational sp_bracket(int m, int q, int k) {
  // (1/2) (q m (m-k-3) - 2q(k-1) - 2m - 2(k-1))
  const long long inner = static_cast<long long>(q) * m * (m - k - 3) -
                          2LL * q * (k - 1) - 2LL * m - 2LL * (k - 1);
  return Rational(inner, 2);
}

inline Rational sp_prefactor(int m, int q, int k) {
  // 2 k (k-1) (m-k) q^4 / (mq + 1)
  const long long q2 = static_cast<long long>(q) * q;
  return Rational(2LL * k * (k - 1) * (m - k) * q2 * q2,
                  static_cast<long long>(m) * q + 1);
}

}  // namespace detail

/// All displayed curvature data of the family, evaluated exactly.
inline SpInvariants sp_family_invariants(const SpFamilyParams& p) {
  const long long m = p.m, q = p.q, k = p.k;
  const long long q2 = q * q;
  const Rational mq1(m * q + 1);
  const Rational kq1(k * q + 1);

  SpInvariants inv;
  inv.r = 2 * k * (k - 1) * q2;
  inv.n = 2 * (m - k) * (m + k - 1) * q2;

  // Fiber Einstein constant (1/4)(1 + (2q+1)/(kq+1)) ((kq+1)/(mq+1)).
  inv.fiber_einstein =
      Rational(1, 4) * (Rational(1) + Rational(2 * q + 1) / kq1) * (kq1 / mq1);
  // s_hat = k(k-1)q^2 (qk + 2q + 2) / (2(mq+1)).
  inv.fiber_scal =
      Rational(k * (k - 1) * q2) * Rational(q * k + 2 * q + 2) /
      (Rational(2) * mq1);

  // Base Ricci eigenvalues on the two summand types.
  inv.ricci_eig_mixed =
      Rational(1, 4) * (Rational(1) + Rational(k * q + q + 1) / mq1);
  inv.ricci_eig_small =
      Rational(1, 4) * (Rational(1) + Rational(2 * q + 1) / mq1);

  // s_check = q^2 (m-k)/(mq+1) ((m+k+1)kq + 2k + ((m-k-1)/2)(mq+2q+2)).
  inv.base_scal = Rational(q2 * (m - k)) / mq1 *
                  (Rational((m + k + 1) * k * q + 2 * k) +
                   Rational(m - k - 1, 2) * Rational(m * q + 2 * q + 2));

  inv.quantity = Rational(inv.r) * inv.base_scal -
                 Rational(2 * inv.n) * inv.fiber_scal;
  inv.bracket = detail::sp_bracket(p.m, p.q, p.k);
  return inv;
}

struct SpQuantity {
  Rational value;
  Rational bracket;
  Rational prefactor;
  Verdict verdict = Verdict::Inconclusive;
};

/// r s_check - 2 n s_hat, computed both directly and as
/// prefactor * bracket, with the two routes asserted equal.
inline SpQuantity sp_family_quantity(const SpFamilyParams& p) {
  const SpInvariants inv = sp_family_invariants(p);
  SpQuantity out;
  out.bracket = detail::sp_bracket(p.m, p.q, p.k);
  out.prefactor = detail::sp_prefactor(p.m, p.q, p.k);
  out.value = inv.quantity;
  if (out.value != out.prefactor * out.bracket)
    throw Error("direct and factored evaluations of r s_check - 2 n s_hat "
                "disagree for (m,q,k)=(" +
                std::to_string(p.m) + "," + std::to_string(p.q) + "," +
                std::to_string(p.k) + ")");
  out.verdict = out.value < 0 ? Verdict::Unstable : Verdict::Inconclusive;
  return out;
}

struct SpScanRow {
  int m = 0, q = 0, k = 0;
  Rational value;
  Rational bracket;
  Verdict verdict = Verdict::Inconclusive;
};

struct SpScanResult {
  std::vector<SpScanRow> rows;
  // (a) m-3 <= k always gives an unstable verdict.
  bool near_top_always_unstable = true;
  // (b) for k = m-4 the verdict matches 10(q+1)/(q+4) < m exactly.
  bool threshold_matches = true;
};

/// Exhaustive scan over admissible (m, q, k) with m <= m_max, q <= q_max.
inline SpScanResult sp_family_scan(int m_max, int q_max) {
  if (m_max < 3) throw InvalidParams("m_max must be >= 3");
  if (q_max < 1) throw InvalidParams("q_max must be >= 1");
  SpScanResult out;
  for (int m = 3; m <= m_max; ++m)
    for (int q = 1; q <= q_max; ++q)
      for (int k = 2; k < m; ++k) {
        const auto quant = sp_family_quantity(SpFamilyParams::make(m, q, k));
        out.rows.push_back(SpScanRow{m, q, k, quant.value, quant.bracket,
                                     quant.verdict});
        if (m - 3 <= k && quant.verdict != Verdict::Unstable)
          out.near_top_always_unstable = false;
        if (k == m - 4) {
          const bool threshold = Rational(10 * (q + 1), q + 4) < Rational(m);
          if (threshold != (quant.verdict == Verdict::Unstable))
            out.threshold_matches = false;
        }
      }
  return out;
}

/// Destabilization thresholds the construction also records for the
/// SU- and SO-based analogues (reported as data; no curvature
/// computation is performed for these families).
inline const char* su_family_threshold_note() {
  return "SU(mq)/S(U(kq) x U(q) x ... x U(q)), q >= 2, m >= 3: projection "
         "gives a destabilizing direction when m-3 <= k";
}
inline const char* so_family_threshold_note() {
  return "SO(mq)/(SO(kq) x SO(q) x ... x SO(q)), q >= 4, m >= 3: projection "
         "gives a destabilizing direction when m-2 <= k";
}

}  // namespace einstab
