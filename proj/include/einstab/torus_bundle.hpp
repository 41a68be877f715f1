#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "einstab/errors.hpp"
#include "einstab/matrix.hpp"
#include "einstab/newton.hpp"
#include "einstab/rational.hpp"
#include "einstab/rng.hpp"
#include "einstab/submersion.hpp"

namespace einstab {

/// Topology data of a principal T^r bundle over a product of m Fano
/// Kaehler-Einstein factors: real dimensions n_i, Fano constants q_i
/// (Ric_{g_i} = q_i g_i), and the r x m integer matrix b of classifying
/// classes. Every column of b must be nonzero and b must have rank r.
template <class T>
struct TorusTopology {
  int m = 0;
  int r = 0;
  std::vector<int> n;
  std::vector<T> q;
  Mat<int> b;

  static TorusTopology make(std::vector<int> n, std::vector<T> q, Mat<int> b) {
    TorusTopology t;
    t.m = static_cast<int>(n.size());
    t.r = b.rows();
    t.n = std::move(n);
    t.q = std::move(q);
    t.b = std::move(b);
    if (t.m < 1) throw InvalidParams("need at least one base factor");
    if (t.r < 1 || t.r > t.m)
      throw InvalidParams("torus rank must satisfy 1 <= r <= m");
    if (t.b.cols() != t.m)
      throw InvalidParams("classifying matrix must have one column per factor");
    if (static_cast<int>(t.q.size()) != t.m)
      throw InvalidParams("one Fano constant per factor required");
    for (int d : t.n)
      if (d < 2 || d % 2 != 0)
        throw InvalidParams("factor dimensions must be even and >= 2");
    for (const T& qi : t.q)
      if (!(qi > T(0))) throw InvalidParams("Fano constants must be positive");
    for (int j = 0; j < t.m; ++j) {
      bool nonzero = false;
      for (int a = 0; a < t.r; ++a) nonzero = nonzero || t.b.at(a, j) != 0;
      if (!nonzero)
        throw InvalidParams("columns of b must be nonzero (column " +
                            std::to_string(j + 1) + " vanishes)");
    }
    if (rank(mat_cast<Rational>(t.b)) != t.r)
      throw InvalidParams("classifying matrix b must have full rank r");
    return t;
  }
};

/// Full bundle configuration: topology plus the metric data, i.e. the
/// factor scalings x_i (g_check_i = x_i g_i) and the positive-definite
/// fiber metric ghat on the torus.
template <class T>
struct TorusBundleConfig {
  TorusTopology<T> topology;
  std::vector<T> x;
  SymMatrix<T> ghat;

  int m() const { return topology.m; }
  int r() const { return topology.r; }

  static TorusBundleConfig make(TorusTopology<T> topology, std::vector<T> x,
                                SymMatrix<T> ghat) {
    TorusBundleConfig c{std::move(topology), std::move(x), std::move(ghat)};
    if (static_cast<int>(c.x.size()) != c.m())
      throw InvalidParams("one scaling per factor required");
    for (const T& xi : c.x)
      if (!(xi > T(0))) throw InvalidParams("scalings x_i must be positive");
    if (c.ghat.dim() != c.r())
      throw InvalidParams("fiber metric dimension must equal torus rank");
    T tol(0);
    if constexpr (!is_exact_v<T>) tol = default_zero_tol(c.ghat);
    const Inertia in = inertia(c.ghat, tol);
    if (in.n_pos != c.r())
      throw InvalidParams("fiber metric ghat must be positive definite");
    return c;
  }
};

/// Gram matrix of the columns of b in the fiber metric:
///   C_jk = sum_{a,b} b_{aj} ghat_{ab} b_{bk}.
template <class T>
SymMatrix<T> column_gram(const TorusBundleConfig<T>& cfg) {
  const int m = cfg.m(), r = cfg.r();
  SymMatrix<T> c(m);
  for (int j = 0; j < m; ++j)
    for (int k = j; k < m; ++k) {
      T v(0);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
          v += T(cfg.topology.b.at(a, j)) * cfg.ghat.at(a, b) *
               T(cfg.topology.b.at(b, k));
      c.set(j, k, v);
    }
  return c;
}

/// |A^(i)|^2 = n_i C_ii / (4 x_i^2) for the i-th factor (zero-based).
template <class T>
T a_norm_sq(const TorusBundleConfig<T>& cfg, const SymMatrix<T>& gram, int i) {
  if (i < 0 || i >= cfg.m()) throw IndexOutOfRange("factor index out of range");
  const T xi = cfg.x[static_cast<std::size_t>(i)];
  return T(cfg.topology.n[static_cast<std::size_t>(i)]) * gram.at(i, i) /
         (T(4) * xi * xi);
}

/// Residuals of the Einstein system for the bundle ansatz. E is fixed
/// by the vertical trace: E = (1/4r) sum_j n_j C_jj / x_j^2. The
/// horizontal equations read q_i/x_i = E + C_ii/(2 x_i^2); the vertical
/// equation for a Ricci-flat torus fiber is (1/4) b D b^T = E ghat^{-1}
/// with D = diag(n_i / x_i^2).
template <class T>
struct EinsteinResidual {
  std::vector<T> horizontal;
  SymMatrix<T> vertical;
  T E{};

  T inf_norm() const {
    T best(0);
    for (const T& h : horizontal) best = std::max(best, scalar_abs(h));
    return std::max(best, vertical.max_abs());
  }
};

namespace detail {

template <class T>
SymMatrix<T> vertical_curvature_term(const TorusBundleConfig<T>& cfg) {
  const int m = cfg.m(), r = cfg.r();
  SymMatrix<T> v(r);
  for (int a = 0; a < r; ++a)
    for (int c = a; c < r; ++c) {
      T s(0);
      for (int i = 0; i < m; ++i) {
        const T xi = cfg.x[static_cast<std::size_t>(i)];
        s += T(cfg.topology.b.at(a, i)) * T(cfg.topology.b.at(c, i)) *
             T(cfg.topology.n[static_cast<std::size_t>(i)]) / (xi * xi);
      }
      v.set(a, c, s / T(4));
    }
  return v;
}

template <class T>
EinsteinResidual<T> einstein_residual_with_E(const TorusBundleConfig<T>& cfg,
                                             const T& E) {
  const int m = cfg.m(), r = cfg.r();
  const SymMatrix<T> gram = column_gram(cfg);
  EinsteinResidual<T> out;
  out.E = E;
  out.horizontal.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const T xi = cfg.x[static_cast<std::size_t>(i)];
    out.horizontal[static_cast<std::size_t>(i)] =
        cfg.topology.q[static_cast<std::size_t>(i)] / xi -
        gram.at(i, i) / (T(2) * xi * xi) - E;
  }
  const SymMatrix<T> curv = vertical_curvature_term(cfg);
  const Mat<T> ghat_inv = inverse(cfg.ghat.mat());
  SymMatrix<T> vert(r);
  for (int a = 0; a < r; ++a)
    for (int c = a; c < r; ++c) {
      if constexpr (is_exact_v<T>) {
        vert.set(a, c, curv.at(a, c) - E * ghat_inv.at(a, c));
      } else {
        // Exact inverses of symmetric matrices are symmetric; float
        // round-off is symmetrized here.
        vert.set(a, c,
                 curv.at(a, c) -
                     E * (ghat_inv.at(a, c) + ghat_inv.at(c, a)) / 2);
      }
    }
  out.vertical = vert;
  return out;
}

}  // namespace detail

template <class T>
EinsteinResidual<T> einstein_system_residual(const TorusBundleConfig<T>& cfg) {
  const SymMatrix<T> gram = column_gram(cfg);
  T e(0);
  for (int j = 0; j < cfg.m(); ++j) {
    const T xj = cfg.x[static_cast<std::size_t>(j)];
    e += gram.at(j, j) * T(cfg.topology.n[static_cast<std::size_t>(j)]) /
         (xj * xj);
  }
  e = e / T(4 * cfg.r());
  return detail::einstein_residual_with_E(cfg, e);
}

/// Builds the unique Einstein configuration with the given scalings and
/// Einstein constant: ghat from the vertical equation, Fano constants
/// from the horizontal one. Residuals vanish identically (exactly so
/// for rational inputs), which makes this the reference generator for
/// solved configurations.
template <class T>
TorusBundleConfig<T> einstein_config_from_scalings(std::vector<int> n,
                                                   Mat<int> b,
                                                   const std::vector<T>& x,
                                                   const T& E) {
  const int m = static_cast<int>(n.size());
  const int r = b.rows();
  if (static_cast<int>(x.size()) != m)
    throw InvalidParams("one scaling per factor required");
  if (!(E > T(0))) throw InvalidParams("Einstein constant must be positive");
  // (1/4) b D b^T with D = diag(n_i / x_i^2)
  SymMatrix<T> curv(r);
  for (int a = 0; a < r; ++a)
    for (int c = a; c < r; ++c) {
      T s(0);
      for (int i = 0; i < m; ++i)
        s += T(b.at(a, i)) * T(b.at(c, i)) *
             T(n[static_cast<std::size_t>(i)]) /
             (x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)]);
      curv.set(a, c, s / T(4));
    }
  SymMatrix<T> ghat = SymMatrix<T>::from_mat(E * inverse(curv.mat()));
  if constexpr (!is_exact_v<T>) {
    Mat<T> sym(r, r);
    for (int a = 0; a < r; ++a)
      for (int c = 0; c < r; ++c)
        sym.at(a, c) = (ghat.mat().at(a, c) + ghat.mat().at(c, a)) / 2;
    ghat = SymMatrix<T>::from_mat(sym);
  }

  std::vector<T> q(static_cast<std::size_t>(m));
  // Gram diagonal in the derived fiber metric.
  for (int i = 0; i < m; ++i) {
    T cii(0);
    for (int a = 0; a < r; ++a)
      for (int c = 0; c < r; ++c)
        cii += T(b.at(a, i)) * ghat.at(a, c) * T(b.at(c, i));
    q[static_cast<std::size_t>(i)] =
        E * x[static_cast<std::size_t>(i)] +
        cii / (T(2) * x[static_cast<std::size_t>(i)]);
  }
  auto topo = TorusTopology<T>::make(std::move(n), std::move(q), std::move(b));
  return TorusBundleConfig<T>::make(std::move(topo), x, std::move(ghat));
}

struct TorusSolveOptions {
  double gauge_E = 1.0;
  int starts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int max_iter = 200;
  double dedup_tol = 1e-6;
};

struct TorusEinsteinSolution {
  TorusBundleConfig<double> config;
  double E = 0.0;
  double residual_norm = 0.0;
};

struct TorusSolveResult {
  std::vector<TorusEinsteinSolution> solutions;
  double best_residual = 0.0;
};

namespace detail {

/// Unknown vector layout: log x_i (m entries), then the lower triangle
/// of the Cholesky factor of ghat row by row, diagonal entries stored
/// as logarithms. Keeps x positive and ghat positive definite.
struct TorusParametrization {
  int m = 0;
  int r = 0;

  int size() const { return m + r * (r + 1) / 2; }

  std::pair<std::vector<double>, SymMatrix<double>> unpack(
      const VecD& u) const {
    std::vector<double> x(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      x[static_cast<std::size_t>(i)] = std::exp(u[static_cast<std::size_t>(i)]);
    Mat<double> l(r, r);
    int pos = m;
    for (int a = 0; a < r; ++a)
      for (int bcol = 0; bcol <= a; ++bcol, ++pos)
        l.at(a, bcol) = (a == bcol)
                            ? std::exp(u[static_cast<std::size_t>(pos)])
                            : u[static_cast<std::size_t>(pos)];
    const Mat<double> g = l * transpose(l);
    SymMatrix<double> ghat(r);
    for (int a = 0; a < r; ++a)
      for (int c = a; c < r; ++c) ghat.set(a, c, (g.at(a, c) + g.at(c, a)) / 2);
    return {std::move(x), std::move(ghat)};
  }

  VecD pack(const std::vector<double>& x, const SymMatrix<double>& ghat) const {
    VecD u(static_cast<std::size_t>(size()));
    for (int i = 0; i < m; ++i)
      u[static_cast<std::size_t>(i)] = std::log(x[static_cast<std::size_t>(i)]);
    Eigen::MatrixXd g(r, r);
    for (int a = 0; a < r; ++a)
      for (int c = 0; c < r; ++c) g(a, c) = ghat.at(a, c);
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
      throw InvalidParams("start fiber metric is not positive definite");
    const Eigen::MatrixXd l = llt.matrixL();
    int pos = m;
    for (int a = 0; a < r; ++a)
      for (int bcol = 0; bcol <= a; ++bcol, ++pos)
        u[static_cast<std::size_t>(pos)] =
            (a == bcol) ? std::log(l(a, a)) : l(a, bcol);
    return u;
  }
};

}  // namespace detail

/// Multi-start damped Newton solve of the Einstein system with the
/// Einstein constant prescribed (gauge). All distinct solutions found
/// are reported, ordered by residual then lexicographically.
inline TorusSolveResult solve_einstein(const TorusTopology<double>& topo,
                                       const TorusSolveOptions& opt = {}) {
  if (!(opt.gauge_E > 0)) throw InvalidParams("gauge Einstein constant must be positive");
  if (opt.starts < 1) throw InvalidParams("need at least one start");
  const detail::TorusParametrization par{topo.m, topo.r};

  const auto residual_fn = [&](const VecD& u) -> VecD {
    auto [x, ghat] = par.unpack(u);
    auto cfg = TorusBundleConfig<double>{topo, std::move(x), std::move(ghat)};
    const auto res = detail::einstein_residual_with_E(cfg, opt.gauge_E);
    VecD v;
    v.reserve(static_cast<std::size_t>(par.size()));
    for (double h : res.horizontal) v.push_back(h);
    for (int a = 0; a < topo.r; ++a)
      for (int c = a; c < topo.r; ++c) v.push_back(res.vertical.at(a, c));
    return v;
  };

  // Closed-form fiber metric solving the vertical equation for given x;
  // used to build good starts.
  const auto ghat_for = [&](const std::vector<double>& x) -> SymMatrix<double> {
    SymMatrix<double> curv(topo.r);
    for (int a = 0; a < topo.r; ++a)
      for (int c = a; c < topo.r; ++c) {
        double s = 0;
        for (int i = 0; i < topo.m; ++i)
          s += topo.b.at(a, i) * topo.b.at(c, i) *
               topo.n[static_cast<std::size_t>(i)] /
               (x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)]);
        curv.set(a, c, s / 4.0);
      }
    const Mat<double> inv = inverse(curv.mat());
    SymMatrix<double> ghat(topo.r);
    for (int a = 0; a < topo.r; ++a)
      for (int c = a; c < topo.r; ++c)
        ghat.set(a, c, opt.gauge_E * (inv.at(a, c) + inv.at(c, a)) / 2);
    return ghat;
  };

  Rng rng(opt.seed);
  NewtonOptions nopt;
  nopt.tol = opt.tol;
  nopt.max_iter = opt.max_iter;

  std::vector<TorusEinsteinSolution> found;
  double best_residual = std::numeric_limits<double>::infinity();

  for (int s = 0; s < opt.starts; ++s) {
    std::vector<double> x0(static_cast<std::size_t>(topo.m));
    for (int i = 0; i < topo.m; ++i) {
      double xi = topo.q[static_cast<std::size_t>(i)] / opt.gauge_E;
      if (s > 0) xi *= std::exp(rng.uniform(-0.7, 0.7));
      x0[static_cast<std::size_t>(i)] = xi;
    }
    VecD u0;
    try {
      u0 = par.pack(x0, ghat_for(x0));
    } catch (const Error&) {
      continue;
    }
    try {
      const VecD u = newton_solve(residual_fn, u0, nopt);
      auto [x, ghat] = par.unpack(u);
      auto cfg = TorusBundleConfig<double>::make(topo, std::move(x), std::move(ghat));
      const double res_norm = einstein_system_residual(cfg).inf_norm();
      best_residual = std::min(best_residual, res_norm);
      if (res_norm > opt.tol) continue;
      bool duplicate = false;
      for (const auto& sol : found) {
        double dist = 0;
        for (int i = 0; i < topo.m; ++i)
          dist = std::max(dist, std::abs(sol.config.x[static_cast<std::size_t>(i)] -
                                         cfg.x[static_cast<std::size_t>(i)]));
        for (int a = 0; a < topo.r; ++a)
          for (int c = a; c < topo.r; ++c)
            dist = std::max(dist,
                            std::abs(sol.config.ghat.at(a, c) - cfg.ghat.at(a, c)));
        if (dist < opt.dedup_tol) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate)
        found.push_back(TorusEinsteinSolution{std::move(cfg), opt.gauge_E, res_norm});
    } catch (const MaxIterationsExceeded& e) {
      best_residual = std::min(best_residual, e.residual_norm);
      continue;
    } catch (const Error&) {
      // Singular Jacobian or a numerically degenerate fiber metric at
      // some iterate; try the next start.
      continue;
    }
  }

  if (found.empty())
    throw NoSolutionFound(
        "no Einstein solution found from " + std::to_string(opt.starts) +
            " starts (best residual " + format_double(best_residual) + ")",
        best_residual);

  std::sort(found.begin(), found.end(),
            [](const TorusEinsteinSolution& a, const TorusEinsteinSolution& b) {
              if (a.residual_norm != b.residual_norm)
                return a.residual_norm < b.residual_norm;
              if (a.config.x != b.config.x) return a.config.x < b.config.x;
              for (int i = 0; i < a.config.ghat.dim(); ++i)
                for (int j = i; j < a.config.ghat.dim(); ++j)
                  if (a.config.ghat.at(i, j) != b.config.ghat.at(i, j))
                    return a.config.ghat.at(i, j) < b.config.ghat.at(i, j);
              return false;
            });
  return TorusSolveResult{std::move(found), best_residual};
}

/// Default tolerance on Einstein residuals gating the stability
/// analysis of a configuration (exact mode requires exact residuals).
template <class T>
T default_einstein_tol() {
  if constexpr (is_exact_v<T>)
    return T(0);
  else
    return T(1e-8);
}

namespace detail {

/// Per-telescoping-term coefficients (C_ii/x_i^2 - 2E)/n_i of the
/// difference form, in the configuration's factor order.
template <class T>
std::vector<T> difference_form_coefficients(const TorusBundleConfig<T>& cfg,
                                            const SymMatrix<T>& gram,
                                            const T& E) {
  std::vector<T> coef(static_cast<std::size_t>(cfg.m()));
  for (int i = 0; i < cfg.m(); ++i) {
    const T xi = cfg.x[static_cast<std::size_t>(i)];
    coef[static_cast<std::size_t>(i)] =
        (gram.at(i, i) / (xi * xi) - T(2) * E) /
        T(cfg.topology.n[static_cast<std::size_t>(i)]);
  }
  return coef;
}

template <class T>
T telescoped_form_value(const std::vector<T>& coef, const std::vector<T>& mu) {
  // Value sum_i (mu_i - mu_{i-1})^2 coef_i with mu_0 = mu_{k+1} = 0,
  // i running over the first mu.size()+1 factors.
  T value(0);
  T prev(0);
  for (std::size_t i = 0; i <= mu.size(); ++i) {
    const T cur = i < mu.size() ? mu[i] : T(0);
    const T d = cur - prev;
    value += d * d * coef[i];
    prev = cur;
  }
  return value;
}

}  // namespace detail

/// Pointwise value of <grad h, grad h> - 2 <Rc h, h> for the combination
/// h = sum_i mu_i pi*(g_i/n_i - g_{i+1}/n_{i+1}) on an Einstein
/// configuration; mu has m - r entries.
template <class T>
T difference_form_value(const TorusBundleConfig<T>& cfg,
                        const std::vector<T>& mu,
                        const T& einstein_tol = default_einstein_tol<T>()) {
  if (static_cast<int>(mu.size()) != cfg.m() - cfg.r())
    throw InvalidParams("mu must have m - r entries");
  const auto res = einstein_system_residual(cfg);
  if (res.inf_norm() > einstein_tol)
    throw NotEinstein("configuration is not Einstein (residual " +
                      format_scalar(res.inf_norm()) + ")");
  const auto gram = column_gram(cfg);
  const auto coef = detail::difference_form_coefficients(cfg, gram, res.E);
  return detail::telescoped_form_value(coef, mu);
}

template <class T>
struct CoindexAnalysis {
  std::vector<int> permutation;  // sorted factor order (original indices)
  SymMatrix<T> form;             // difference form, dim m - r
  Inertia inertia;
  int coindex_lower_bound = 0;
  bool proof_bound_ok = true;
  std::string witness;
  std::string note;
};

struct AnalyzeOptions {
  std::uint64_t seed = 0xA11CE;
  int bound_samples = 64;
};

/// Sorts factors so that n_1 C_11 / x_1^2 <= ... <= n_m C_mm / x_m^2
/// (stable, ties keep original order), assembles the difference form on
/// the m-r consecutive differences, computes its inertia, and samples
/// the proof's upper bound
///   value(mu) <= -mu_1^2 C_11/(2r x_1^2)
///                - sum_{i=2}^{m-r} (mu_i - mu_{i-1})^2 C_ii/(2r x_i^2).
template <class T>
CoindexAnalysis<T> analyze_coindex(
    const TorusBundleConfig<T>& cfg,
    const T& einstein_tol = default_einstein_tol<T>(),
    const T& zero_tol = T(0), const AnalyzeOptions& opt = {}) {
  const auto res = einstein_system_residual(cfg);
  if (res.inf_norm() > einstein_tol)
    throw NotEinstein("configuration is not Einstein (residual " +
                      format_scalar(res.inf_norm()) + ")");

  const int m = cfg.m(), r = cfg.r();
  const auto gram = column_gram(cfg);

  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<T> key(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const T xi = cfg.x[static_cast<std::size_t>(i)];
    key[static_cast<std::size_t>(i)] =
        T(cfg.topology.n[static_cast<std::size_t>(i)]) * gram.at(i, i) /
        (xi * xi);
  }
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)];
  });

  // Permuted view: reorder factors and the columns of b.
  std::vector<int> n_s;
  std::vector<T> q_s, x_s;
  Mat<int> b_s(r, m);
  for (int jnew = 0; jnew < m; ++jnew) {
    const int jold = perm[static_cast<std::size_t>(jnew)];
    n_s.push_back(cfg.topology.n[static_cast<std::size_t>(jold)]);
    q_s.push_back(cfg.topology.q[static_cast<std::size_t>(jold)]);
    x_s.push_back(cfg.x[static_cast<std::size_t>(jold)]);
    for (int a = 0; a < r; ++a) b_s.at(a, jnew) = cfg.topology.b.at(a, jold);
  }
  const TorusBundleConfig<T> sorted{
      TorusTopology<T>{m, r, std::move(n_s), std::move(q_s), std::move(b_s)},
      std::move(x_s), cfg.ghat};
  const auto gram_s = column_gram(sorted);
  const auto coef = detail::difference_form_coefficients(sorted, gram_s, res.E);

  CoindexAnalysis<T> out;
  out.permutation = perm;
  const int k = m - r;
  SymMatrix<T> q(k);
  for (int a = 0; a < k; ++a) {
    q.set(a, a, coef[static_cast<std::size_t>(a)] +
                    coef[static_cast<std::size_t>(a + 1)]);
    if (a + 1 < k) q.set(a, a + 1, -coef[static_cast<std::size_t>(a + 1)]);
  }
  out.form = q;
  out.inertia = k > 0 ? inertia(q, zero_tol) : Inertia{};
  out.coindex_lower_bound = out.inertia.n_neg;

  if (k == 0) {
    out.note = r >= 2
                   ? "torus rank equals the number of factors: the metric is "
                     "a product Einstein metric (unstable); no pulled-back "
                     "difference directions are available in this span"
                   : "no difference directions available (m = r = 1)";
    return out;
  }

  // Randomized check of the proof's bound chain on the sorted factors.
  Rng rng(opt.seed);
  bool ok = true;
  const T slack = is_exact_v<T> ? T(0) : T(1e-9);
  for (int sample = 0; sample < opt.bound_samples && ok; ++sample) {
    std::vector<T> mu(static_cast<std::size_t>(k));
    for (auto& mi : mu) mi = T(static_cast<int>(rng.int_in(-6, 6)));
    const T value = detail::telescoped_form_value(coef, mu);
    T bound(0);
    T prev(0);
    for (int i = 0; i < k; ++i) {
      const T d = mu[static_cast<std::size_t>(i)] - prev;
      const T xi = sorted.x[static_cast<std::size_t>(i)];
      bound -= d * d * gram_s.at(i, i) / (T(2 * r) * xi * xi);
      prev = mu[static_cast<std::size_t>(i)];
    }
    if (value > bound + slack) ok = false;
  }
  out.proof_bound_ok = ok;

  const int i1 = perm[0] + 1, i2 = perm[1] + 1;
  out.witness = "pi*(g_" + std::to_string(i1) + "/n_" + std::to_string(i1) +
                " - g_" + std::to_string(i2) + "/n_" + std::to_string(i2) +
                ") (factors in sorted order)";
  return out;
}

}  // namespace einstab
