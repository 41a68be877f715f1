#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "einstab/errors.hpp"
#include "einstab/matrix.hpp"

namespace einstab {

using VecD = std::vector<double>;
using ResidualFn = std::function<VecD(const VecD&)>;
using JacobianFn = std::function<Mat<double>(const VecD&)>;

inline double inf_norm(const VecD& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

namespace detail {

inline Mat<double> fd_jacobian(const ResidualFn& f, const VecD& x,
                               const VecD& fx) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(fx.size());
  Mat<double> j(m, n);
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  VecD xt = x;
  for (int col = 0; col < n; ++col) {
    const double h = sqrt_eps * std::max(1.0, std::abs(x[col]));
    xt[col] = x[col] + h;
    const VecD ft = f(xt);
    xt[col] = x[col];
    for (int row = 0; row < m; ++row) j.at(row, col) = (ft[row] - fx[row]) / h;
  }
  return j;
}

}  // namespace detail

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 100;
  int max_halvings = 30;
};

/// Damped Newton iteration on a square system. Steps are halved (up to
/// max_halvings) whenever the full step increases the residual inf-norm.
/// Returns an iterate whose residual inf-norm is <= tol; the bound is
/// re-checked on the returned value rather than trusted.
inline VecD newton_solve(const ResidualFn& residual, VecD start,
                         const NewtonOptions& opt = {},
                         const JacobianFn* jacobian = nullptr) {
  if (opt.tol <= 0) throw InvalidParams("newton tol must be positive");
  if (opt.max_iter < 1) throw InvalidParams("newton max_iter must be >= 1");

  VecD x = std::move(start);
  VecD fx = residual(x);
  if (fx.size() != x.size())
    throw InvalidParams("newton residual dimension mismatch");
  double nrm = inf_norm(fx);
  const int n = static_cast<int>(x.size());

  for (int iter = 0; iter < opt.max_iter && nrm > opt.tol; ++iter) {
    const Mat<double> j =
        jacobian ? (*jacobian)(x) : detail::fd_jacobian(residual, x, fx);
    Eigen::MatrixXd ej(n, n);
    Eigen::VectorXd rhs(n);
    for (int r = 0; r < n; ++r) {
      rhs(r) = -fx[static_cast<std::size_t>(r)];
      for (int c = 0; c < n; ++c) ej(r, c) = j.at(r, c);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(ej);
    if (!lu.isInvertible())
      throw SingularJacobian("newton: jacobian is singular at iterate " +
                             std::to_string(iter));
    const Eigen::VectorXd step = lu.solve(rhs);

    double lambda = 1.0;
    VecD xt(x.size()), ft;
    double nt = 0.0;
    bool accepted = false;
    for (int h = 0; h <= opt.max_halvings; ++h) {
      for (int k = 0; k < n; ++k)
        xt[static_cast<std::size_t>(k)] =
            x[static_cast<std::size_t>(k)] + lambda * step(k);
      ft = residual(xt);
      nt = inf_norm(ft);
      if (nt < nrm || !std::isfinite(nt)) {
        accepted = std::isfinite(nt);
        if (accepted) break;
      }
      lambda /= 2;
    }
    // A fully damped step that still fails to reduce the residual is
    // taken anyway; either the next Jacobian recovers progress or the
    // iteration budget runs out.
    x = xt;
    fx = ft;
    nrm = nt;
    if (!std::isfinite(nrm))
      throw MaxIterationsExceeded("newton: residual became non-finite", x,
                                  nrm);
  }

  // Post-check the advertised contract.
  const double final_norm = inf_norm(residual(x));
  if (!(final_norm <= opt.tol))
    throw MaxIterationsExceeded(
        "newton: no convergence within iteration budget (residual " +
            std::to_string(final_norm) + ")",
        x, final_norm);
  return x;
}

}  // namespace einstab
