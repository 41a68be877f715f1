#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "einstab/errors.hpp"
#include "einstab/rational.hpp"

namespace einstab {

/// Small dense row-major matrix over an exact or floating scalar.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * cols, T(0)) {
    if (rows < 0 || cols < 0) throw InvalidParams("negative matrix extent");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<T>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
    Mat m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c)
        throw InvalidParams("ragged matrix rows");
      for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> a_;
};

template <class T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols() != b.rows()) throw InvalidParams("matrix product shape mismatch");
  Mat<T> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const T& aik = a.at(i, k);
      if (aik == T(0)) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

template <class T>
Mat<T> operator+(const Mat<T>& a, const Mat<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidParams("matrix sum shape mismatch");
  Mat<T> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

template <class T>
Mat<T> operator-(const Mat<T>& a, const Mat<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidParams("matrix difference shape mismatch");
  Mat<T> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

template <class T>
Mat<T> operator*(const T& s, const Mat<T>& a) {
  Mat<T> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = s * a.at(i, j);
  return c;
}

template <class T>
Mat<T> transpose(const Mat<T>& a) {
  Mat<T> t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t.at(j, i) = a.at(i, j);
  return t;
}

template <class T>
T trace(const Mat<T>& a) {
  if (a.rows() != a.cols()) throw InvalidParams("trace of non-square matrix");
  T s(0);
  for (int i = 0; i < a.rows(); ++i) s += a.at(i, i);
  return s;
}

template <class To, class From>
Mat<To> mat_cast(const Mat<From>& a) {
  Mat<To> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = To(a.at(i, j));
  return c;
}

inline Mat<double> mat_to_double(const Mat<Rational>& a) {
  Mat<double> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = to_double(a.at(i, j));
  return c;
}
inline const Mat<double>& mat_to_double(const Mat<double>& a) { return a; }

/// Gauss-Jordan inverse with max-magnitude pivoting. Exact over
/// rationals; adequate for the tiny well-conditioned systems here.
template <class T>
Mat<T> inverse(const Mat<T>& a) {
  if (a.rows() != a.cols()) throw InvalidParams("inverse of non-square matrix");
  const int n = a.rows();
  Mat<T> w = a;
  Mat<T> inv = Mat<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    T best(0);
    for (int i = col; i < n; ++i) {
      T mag = scalar_abs(w.at(i, col));
      if (piv < 0 || mag > best) {
        piv = i;
        best = mag;
      }
    }
    if (best == T(0)) throw SingularMatrix("matrix is singular");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(w.at(piv, j), w.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    }
    const T p = w.at(col, col);
    for (int j = 0; j < n; ++j) {
      w.at(col, j) = w.at(col, j) / p;
      inv.at(col, j) = inv.at(col, j) / p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const T f = w.at(i, col);
      if (f == T(0)) continue;
      for (int j = 0; j < n; ++j) {
        w.at(i, j) -= f * w.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

/// Row-echelon rank; pivots compared against `tol` (0 in exact mode).
template <class T>
int rank(Mat<T> w, const T& tol = T(0)) {
  int r = 0;
  const int rows = w.rows(), cols = w.cols();
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    T best(0);
    for (int i = r; i < rows; ++i) {
      T mag = scalar_abs(w.at(i, col));
      if (mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (piv < 0 || !(best > tol)) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(w.at(piv, j), w.at(r, j));
    for (int i = r + 1; i < rows; ++i) {
      if (w.at(i, col) == T(0)) continue;
      const T f = w.at(i, col) / w.at(r, col);
      for (int j = col; j < cols; ++j) w.at(i, j) -= f * w.at(r, j);
    }
    ++r;
  }
  return r;
}

/// Symmetric matrix; symmetry is enforced at construction (exact
/// equality of mirrored entries) and preserved by `set`.
template <class T>
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim) : m_(dim, dim) {}

  static SymMatrix from_mat(const Mat<T>& m) {
    if (m.rows() != m.cols())
      throw InvalidParams("symmetric matrix must be square");
    for (int i = 0; i < m.rows(); ++i)
      for (int j = i + 1; j < m.cols(); ++j)
        if (!(m.at(i, j) == m.at(j, i)))
          throw InvalidParams("matrix is not symmetric at (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              ")");
    SymMatrix s;
    s.m_ = m;
    return s;
  }

  static SymMatrix from_rows(const std::vector<std::vector<T>>& rows) {
    return from_mat(Mat<T>::from_rows(rows));
  }

  static SymMatrix diagonal(const std::vector<T>& d) {
    SymMatrix s(static_cast<int>(d.size()));
    for (int i = 0; i < s.dim(); ++i) s.m_.at(i, i) = d[static_cast<std::size_t>(i)];
    return s;
  }

  int dim() const { return m_.rows(); }
  const T& at(int i, int j) const { return m_.at(i, j); }
  void set(int i, int j, const T& v) {
    m_.at(i, j) = v;
    m_.at(j, i) = v;
  }
  const Mat<T>& mat() const { return m_; }

  T max_abs() const {
    T best(0);
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) best = std::max(best, scalar_abs(m_.at(i, j)));
    return best;
  }

  bool operator==(const SymMatrix& o) const { return m_ == o.m_; }

 private:
  Mat<T> m_;
};

/// Signature of a symmetric matrix: counts of negative, zero, and
/// positive eigenvalues. n_neg realizes coindex lower bounds.
struct Inertia {
  int n_neg = 0;
  int n_zero = 0;
  int n_pos = 0;

  bool operator==(const Inertia&) const = default;
};

namespace detail {

/// Exact inertia by symmetric-pivoted LDL^T elimination. Uses a 1x1
/// pivot whenever a nonzero diagonal entry remains, otherwise a 2x2
/// pivot block [[0,a],[a,0]] (one positive, one negative eigenvalue).
/// Sylvester's law makes the pivot sign counts the signature.
template <class T>
Inertia inertia_exact(Mat<T> w) {
  Inertia out;
  std::vector<int> act(static_cast<std::size_t>(w.rows()));
  for (std::size_t i = 0; i < act.size(); ++i) act[i] = static_cast<int>(i);

  while (!act.empty()) {
    // Largest-magnitude diagonal pivot first.
    int kpos = -1;
    T best(0);
    for (std::size_t k = 0; k < act.size(); ++k) {
      T mag = scalar_abs(w.at(act[k], act[k]));
      if (mag > best) {
        best = mag;
        kpos = static_cast<int>(k);
      }
    }
    if (kpos >= 0) {
      const int p = act[static_cast<std::size_t>(kpos)];
      const T piv = w.at(p, p);
      (piv > T(0) ? out.n_pos : out.n_neg) += 1;
      act.erase(act.begin() + kpos);
      for (std::size_t ui = 0; ui < act.size(); ++ui)
        for (std::size_t vi = ui; vi < act.size(); ++vi) {
          const int u = act[ui], v = act[vi];
          const T upd = w.at(u, v) - w.at(u, p) * w.at(v, p) / piv;
          w.at(u, v) = upd;
          w.at(v, u) = upd;
        }
      continue;
    }
    // All remaining diagonal entries vanish; look for an off-diagonal
    // entry to form a hyperbolic 2x2 pivot.
    int ip = -1, jp = -1;
    T besto(0);
    for (std::size_t ui = 0; ui < act.size(); ++ui)
      for (std::size_t vi = ui + 1; vi < act.size(); ++vi) {
        T mag = scalar_abs(w.at(act[ui], act[vi]));
        if (mag > besto) {
          besto = mag;
          ip = static_cast<int>(ui);
          jp = static_cast<int>(vi);
        }
      }
    if (ip < 0) {
      out.n_zero += static_cast<int>(act.size());
      break;
    }
    const int i = act[static_cast<std::size_t>(ip)];
    const int j = act[static_cast<std::size_t>(jp)];
    const T a = w.at(i, j);
    out.n_pos += 1;
    out.n_neg += 1;
    act.erase(act.begin() + jp);  // jp > ip, erase back first
    act.erase(act.begin() + ip);
    for (std::size_t ui = 0; ui < act.size(); ++ui)
      for (std::size_t vi = ui; vi < act.size(); ++vi) {
        const int u = act[ui], v = act[vi];
        const T upd = w.at(u, v) -
                      (w.at(u, i) * w.at(v, j) + w.at(u, j) * w.at(v, i)) / a;
        w.at(u, v) = upd;
        w.at(v, u) = upd;
      }
  }
  return out;
}

inline Inertia inertia_float(const Mat<double>& m, double zero_tol) {
  const int n = m.rows();
  Eigen::MatrixXd em(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) em(i, j) = m.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(em,
                                                    Eigen::EigenvaluesOnly);
  Inertia out;
  for (int i = 0; i < n; ++i) {
    const double ev = es.eigenvalues()(i);
    if (std::abs(ev) <= zero_tol)
      ++out.n_zero;
    else if (ev < 0)
      ++out.n_neg;
    else
      ++out.n_pos;
  }
  return out;
}

}  // namespace detail

/// Default float zero threshold: 1e-9 relative to the largest entry.
inline double default_zero_tol(const SymMatrix<double>& m) {
  return 1e-9 * m.max_abs();
}

template <class T>
Inertia inertia(const SymMatrix<T>& m, const T& zero_tol = T(0)) {
  if constexpr (is_exact_v<T>) {
    if (zero_tol != T(0))
      throw InvalidParams("zero_tol must be 0 for exact inertia");
    return detail::inertia_exact(m.mat());
  } else {
    if (zero_tol < 0) throw InvalidParams("zero_tol must be non-negative");
    return detail::inertia_float(m.mat(), zero_tol);
  }
}

/// P^T M P; congruence preserves inertia for invertible P.
template <class T>
SymMatrix<T> congruence(const Mat<T>& p, const SymMatrix<T>& m) {
  if (p.rows() != m.dim()) throw InvalidParams("congruence shape mismatch");
  Mat<T> r = transpose(p) * m.mat() * p;
  // Round-trip through exact symmetrization: the product of exact
  // symmetric data is symmetric, but enforce it for float inputs where
  // association order may differ per entry.
  SymMatrix<T> out(r.rows());
  for (int i = 0; i < r.rows(); ++i)
    for (int j = i; j < r.cols(); ++j) {
      if constexpr (is_exact_v<T>) {
        out.set(i, j, r.at(i, j));
      } else {
        out.set(i, j, (r.at(i, j) + r.at(j, i)) / 2);
      }
    }
  return out;
}

}  // namespace einstab
