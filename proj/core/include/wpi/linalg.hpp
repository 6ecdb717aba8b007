#pragma once

#include "wpi/scalars.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace wpi {

/** Dense matrix over Q(i), row-major. Exact throughout. */
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static QMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  GaussianRational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const GaussianRational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const GaussianRational& c, QMatrix m);
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

  bool is_zero() const;
  GaussianRational trace() const;
  QMatrix transpose() const;

  std::vector<GaussianRational> apply(const std::vector<GaussianRational>& v) const;

 private:
  int rows_, cols_;
  std::vector<GaussianRational> a_;
};

/// In-place reduced row echelon form. Returns pivot column indices.
std::vector<int> rref(QMatrix& m);

int rank(QMatrix m);

/// One solution of A x = b (free variables zero), or nullopt if inconsistent.
std::optional<std::vector<GaussianRational>> solve(const QMatrix& a,
                                                   const std::vector<GaussianRational>& b);

/// Basis of the right null space of A.
std::vector<std::vector<GaussianRational>> nullspace(const QMatrix& a);

/// Monic characteristic polynomial det(tI - A), coefficients c[0..n] with
/// c[n] = 1, computed by the Faddeev-LeVerrier recurrence (division-free up
/// to exact division by small integers).
std::vector<GaussianRational> char_poly(const QMatrix& a);

/// Evaluation of a coefficient-vector polynomial by Horner's rule.
GaussianRational poly_eval(const std::vector<GaussianRational>& p, const GaussianRational& t);

struct RootSplit {
  std::vector<std::pair<GaussianRational, int>> roots;  // (root, multiplicity)
  std::vector<GaussianRational> remainder;              // factor with no rational root found
  bool complete = false;                                // remainder is constant
};

/// Splits off all roots in Q (found via the rational-root theorem after
/// clearing denominators; divisor enumeration capped, so a pathological
/// constant term may leave roots in the remainder).
RootSplit factor_rational_roots(std::vector<GaussianRational> poly);

}  // namespace wpi
