#include "wpi/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace wpi {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
  return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::domain_error("QMatrix::+=: shape mismatch");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::domain_error("QMatrix::-=: shape mismatch");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw std::domain_error("QMatrix::*: shape mismatch");
  QMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const GaussianRational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

QMatrix operator*(const GaussianRational& c, QMatrix m) {
  for (auto& v : m.a_) v = c * v;
  return m;
}

bool QMatrix::is_zero() const {
  for (const auto& v : a_)
    if (!v.is_zero()) return false;
  return true;
}

GaussianRational QMatrix::trace() const {
  GaussianRational t;
  for (int i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
  return t;
}

QMatrix QMatrix::transpose() const {
  QMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

std::vector<GaussianRational> QMatrix::apply(const std::vector<GaussianRational>& v) const {
  if (int(v.size()) != cols_) throw std::domain_error("QMatrix::apply: length mismatch");
  std::vector<GaussianRational> out(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) out[i] += at(i, j) * v[j];
  return out;
}

std::vector<int> rref(QMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    GaussianRational inv = m.at(r, c).inv();
    for (int j = c; j < m.cols(); ++j) m.at(r, j) = inv * m.at(r, j);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      GaussianRational f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(QMatrix m) { return int(rref(m).size()); }

std::optional<std::vector<GaussianRational>> solve(const QMatrix& a,
                                                   const std::vector<GaussianRational>& b) {
  if (int(b.size()) != a.rows()) throw std::domain_error("solve: length mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  std::vector<int> piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  std::vector<GaussianRational> x(a.cols());
  for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug.at(int(k), a.cols());
  return x;
}

std::vector<std::vector<GaussianRational>> nullspace(const QMatrix& a) {
  QMatrix m = a;
  std::vector<int> piv = rref(m);
  std::vector<bool> is_piv(a.cols(), false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<GaussianRational>> basis;
  for (int c = 0; c < a.cols(); ++c) {
    if (is_piv[c]) continue;
    std::vector<GaussianRational> v(a.cols());
    v[c] = GaussianRational(1);
    for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m.at(int(k), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<GaussianRational> char_poly(const QMatrix& a) {
  if (a.rows() != a.cols()) throw std::domain_error("char_poly: square matrix required");
  int n = a.rows();
  std::vector<GaussianRational> c(n + 1);
  c[n] = GaussianRational(1);
  if (n == 0) return c;
  QMatrix m = a;  // M_1 = A
  c[n - 1] = -m.trace();
  for (int k = 2; k <= n; ++k) {
    QMatrix shifted = m;
    for (int i = 0; i < n; ++i) shifted.at(i, i) += c[n - k + 1];
    m = a * shifted;
    GaussianRational t = m.trace();
    c[n - k] = -(t / GaussianRational(k));
  }
  return c;
}

GaussianRational poly_eval(const std::vector<GaussianRational>& p, const GaussianRational& t) {
  GaussianRational acc;
  for (size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
  return acc;
}

namespace {

// Deflation by (t - r); remainder must vanish, caller guarantees r is a root.
std::vector<GaussianRational> deflate(const std::vector<GaussianRational>& p,
                                      const GaussianRational& r) {
  size_t n = p.size() - 1;
  std::vector<GaussianRational> q(n);
  GaussianRational carry = p[n];
  for (size_t k = n; k-- > 0;) {
    q[k] = carry;
    carry = p[k] + r * carry;
  }
  if (!carry.is_zero()) throw std::logic_error("deflate: nonzero remainder");
  return q;
}

// Divisors of |v|, built from trial-division primes up to `cap`. A cofactor
// the trial division cannot split is kept as one extra candidate factor, so
// roots composed of small primes are found even when |v| itself is huge.
// Empty result means the divisor count exploded.
std::vector<Integer> bounded_divisors(Integer v, unsigned long cap) {
  if (v < 0) v = -v;
  if (v == 0) return {};
  std::vector<std::pair<Integer, int>> factors;
  for (Integer d = 2; d * d <= v; d += (d == 2 ? 1 : 2)) {
    if (mpz_cmp_ui(d.get_mpz_t(), cap) > 0) break;
    if (v % d == 0) {
      int e = 0;
      while (v % d == 0) {
        v = v / d;
        ++e;
      }
      factors.emplace_back(d, e);
    }
  }
  if (v > 1) factors.emplace_back(v, 1);
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : factors) {
    const size_t base = divs.size();
    if (base * size_t(e + 1) > 100000) return {};
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

RootSplit factor_rational_roots(std::vector<GaussianRational> poly) {
  RootSplit out;
  if (poly.empty()) throw std::domain_error("factor_rational_roots: empty polynomial");

  auto add_root = [&out](const GaussianRational& r) {
    for (auto& [root, mult] : out.roots)
      if (root == r) { ++mult; return; }
    out.roots.emplace_back(r, 1);
  };

  while (poly.size() > 1) {
    if (poly[0].is_zero()) {
      add_root(GaussianRational(0));
      poly.erase(poly.begin());
      continue;
    }

    // rational-root candidates need real rational coefficients
    bool real = true;
    for (const auto& c : poly)
      if (!c.is_real()) { real = false; break; }
    if (!real) break;

    // clear denominators to an integer polynomial
    Integer lcm = 1;
    for (const auto& c : poly) {
      Integer den = c.re().get_den();
      Integer g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      lcm = lcm / g * den;
    }
    std::vector<Integer> ip(poly.size());
    for (size_t k = 0; k < poly.size(); ++k) {
      Rational scaled = poly[k].re() * Rational(lcm);
      ip[k] = scaled.get_num();
    }

    std::vector<Integer> ps = bounded_divisors(ip.front(), 1000000);
    std::vector<Integer> qs = bounded_divisors(ip.back(), 1000000);
    if (ps.empty() || qs.empty()) break;  // divisor cap hit

    bool found = false;
    for (const Integer& q : qs) {
      for (const Integer& p : ps) {
        for (int sign = 1; sign >= -1 && !found; sign -= 2) {
          GaussianRational cand(make_rational(sign > 0 ? p : Integer(-p), q));
          if (poly_eval(poly, cand).is_zero()) {
            add_root(cand);
            poly = deflate(poly, cand);
            found = true;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }

  out.remainder = std::move(poly);
  out.complete = out.remainder.size() <= 1;
  return out;
}

}  // namespace wpi
