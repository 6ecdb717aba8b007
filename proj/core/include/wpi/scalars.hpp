#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace wpi {

using Integer = mpz_class;
using Rational = mpq_class;

/* mpq_class(num, den) does not reduce; every construction site must. */
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);

/** Element of Q(i), kept in lowest terms componentwise. */
class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(int v) : re_(v), im_(0) {}
  GaussianRational(long v) : re_(v), im_(0) {}
  GaussianRational(const Integer& v) : re_(v), im_(0) {}
  GaussianRational(const Rational& v) : re_(v), im_(0) {}
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational conj() const { return GaussianRational(re_, -im_); }
  /// Multiplicative inverse; throws std::domain_error on zero.
  GaussianRational inv() const;

  GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

 private:
  Rational re_, im_;
};

/// Total order for container keys: by real part, then imaginary part.
int cmp(const GaussianRational& a, const GaussianRational& b);

struct GaussLess {
  bool operator()(const GaussianRational& a, const GaussianRational& b) const {
    return cmp(a, b) < 0;
  }
};

std::string to_string(const Rational& r);
std::string to_string(const GaussianRational& g);
std::ostream& operator<<(std::ostream& os, const GaussianRational& g);

/// Parses "int" or "int/posint". Throws std::invalid_argument on bad syntax.
Rational parse_rational(const std::string& s);
/// Parses the scalar grammar: rat, rat±rat i, rat i (also bare i).
/// Whitespace-insensitive. Throws std::invalid_argument on bad syntax.
GaussianRational parse_gauss(const std::string& s);

/** Vector in C^2, the target plane of lattice embeddings. */
struct CVec2 {
  GaussianRational x, y;

  CVec2() = default;
  CVec2(GaussianRational x_, GaussianRational y_) : x(std::move(x_)), y(std::move(y_)) {}

  bool is_zero() const { return x.is_zero() && y.is_zero(); }

  CVec2 operator-() const { return CVec2(-x, -y); }
  CVec2& operator+=(const CVec2& o) { x += o.x; y += o.y; return *this; }
  CVec2& operator-=(const CVec2& o) { x -= o.x; y -= o.y; return *this; }
  friend CVec2 operator+(CVec2 a, const CVec2& b) { return a += b; }
  friend CVec2 operator-(CVec2 a, const CVec2& b) { return a -= b; }
  friend CVec2 operator*(const GaussianRational& c, const CVec2& v) { return CVec2(c * v.x, c * v.y); }
  friend bool operator==(const CVec2& a, const CVec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const CVec2& a, const CVec2& b) { return !(a == b); }
};

int cmp(const CVec2& a, const CVec2& b);

struct CVec2Less {
  bool operator()(const CVec2& a, const CVec2& b) const { return cmp(a, b) < 0; }
};

/// The symplectic pairing <(a,b),(c,d)> = a*d - b*c.
GaussianRational symplectic(const CVec2& u, const CVec2& v);

const CVec2& rho();         // (1, 1)
const CVec2& rho_dagger();  // (0, 1); <rho, rho_dagger> = 1

std::string to_string(const CVec2& v);
std::ostream& operator<<(std::ostream& os, const CVec2& v);

}  // namespace wpi
