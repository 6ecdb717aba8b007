#include "wpi/scalars.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace wpi {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(long num, long den) {
  return make_rational(Integer(num), Integer(den));
}

Integer binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

GaussianRational GaussianRational::inv() const {
  if (is_zero()) throw std::domain_error("GaussianRational::inv: zero has no inverse");
  Rational n = re_ * re_ + im_ * im_;
  return GaussianRational(re_ / n, -im_ / n);
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  return *this *= o.inv();
}

int cmp(const GaussianRational& a, const GaussianRational& b) {
  int c = ::cmp(a.re(), b.re());
  if (c != 0) return c;
  return ::cmp(a.im(), b.im());
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const GaussianRational& g) {
  if (g.im() == 0) return to_string(g.re());
  std::string im = to_string(g.im()) + "i";
  if (g.re() == 0) return im;
  if (g.im() > 0) return to_string(g.re()) + "+" + im;
  return to_string(g.re()) + im;  // negative imaginary part carries its sign
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
  return os << to_string(g);
}

namespace {

bool valid_uint(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool valid_int(const std::string& s) {
  if (s.empty()) return false;
  size_t k = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  return valid_uint(s.substr(k));
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);  // mpq_set_str rejects a leading plus
  size_t slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw std::invalid_argument("parse_rational: bad integer '" + raw + "'");
    Rational r(s);
    r.canonicalize();
    return r;
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_uint(den))
    throw std::invalid_argument("parse_rational: bad fraction '" + raw + "'");
  if (Integer(den) == 0) throw std::invalid_argument("parse_rational: zero denominator '" + raw + "'");
  Rational r(s);
  r.canonicalize();
  return r;
}

GaussianRational parse_gauss(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("parse_gauss: empty input");

  // imaginary-only coefficient, accepting bare "i", "+i", "-i"
  auto imag_coeff = [&raw](std::string t) -> Rational {
    if (t.empty() || t == "+") return Rational(1);
    if (t == "-") return Rational(-1);
    return parse_rational(t);
  };

  // split at a sign that separates the two terms (not a leading sign)
  size_t split = std::string::npos;
  for (size_t k = 1; k < s.size(); ++k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      split = k;
      break;
    }
  }
  if (split != std::string::npos) {
    std::string first = s.substr(0, split), second = s.substr(split);
    if (second.back() != 'i')
      throw std::invalid_argument("parse_gauss: second term must be imaginary in '" + raw + "'");
    second.pop_back();
    return GaussianRational(parse_rational(first), imag_coeff(second));
  }
  if (s.back() == 'i') {
    s.pop_back();
    return GaussianRational(Rational(0), imag_coeff(s));
  }
  return GaussianRational(parse_rational(s));
}

int cmp(const CVec2& a, const CVec2& b) {
  int c = cmp(a.x, b.x);
  if (c != 0) return c;
  return cmp(a.y, b.y);
}

GaussianRational symplectic(const CVec2& u, const CVec2& v) {
  return u.x * v.y - u.y * v.x;
}

const CVec2& rho() {
  static const CVec2 r(GaussianRational(1), GaussianRational(1));
  return r;
}

const CVec2& rho_dagger() {
  static const CVec2 r(GaussianRational(0), GaussianRational(1));
  return r;
}

std::string to_string(const CVec2& v) {
  return "(" + to_string(v.x) + ", " + to_string(v.y) + ")";
}

std::ostream& operator<<(std::ostream& os, const CVec2& v) {
  return os << to_string(v);
}

}  // namespace wpi
