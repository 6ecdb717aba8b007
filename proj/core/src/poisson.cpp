#include "wpi/poisson.hpp"

#include <stdexcept>

namespace wpi {

void PolyV::add_term(long a, long b, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find({a, b});
  if (it == terms_.end()) {
    terms_.emplace(Key{a, b}, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PolyV PolyV::monomial(long a, long b, GaussianRational c) {
  if (a < 0 || b < 0) throw std::domain_error("PolyV::monomial: negative exponent");
  PolyV p;
  p.add_term(a, b, c);
  return p;
}

PolyV PolyV::linear(const CVec2& v) {
  PolyV p;
  p.add_term(1, 0, v.x);
  p.add_term(0, 1, v.y);
  return p;
}

GaussianRational PolyV::coeff(long a, long b) const {
  auto it = terms_.find({a, b});
  return it == terms_.end() ? GaussianRational(0) : it->second;
}

long PolyV::degree() const {
  long d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
  return d;
}

bool PolyV::is_homogeneous(long n) const {
  for (const auto& [k, c] : terms_)
    if (k.first + k.second != n) return false;
  return true;
}

PolyV PolyV::dx() const {
  PolyV p;
  for (const auto& [k, c] : terms_)
    if (k.first > 0) p.add_term(k.first - 1, k.second, GaussianRational(k.first) * c);
  return p;
}

PolyV PolyV::dy() const {
  PolyV p;
  for (const auto& [k, c] : terms_)
    if (k.second > 0) p.add_term(k.first, k.second - 1, GaussianRational(k.second) * c);
  return p;
}

PolyV PolyV::operator-() const {
  PolyV p;
  for (const auto& [k, c] : terms_) p.terms_.emplace(k, -c);
  return p;
}

PolyV& PolyV::operator+=(const PolyV& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

PolyV& PolyV::operator-=(const PolyV& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

PolyV operator*(const PolyV& a, const PolyV& b) {
  PolyV p;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      p.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return p;
}

PolyV operator*(const GaussianRational& c, const PolyV& p) {
  PolyV q;
  for (const auto& [k, v] : p.terms_) q.add_term(k.first, k.second, c * v);
  return q;
}

CVec2 PolyV::as_vector() const {
  for (const auto& [k, c] : terms_)
    if (k.first + k.second != 1) throw std::domain_error("PolyV::as_vector: not linear");
  return CVec2(coeff(1, 0), coeff(0, 1));
}

PolyV poly_bracket(const PolyV& p, const PolyV& q) {
  return p.dx() * q.dy() - p.dy() * q.dx();
}

std::string to_string(const PolyV& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")";
    if (k.first > 0) out += "*x" + (k.first > 1 ? "^" + std::to_string(k.first) : "");
    if (k.second > 0) out += "*y" + (k.second > 1 ? "^" + std::to_string(k.second) : "");
  }
  return out;
}

std::vector<GaussianRational> fiber_coords(const PolyV& u, long n) {
  if (!u.is_homogeneous(n) && !u.is_zero())
    throw std::domain_error("fiber_coords: polynomial not homogeneous of the requested degree");
  std::vector<GaussianRational> c(size_t(n) + 1);
  for (long j = 0; j <= n; ++j) c[j] = u.coeff(n - j, j);
  return c;
}

PolyV fiber_from_coords(const std::vector<GaussianRational>& c) {
  PolyV u;
  long n = long(c.size()) - 1;
  for (long j = 0; j <= n; ++j) u += PolyV::monomial(n - j, j, c[j]);
  return u;
}

QMatrix bracket_matrix(const PolyV& p, long n) {
  if (!p.is_homogeneous(2) && !p.is_zero())
    throw std::domain_error("bracket_matrix: quadratic polynomial required");
  QMatrix m(int(n) + 1, int(n) + 1);
  for (long j = 0; j <= n; ++j) {
    PolyV img = poly_bracket(p, PolyV::monomial(n - j, j));
    auto col = fiber_coords(img, n);
    for (long i = 0; i <= n; ++i) m.at(int(i), int(j)) = col[i];
  }
  return m;
}

void SymbolElement::add_term(const CVec2& mu, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(mu);
  if (it == terms_.end()) {
    terms_.emplace(mu, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SymbolElement SymbolElement::symbol(const CVec2& mu, GaussianRational c) {
  SymbolElement s;
  s.add_term(mu, c);
  return s;
}

GaussianRational SymbolElement::coeff(const CVec2& mu) const {
  auto it = terms_.find(mu);
  return it == terms_.end() ? GaussianRational(0) : it->second;
}

SymbolElement SymbolElement::operator-() const {
  SymbolElement s;
  for (const auto& [k, c] : terms_) s.terms_.emplace(k, -c);
  return s;
}

SymbolElement& SymbolElement::operator+=(const SymbolElement& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

SymbolElement& SymbolElement::operator-=(const SymbolElement& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

SymbolElement operator*(const GaussianRational& c, const SymbolElement& s) {
  SymbolElement out;
  for (const auto& [k, v] : s.terms_) out.add_term(k, c * v);
  return out;
}

SymbolElement s_product(const SymbolElement& a, const SymbolElement& b) {
  SymbolElement out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka + kb + rho(), ca * cb);
  return out;
}

SymbolElement s_bracket(const SymbolElement& a, const SymbolElement& b) {
  SymbolElement out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      out.add_term(ka + kb, ca * cb * symplectic(ka + rho(), kb + rho()));
  return out;
}

SymbolElement s_unit() { return SymbolElement::symbol(-rho()); }

std::string symbol_literal(const CVec2& mu) {
  return "L[" + to_string(mu.x) + ", " + to_string(mu.y) + "]";
}

std::string to_string(const SymbolElement& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [mu, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + " * " + symbol_literal(mu);
  }
  return out;
}

Sl2Triple sl2_triple(const CVec2& xi, const CVec2& eta) {
  GaussianRational s = symplectic(xi, eta);
  if (s.is_zero()) throw std::domain_error("sl2_triple: degenerate-pair");
  PolyV px = PolyV::linear(xi), py = PolyV::linear(eta);
  GaussianRational half(make_rational(1, 2));
  Sl2Triple t;
  t.e = -(half / s) * (px * px);
  t.f = (half / s) * (py * py);
  t.h = -(s.inv()) * (px * py);
  t.xi = xi;
  t.eta = eta;
  // the defining relations must hold on the nose
  if (poly_bracket(t.e, t.f) != t.h || poly_bracket(t.h, t.e) != GaussianRational(2) * t.e ||
      poly_bracket(t.h, t.f) != GaussianRational(-2) * t.f)
    throw std::logic_error("sl2_triple: relations violated");
  return t;
}

CasimirSpectrum casimir_like_spectrum(const Sl2Triple& t, long n) {
  if (n < 0) throw std::domain_error("casimir_like_spectrum: negative degree");
  CasimirSpectrum out;
  out.n = n;
  QMatrix e = bracket_matrix(t.e, n), f = bracket_matrix(t.f, n), h = bracket_matrix(t.h, n);
  out.matrix = e * f + f * e - h * h;
  out.charpoly = char_poly(out.matrix);
  RootSplit split = factor_rational_roots(out.charpoly);
  out.eigenvalues = split.roots;
  out.factored = split.complete;
  out.invertible = !out.charpoly[0].is_zero();
  if (out.factored) {
    out.diagonalizable = true;
    int dim = int(n) + 1;
    for (const auto& [r, mult] : out.eigenvalues) {
      QMatrix shifted = out.matrix;
      for (int i = 0; i < dim; ++i) shifted.at(i, i) -= r;
      if (rank(shifted) != dim - mult) {
        out.diagonalizable = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace wpi
