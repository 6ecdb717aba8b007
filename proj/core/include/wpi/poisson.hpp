#pragma once

#include "wpi/linalg.hpp"
#include "wpi/scalars.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wpi {

/** Polynomial in two commuting variables x, y over Q(i). Zero-free term map. */
class PolyV {
 public:
  using Key = std::pair<long, long>;  // (x exponent, y exponent)

  PolyV() = default;

  static PolyV monomial(long a, long b, GaussianRational c = GaussianRational(1));
  /// The linear polynomial v_x x + v_y y attached to a plane vector.
  static PolyV linear(const CVec2& v);

  bool is_zero() const { return terms_.empty(); }
  GaussianRational coeff(long a, long b) const;
  const std::map<Key, GaussianRational>& terms() const { return terms_; }

  /// Total degree; -1 for the zero polynomial.
  long degree() const;
  bool is_homogeneous(long n) const;

  PolyV dx() const;
  PolyV dy() const;

  PolyV operator-() const;
  PolyV& operator+=(const PolyV& o);
  PolyV& operator-=(const PolyV& o);
  friend PolyV operator+(PolyV a, const PolyV& b) { return a += b; }
  friend PolyV operator-(PolyV a, const PolyV& b) { return a -= b; }
  friend PolyV operator*(const PolyV& a, const PolyV& b);
  friend PolyV operator*(const GaussianRational& c, const PolyV& p);
  friend bool operator==(const PolyV& a, const PolyV& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const PolyV& a, const PolyV& b) { return !(a == b); }

  /// Recover the plane vector of a (homogeneous) linear polynomial.
  CVec2 as_vector() const;

 private:
  void add_term(long a, long b, const GaussianRational& c);
  std::map<Key, GaussianRational> terms_;
};

/// {p, q} = (dp/dx)(dq/dy) - (dp/dy)(dq/dx); in particular {x, y} = 1.
PolyV poly_bracket(const PolyV& p, const PolyV& q);

std::string to_string(const PolyV& p);

/// Coordinates of a homogeneous degree-n polynomial in the basis
/// x^n, x^{n-1}y, ..., y^n. Throws if u has terms outside that span.
std::vector<GaussianRational> fiber_coords(const PolyV& u, long n);
PolyV fiber_from_coords(const std::vector<GaussianRational>& c);

/// Matrix of u -> {p, u} on the degree-n homogeneous component. Requires p
/// homogeneous of degree 2 (so the component is preserved).
QMatrix bracket_matrix(const PolyV& p, long n);

/**
 * Finite Q(i)-combination of weight symbols indexed by plane vectors.
 * Commutative product: L_a * L_b = L_{a+b+rho}, unit L_{-rho}.
 * Bracket: {L_a, L_b} = <a+rho, b+rho> L_{a+b}.
 */
class SymbolElement {
 public:
  SymbolElement() = default;

  static SymbolElement symbol(const CVec2& mu, GaussianRational c = GaussianRational(1));

  bool is_zero() const { return terms_.empty(); }
  GaussianRational coeff(const CVec2& mu) const;
  const std::map<CVec2, GaussianRational, CVec2Less>& terms() const { return terms_; }

  SymbolElement operator-() const;
  SymbolElement& operator+=(const SymbolElement& o);
  SymbolElement& operator-=(const SymbolElement& o);
  friend SymbolElement operator+(SymbolElement a, const SymbolElement& b) { return a += b; }
  friend SymbolElement operator-(SymbolElement a, const SymbolElement& b) { return a -= b; }
  friend SymbolElement operator*(const GaussianRational& c, const SymbolElement& s);
  friend bool operator==(const SymbolElement& a, const SymbolElement& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const SymbolElement& a, const SymbolElement& b) { return !(a == b); }

 private:
  void add_term(const CVec2& mu, const GaussianRational& c);
  friend SymbolElement s_product(const SymbolElement&, const SymbolElement&);
  friend SymbolElement s_bracket(const SymbolElement&, const SymbolElement&);
  std::map<CVec2, GaussianRational, CVec2Less> terms_;
};

SymbolElement s_product(const SymbolElement& a, const SymbolElement& b);
SymbolElement s_bracket(const SymbolElement& a, const SymbolElement& b);
SymbolElement s_unit();

/// "L[x, y]" with grammar-conformant scalar components.
std::string symbol_literal(const CVec2& mu);
std::string to_string(const SymbolElement& s);

struct Sl2Triple {
  PolyV e, f, h;
  CVec2 xi, eta;
};

/// e = -xi^2 / (2<xi,eta>), f = eta^2 / (2<xi,eta>), h = -xi.eta / <xi,eta>.
/// Throws std::domain_error("sl2_triple: degenerate-pair") when <xi,eta> = 0.
Sl2Triple sl2_triple(const CVec2& xi, const CVec2& eta);

struct CasimirSpectrum {
  long n = 0;
  QMatrix matrix;                                            // ef + fe - h^2 on degree n
  std::vector<GaussianRational> charpoly;                    // monic, exact
  std::vector<std::pair<GaussianRational, int>> eigenvalues;  // (value, multiplicity)
  bool factored = false;       // eigenvalues exhaust the characteristic polynomial
  bool diagonalizable = false;  // decided only when factored
  bool invertible = false;     // exact: nonzero determinant
};

/// Exact spectrum of ef + fe - h^2 acting on the degree-n component.
CasimirSpectrum casimir_like_spectrum(const Sl2Triple& t, long n);

}  // namespace wpi
