#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wpi/poisson.hpp"

#include <map>
#include <stdexcept>

using namespace wpi;

namespace {

GaussianRational g(long re, long im = 0) { return GaussianRational(Rational(re), Rational(im)); }

CVec2 v2(long a, long b, long c = 0, long d = 0) { return CVec2(g(a, c), g(b, d)); }

}  // namespace

TEST_CASE("poly algebra basics") {
  PolyV x = PolyV::monomial(1, 0), y = PolyV::monomial(0, 1);
  CHECK((x * y) == PolyV::monomial(1, 1));
  CHECK((x + y - y) == x);
  CHECK((x - x).is_zero());
  CHECK(x.degree() == 1);
  CHECK((x * x * y).degree() == 3);
  CHECK(PolyV().degree() == -1);
  CHECK((x * x + y * y).is_homogeneous(2));
  CHECK(!(x * x + y).is_homogeneous(2));
  CHECK(PolyV::linear(v2(3, -2)).as_vector() == v2(3, -2));
  CHECK_THROWS_AS((x * x).as_vector(), std::domain_error);
  CHECK(PolyV::monomial(2, 1).dx() == PolyV::monomial(1, 1, g(2)));
  CHECK(PolyV::monomial(2, 1).dy() == PolyV::monomial(2, 0));
}

TEST_CASE("poly bracket oracle values") {
  PolyV x = PolyV::monomial(1, 0), y = PolyV::monomial(0, 1);
  CHECK(poly_bracket(x, y) == PolyV::monomial(0, 0));
  CHECK(poly_bracket(y, x) == PolyV::monomial(0, 0, g(-1)));
  CHECK(poly_bracket(x * x, y * y) == PolyV::monomial(1, 1, g(4)));
  CHECK(poly_bracket(x, x).is_zero());

  // {x^2 y, x y^2} = (2xy)(2xy) - (x^2)(y^2) = 3 x^2 y^2
  CHECK(poly_bracket(x * x * y, x * y * y) == PolyV::monomial(2, 2, g(3)));
}

TEST_CASE("poly bracket is a Poisson structure") {
  PolyV p = PolyV::monomial(2, 0, g(1, 1)) + PolyV::monomial(0, 1, g(-2));
  PolyV q = PolyV::monomial(1, 1, g(3)) + PolyV::monomial(0, 2, g(0, 1));
  PolyV r = PolyV::monomial(1, 0, g(5)) + PolyV::monomial(2, 1, g(1, -1));

  // antisymmetry
  CHECK((poly_bracket(p, q) + poly_bracket(q, p)).is_zero());
  // Jacobi
  PolyV jac = poly_bracket(p, poly_bracket(q, r)) + poly_bracket(q, poly_bracket(r, p)) +
              poly_bracket(r, poly_bracket(p, q));
  CHECK(jac.is_zero());
  // Leibniz
  CHECK(poly_bracket(p, q * r) == poly_bracket(p, q) * r + q * poly_bracket(p, r));
}

TEST_CASE("symbol algebra product and unit") {
  SymbolElement a = SymbolElement::symbol(v2(1, 2));
  SymbolElement b = SymbolElement::symbol(v2(0, -1, 1, 0));
  // L_a L_b = L_{a+b+rho}
  CHECK(s_product(a, b) == SymbolElement::symbol(v2(2, 2, 1, 0)));
  CHECK(s_product(a, b) == s_product(b, a));
  CHECK(s_product(s_unit(), a) == a);
  SymbolElement c = SymbolElement::symbol(v2(-2, 0, 0, 1));
  CHECK(s_product(s_product(a, b), c) == s_product(a, s_product(b, c)));
}

TEST_CASE("symbol bracket oracle and identities") {
  // {L_a, L_b} = <a+rho, b+rho> L_{a+b}; a=(1,2), b=(0,-1): <(2,3),(1,0)> = -3
  SymbolElement a = SymbolElement::symbol(v2(1, 2));
  SymbolElement b = SymbolElement::symbol(v2(0, -1));
  CHECK(s_bracket(a, b) == SymbolElement::symbol(v2(1, 1), g(-3)));
  CHECK((s_bracket(a, b) + s_bracket(b, a)).is_zero());

  // grading: {L_0, L_mu} = <rho, mu> L_mu
  SymbolElement l0 = SymbolElement::symbol(v2(0, 0));
  CHECK(s_bracket(l0, SymbolElement::symbol(v2(3, -1, 0, 2))) ==
        SymbolElement::symbol(v2(3, -1, 0, 2), symplectic(rho(), v2(3, -1, 0, 2))));

  // the unit is central: {L_{-rho}, anything} = 0
  CHECK(s_bracket(s_unit(), a).is_zero());

  // mixed-weight action: {L_l, L_{m-rho}} = <l+rho, m> L_{l+m-rho}
  CVec2 l = v2(2, -1, 1, 0), m = v2(0, 3, 0, -2);
  CHECK(s_bracket(SymbolElement::symbol(l), SymbolElement::symbol(m - rho())) ==
        SymbolElement::symbol(l + m - rho(), symplectic(l + rho(), m)));
}

TEST_CASE("symbol bracket Jacobi and Leibniz on seeded weights") {
  std::vector<CVec2> ws;
  for (long k = 0; k < 6; ++k)
    ws.push_back(v2(k * k % 5 - 2, 3 - k, k % 3 - 1, (2 * k) % 5 - 2));
  for (size_t i = 0; i < ws.size(); ++i)
    for (size_t j = i + 1; j < ws.size(); ++j)
      for (size_t k = j + 1; k < ws.size(); ++k) {
        SymbolElement a = SymbolElement::symbol(ws[i]), b = SymbolElement::symbol(ws[j]),
                      c = SymbolElement::symbol(ws[k]);
        SymbolElement jac = s_bracket(a, s_bracket(b, c)) + s_bracket(b, s_bracket(c, a)) +
                            s_bracket(c, s_bracket(a, b));
        CHECK(jac.is_zero());
        SymbolElement leib =
            s_bracket(a, s_product(b, c)) - s_product(s_bracket(a, b), c) - s_product(b, s_bracket(a, c));
        CHECK(leib.is_zero());
      }
}

TEST_CASE("symbol literal formatting") {
  CHECK(symbol_literal(v2(0, 1)) == "L[0, 1]");
  CHECK(symbol_literal(v2(-3, -3, 0, 1)) == "L[-3, -3+1i]");
  CHECK(to_string(SymbolElement::symbol(v2(1, 0), g(0, 1))) == "1i * L[1, 0]");
}

TEST_CASE("sl2 triple relations") {
  // xi = x, eta = y: e = -x^2/2, f = y^2/2, h = -xy
  Sl2Triple t = sl2_triple(v2(1, 0), v2(0, 1));
  CHECK(t.e == PolyV::monomial(2, 0, GaussianRational(make_rational(-1, 2))));
  CHECK(t.f == PolyV::monomial(0, 2, GaussianRational(make_rational(1, 2))));
  CHECK(t.h == PolyV::monomial(1, 1, g(-1)));

  // an uneven pair still satisfies the relations (checked in the factory)
  Sl2Triple t2 = sl2_triple(v2(1, 2, 0, 1), v2(3, 5));
  CHECK(poly_bracket(t2.e, t2.f) == t2.h);

  CHECK_THROWS_WITH_AS(sl2_triple(v2(1, 2), v2(2, 4)), "sl2_triple: degenerate-pair",
                       std::domain_error);
}

TEST_CASE("fiber coordinates and bracket matrices") {
  PolyV u = PolyV::monomial(2, 0, g(3)) + PolyV::monomial(0, 2, g(0, 1));
  auto c = fiber_coords(u, 2);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == g(3));
  CHECK(c[1] == g(0));
  CHECK(c[2] == g(0, 1));
  CHECK(fiber_from_coords(c) == u);
  CHECK_THROWS_AS(fiber_coords(PolyV::monomial(1, 0), 2), std::domain_error);

  // h = -xy acts diagonally with weights a - b on x^a y^b
  Sl2Triple t = sl2_triple(v2(1, 0), v2(0, 1));
  QMatrix h = bracket_matrix(t.h, 3);
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      CHECK(h.at(i, j) == (i == j ? g(3 - 2 * i) : g(0)));
}

TEST_CASE("casimir spectra for the split triple") {
  Sl2Triple t = sl2_triple(v2(1, 0), v2(0, 1));

  auto s0 = casimir_like_spectrum(t, 0);
  CHECK(s0.factored);
  CHECK(s0.diagonalizable);
  CHECK(!s0.invertible);
  REQUIRE(s0.eigenvalues.size() == 1);
  CHECK(s0.eigenvalues[0].first == g(0));
  CHECK(s0.eigenvalues[0].second == 1);

  auto s1 = casimir_like_spectrum(t, 1);
  CHECK(!s1.invertible);
  REQUIRE(s1.eigenvalues.size() == 1);
  CHECK(s1.eigenvalues[0].first == g(0));
  CHECK(s1.eigenvalues[0].second == 2);

  // n = 2: eigenvalue 4 simple, -2 double
  auto s2 = casimir_like_spectrum(t, 2);
  CHECK(s2.factored);
  CHECK(s2.diagonalizable);
  CHECK(s2.invertible);
  REQUIRE(s2.eigenvalues.size() == 2);
  for (auto& [r, m] : s2.eigenvalues) {
    if (r == g(4)) CHECK(m == 1);
    else {
      CHECK(r == g(-2));
      CHECK(m == 2);
    }
  }

  // n = 3: {6: 2, -6: 2}; n = 4: {12: 1, 6: 2, -12: 2}
  auto s3 = casimir_like_spectrum(t, 3);
  CHECK(s3.invertible);
  REQUIRE(s3.eigenvalues.size() == 2);
  for (auto& [r, m] : s3.eigenvalues) {
    CHECK((r == g(6) || r == g(-6)));
    CHECK(m == 2);
  }
  auto s4 = casimir_like_spectrum(t, 4);
  CHECK(s4.invertible);
  REQUIRE(s4.eigenvalues.size() == 3);
  for (auto& [r, m] : s4.eigenvalues) {
    if (r == g(12)) CHECK(m == 1);
    else if (r == g(6)) CHECK(m == 2);
    else {
      CHECK(r == g(-12));
      CHECK(m == 2);
    }
  }
}

TEST_CASE("casimir spectrum matches the weight formula and its singular degrees") {
  // on the h-weight-m line of the degree-n component the operator acts by
  // n^2/2 + n - 3m^2/2; it is singular exactly when n(n+2) = 3m^2 has a
  // solution among the weights, i.e. n in {0, 1, 6, 25, ...}
  Sl2Triple t = sl2_triple(v2(1, 0), v2(0, 1));
  for (long n = 0; n <= 8; ++n) {
    auto s = casimir_like_spectrum(t, n);
    CHECK(s.factored);
    CHECK(s.diagonalizable);
    std::map<GaussianRational, int, GaussLess> expect;
    bool singular = false;
    for (long m = -n; m <= n; m += 2) {
      GaussianRational ev = GaussianRational(make_rational(n * n, 2)) + g(n) -
                            GaussianRational(make_rational(3 * m * m, 2));
      ++expect[ev];
      if (ev.is_zero()) singular = true;
    }
    CHECK(s.invertible == !singular);
    CHECK((n == 0 || n == 1 || n == 6) == singular);
    REQUIRE(s.eigenvalues.size() == expect.size());
    for (auto& [r, mult] : s.eigenvalues) {
      auto it = expect.find(r);
      REQUIRE(it != expect.end());
      CHECK(it->second == mult);
    }
  }
}

TEST_CASE("casimir spectrum is triple independent") {
  Sl2Triple a = sl2_triple(v2(1, 0), v2(0, 1));
  Sl2Triple b = sl2_triple(v2(1, 2, 0, 1), v2(3, 5));
  for (long n = 0; n <= 4; ++n) {
    auto sa = casimir_like_spectrum(a, n), sb = casimir_like_spectrum(b, n);
    CHECK(sa.charpoly == sb.charpoly);
    CHECK(sa.eigenvalues == sb.eigenvalues);
    CHECK(sb.factored);
    CHECK(sb.diagonalizable);
  }
}

TEST_CASE("quadratic bracket operators compose like the triple") {
  // {xi^2,{eta^2,u}} + {eta^2,{xi^2,u}} + 4{xi.eta,{xi.eta,u}}
  //   = -4<xi,eta>^2 (ef + fe - h^2) u
  CVec2 xi = v2(2, -1, 1, 0), eta = v2(1, 1);
  GaussianRational s = symplectic(xi, eta);
  PolyV px = PolyV::linear(xi), pe = PolyV::linear(eta);
  Sl2Triple t = sl2_triple(xi, eta);
  for (long n = 1; n <= 4; ++n) {
    QMatrix bxx = bracket_matrix(px * px, n), bee = bracket_matrix(pe * pe, n),
            bxe = bracket_matrix(px * pe, n);
    QMatrix lhs = bxx * bee + bee * bxx + GaussianRational(4) * (bxe * bxe);
    QMatrix rhs = (GaussianRational(-4) * (s * s)) * casimir_like_spectrum(t, n).matrix;
    CHECK(lhs == rhs);
  }
}
