#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wpi/lattice.hpp"

#include <set>

using namespace wpi;

namespace {

LatticePoint lp(std::initializer_list<long long> v) { return LatticePoint(std::vector<long long>(v)); }

}  // namespace

TEST_CASE("lattice point arithmetic and norms") {
  LatticePoint a = lp({2, -3});
  CHECK(a.maxnorm() == 3);
  CHECK(a.l1norm() == 5);
  CHECK((a + lp({1, 1})) == lp({3, -2}));
  CHECK((a - a).is_zero());
  CHECK((-a) == lp({-2, 3}));
  CHECK((2 * a) == lp({4, -6}));
  CHECK(LatticePoint::unit(3, 1) == lp({0, 1, 0}));
}

TEST_CASE("scan order is the canonical enumeration") {
  // 0 < 1 < -1 < 2 < -2 within a coordinate, shells by max-norm then 1-norm
  auto pts = box_points(1, 2);
  REQUIRE(pts.size() == 5);
  CHECK(pts[0] == lp({0}));
  CHECK(pts[1] == lp({1}));
  CHECK(pts[2] == lp({-1}));
  CHECK(pts[3] == lp({2}));
  CHECK(pts[4] == lp({-2}));

  auto pts2 = box_points(2, 1);
  REQUIRE(pts2.size() == 9);
  CHECK(pts2[0] == lp({0, 0}));
  // 1-norm 1 shell before 1-norm 2 shell
  CHECK(pts2[1] == lp({0, 1}));
  CHECK(pts2[2] == lp({0, -1}));
  CHECK(pts2[3] == lp({1, 0}));
  CHECK(pts2[4] == lp({-1, 0}));
  CHECK(pts2[5] == lp({1, 1}));
  CHECK(pts2[6] == lp({1, -1}));
  CHECK(pts2[7] == lp({-1, 1}));
  CHECK(pts2[8] == lp({-1, -1}));

  // box is exhaustive and duplicate-free
  auto pts3 = box_points(2, 3);
  CHECK(pts3.size() == 49);
  std::set<std::vector<long long>> seen;
  for (const auto& p : pts3) seen.insert(p.c);
  CHECK(seen.size() == 49);
}

TEST_CASE("embedding caches pairings") {
  EmbeddingRef e = demo_embedding();
  CHECK(e->rank() == 2);
  // <rho, pi(e1)> = 1, <rho, pi(e2)> = i, <pi(e1), pi(e2)> = 3
  CHECK(e->rho_pairing(0) == GaussianRational(1));
  CHECK(e->rho_pairing(1) == GaussianRational::i());
  CHECK(e->pairing(0, 1) == GaussianRational(3));
  CHECK(e->pairing(1, 0) == GaussianRational(-3));
  CHECK(e->pairing(0, 0) == GaussianRational(0));

  // embed is additive and matches the generator images
  CHECK(e->embed(lp({1, 0})) == e->image(0));
  CHECK(e->embed(lp({2, -1})) ==
        CVec2(GaussianRational(3), GaussianRational(Rational(5), Rational(-1))));

  // cached bilinear pairing agrees with the direct computation
  for (long long a1 = -2; a1 <= 2; ++a1)
    for (long long a2 = -2; a2 <= 2; ++a2)
      for (long long b1 = -2; b1 <= 2; ++b1)
        for (long long b2 = -2; b2 <= 2; ++b2) {
          LatticePoint a = lp({a1, a2}), b = lp({b1, b2});
          CHECK(e->symp(a, b) == symplectic(e->embed(a), e->embed(b)));
        }
}

TEST_CASE("coset membership") {
  EmbeddingRef e = demo_embedding();
  Coset g{CVec2(GaussianRational(make_rational(1, 2)), GaussianRational(make_rational(1, 3))), e};

  LatticePoint w;
  CHECK(coset_contains(g, g.base + e->embed(lp({2, -3})), &w));
  CHECK(w == lp({2, -3}));
  CHECK(coset_contains(g, g.base, &w));
  CHECK(w == lp({0, 0}));

  // -rho and -2rho avoid this generic coset
  CHECK(!coset_contains(g, -rho()));
  CHECK(!coset_contains(g, -(rho() + rho())));

  // non-membership by a fractional shift
  CHECK(!coset_contains(g, g.base + GaussianRational(make_rational(1, 2)) * e->image(0)));
}

TEST_CASE("conditions: demo embedding passes everything") {
  ConditionReport r = check_conditions(*demo_embedding(), 8);
  CHECK(r.injective);
  CHECK(r.all_pass());
  CHECK(r.find("injectivity").status == "holds");
  CHECK(r.find("i").status == "holds");
  CHECK(r.find("ii").status == "holds");
  CHECK(r.find("iii").status == "holds");
  CHECK(r.find("C").status == "verified-up-to-radius");
  CHECK(r.find("C-weak").status == "verified-up-to-radius");
  CHECK(r.radius == 8);
}

TEST_CASE("conditions: axis embedding fails the pairing sweep with the canonical witness") {
  ConditionReport r = check_conditions(*axis_embedding(), 8);
  CHECK(r.injective);
  CHECK(!r.all_pass());
  CHECK(r.find("i").status == "holds");
  CHECK(r.find("ii").status == "holds");
  CHECK(r.find("iii").status == "holds");
  CHECK(r.find("C").status == "fails");
  // <pi(a)+2rho, pi(b)> = i(a1+2)b2 - (a2 i + 2) b1 vanishes first at a=(-2,0), b=(0,1)
  CHECK(r.find("C").witness == "alpha=(-2, 0) beta=(0, 1)");
}

TEST_CASE("conditions: collinear embedding is degenerate") {
  ConditionReport r = check_conditions(*collinear_embedding(), 4);
  CHECK(!r.injective);
  CHECK(r.find("injectivity").status == "fails");
  // pi(2e1 - e2) = 0 is the primitive kernel relation
  CHECK(r.find("injectivity").witness == "pi(2, -1) = 0");
  CHECK(r.find("i").status == "fails");
  CHECK(r.find("iii").status == "fails");
  // 2rho = (2,2) = pi(e2) has an integer preimage
  CHECK(r.find("ii").status == "fails");
  CHECK(!r.all_pass());
}

TEST_CASE("report formatting is stable") {
  std::string s = format_report(check_conditions(*demo_embedding(), 3));
  CHECK(s ==
        "injectivity: holds\n"
        "condition i: holds\n"
        "condition ii: holds\n"
        "condition iii: holds\n"
        "condition C: verified-up-to-radius (radius 3)\n"
        "condition C-weak: verified-up-to-radius (radius 3)\n");
}
