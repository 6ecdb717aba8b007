#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wpi/gmod.hpp"

using namespace wpi;

namespace {

LatticePoint lp(std::vector<long long> c) { return LatticePoint(std::move(c)); }

GaussianRational q(long num, long den = 1) { return GaussianRational(make_rational(num, den)); }

Coset demo_coset() { return generic_coset(demo_embedding()); }

}  // namespace

TEST_CASE("weight quadratic of (0, 1) is xy + 2y^2") {
  PolyV expect = PolyV::monomial(1, 1) + PolyV::monomial(0, 2, q(2));
  CHECK(weight_quadratic(CVec2(q(0), q(1))) == expect);
  CHECK(weight_quadratic(CVec2(q(0), q(1))) == expect);  // cached path
}

TEST_CASE("scalar module at base -rho has an invariant line") {
  Coset g{-rho(), demo_embedding()};
  GradedModuleSpec s = GradedModuleSpec::sgamma(g);
  ModuleVector v = basis_vector(s, lp({0, 0}), PolyV::monomial(0, 0));
  for (const auto& lam : box_points(2, 2)) {
    if (lam.is_zero()) continue;
    CHECK(act_v(s, lam, v).is_zero());
  }
}

TEST_CASE("degree-0 fibers act exactly like the scalar module") {
  Coset g = demo_coset();
  GradedModuleSpec m0 = GradedModuleSpec::mn(g, 0);
  GradedModuleSpec sg = GradedModuleSpec::sgamma(g);
  for (const auto& lam : box_points(2, 1)) {
    ModuleVector a = act_v(m0, lam, basis_vector(m0, lp({1, -1}), PolyV::monomial(0, 0)));
    ModuleVector b = act_v(sg, lam, basis_vector(sg, lp({1, -1}), PolyV::monomial(0, 0)));
    CHECK(a.comps == b.comps);
  }
}

TEST_CASE("degree-2 fiber action at the base weight") {
  // base (1/2, 1/3); first generator embeds to (0, 1); quadratic xy + 2y^2;
  // pairing term -5/3, bracket term -x^2 - 4xy
  Coset g = demo_coset();
  GradedModuleSpec s = GradedModuleSpec::mn(g, 2);
  ModuleVector v = basis_vector(s, lp({0, 0}), PolyV::monomial(2, 0));
  ModuleVector out = act_v(s, lp({1, 0}), v);
  PolyV expect = PolyV::monomial(2, 0, q(-8, 3)) + PolyV::monomial(1, 1, q(-4));
  REQUIRE(out.comps.size() == 1);
  CHECK(out.comps.at(lp({1, 0})) == expect);
}

TEST_CASE("grading operator is diagonal with weight pairing eigenvalue") {
  Coset g = demo_coset();
  GradedModuleSpec s = GradedModuleSpec::mn(g, 2);
  LatticePoint k = lp({2, -1});
  ModuleVector v = basis_vector(s, k, PolyV::monomial(1, 1));
  GaussianRational eig = symplectic(rho(), s.weight(k));
  CHECK(act_v(s, lp({0, 0}), v) == eig * v);
}

TEST_CASE("shift action composes to the identity") {
  Coset g = demo_coset();
  for (const GradedModuleSpec& s :
       {GradedModuleSpec::sgamma(g), GradedModuleSpec::mn(g, 2)}) {
    PolyV fib = s.kind == ModuleKind::Mn ? PolyV::monomial(1, 1) : PolyV::monomial(0, 0);
    ModuleVector v = basis_vector(s, lp({1, 1}), fib);
    CHECK(act_a(s, lp({0, 0}), v) == v);
    CHECK(act_a(s, lp({-2, 3}), act_a(s, lp({2, -3}), v)) == v);
  }
}

TEST_CASE("the two actions are compatible") {
  Coset g = demo_coset();
  struct Probe {
    LatticePoint lam, mu, at;
  };
  std::vector<Probe> probes = {
      {lp({1, 0}), lp({0, 1}), lp({0, 0})},
      {lp({-1, 2}), lp({1, 1}), lp({2, -1})},
      {lp({2, -2}), lp({-1, 0}), lp({-1, 1})},
  };
  for (const GradedModuleSpec& s :
       {GradedModuleSpec::sgamma(g), GradedModuleSpec::mn(g, 2)}) {
    PolyV fib = s.kind == ModuleKind::Mn ? PolyV::monomial(2, 0) : PolyV::monomial(0, 0);
    for (const auto& p : probes) {
      ModuleVector v = basis_vector(s, p.at, fib);
      CHECK(av_compatibility_residual(s, p.lam, p.mu, v).is_zero());
    }
  }
}

TEST_CASE("commutators close with the pairing coefficient") {
  Coset g = demo_coset();
  for (const GradedModuleSpec& s :
       {GradedModuleSpec::sgamma(g), GradedModuleSpec::mn(g, 3)}) {
    PolyV fib = s.kind == ModuleKind::Mn ? PolyV::monomial(1, 2) : PolyV::monomial(0, 0);
    ModuleVector v = basis_vector(s, lp({0, 0}), fib);
    for (const auto& lam : box_points(2, 1)) {
      for (const auto& mu : box_points(2, 1)) {
        CHECK(action_law_residual(s, lam, mu, v).is_zero());
      }
    }
  }
}

TEST_CASE("order-5 alternating operator annihilates fibers up to degree 4") {
  Coset g = demo_coset();
  for (long n = 0; n <= 4; ++n) {
    GradedModuleSpec s = GradedModuleSpec::mn(g, n);
    CHECK(!omega_witness_search(s, 5, 1).has_value());
  }
}

TEST_CASE("order-4 operator has a canonical nonzero witness on degree 2") {
  Coset g = demo_coset();
  GradedModuleSpec s = GradedModuleSpec::mn(g, 2);
  auto w = omega_witness_search(s, 4, 2);
  REQUIRE(w.has_value());
  CHECK(w->delta == lp({0, 0}));
  CHECK(w->xi == lp({0, 1}));
  CHECK(w->fiber == PolyV::monomial(2, 0));
  // honest nonzero residual behind the witness
  ModuleVector v = basis_vector(s, lp({0, 0}), w->fiber);
  CHECK(!omega_apply(s, w->delta, lp({0, 0}), w->xi, 4, v).is_zero());
  CHECK(w->describe() == "delta=(0, 0) xi=(0, 1) fiber=(1)*x^2");
}

TEST_CASE("index reduction of order 5 vanishes in both axis directions") {
  Coset g = demo_coset();
  GradedModuleSpec s = GradedModuleSpec::mn(g, 3);
  LatticePoint alpha = lp({1, -1}), gamma = lp({0, 2}), delta = lp({-1, 0});
  ModuleVector v = basis_vector(s, lp({1, 1}), PolyV::monomial(2, 1));
  for (int axis = 0; axis < 2; ++axis) {
    LatticePoint e = LatticePoint::unit(2, axis);
    CHECK(omega_apply(s, gamma + delta - alpha, lp({0, 0}), e, 5, v).is_zero());
    CHECK(omega_apply(s, gamma + delta - alpha, lp({0, 0}), -e, 5, v).is_zero());
  }
}

TEST_CASE("window span from a scalar seed at the fixed line stays put") {
  Coset g{-rho(), demo_embedding()};
  GradedModuleSpec s = GradedModuleSpec::sgamma(g);
  ModuleVector seed = basis_vector(s, lp({0, 0}), PolyV::monomial(0, 0));
  auto basis = submodule_window_span(s, seed, Window::cube(2, 2));
  CHECK(basis.size() == 1);
  CHECK(basis[0] == seed);
}

TEST_CASE("window span of a degree-2 seed fills every interior fiber") {
  Coset g = demo_coset();
  GradedModuleSpec s = GradedModuleSpec::mn(g, 2);
  ModuleVector seed = basis_vector(s, lp({0, 0}), PolyV::monomial(2, 0));
  Window w = Window::cube(2, 3);
  auto basis = submodule_window_span(s, seed, w);
  for (const auto& k : w.interior(unit_steps(2))) {
    CHECK(fiber_dimension_at(s, basis, k) == 3);
  }
}

TEST_CASE("degree-1 span from the distinguished seed stays on the embedded line") {
  Coset g = demo_coset();
  GradedModuleSpec s = GradedModuleSpec::mn(g, 1);
  CVec2 shift = q(3, 2) * rho();
  ModuleVector seed = basis_vector(s, lp({0, 0}), PolyV::linear(s.weight(lp({0, 0})) + shift));
  auto basis = submodule_window_span(s, seed, Window::cube(2, 2));
  CHECK(basis.size() > 1);
  for (const auto& v : basis) {
    for (const auto& [k, u] : v.comps) {
      CHECK(symplectic(u.as_vector(), s.weight(k) + shift).is_zero());
    }
  }
}

TEST_CASE("degree-1 sequence embeds, projects, and does not split") {
  Coset g = demo_coset();
  M1Report rep = m1_sequence_check(g, Window::cube(2, 2));
  CHECK(rep.embed_ok);
  CHECK(rep.quotient_ok);
  CHECK(!rep.splits);
  // the quotient functional kills the embedded fibers pointwise
  GradedModuleSpec s = GradedModuleSpec::mn(g, 1);
  CVec2 f = s.weight(lp({1, -2})) + q(3, 2) * rho();
  CHECK(symplectic(f, f).is_zero());
}

TEST_CASE("perturbing the embedding fiber breaks the sequence check") {
  Coset g = demo_coset();
  M1Report rep = m1_sequence_check(g, Window::cube(2, 2), CVec2(q(0), q(0)));
  CHECK(!rep.embed_ok);
}

TEST_CASE("dual pairing invariance residual vanishes on pairing triples") {
  auto e = demo_embedding();
  CVec2 base(q(1, 2), q(1, 3));
  struct Triple {
    LatticePoint lam, mu;
  };
  for (const auto& t : {Triple{lp({1, 0}), lp({0, 1})}, Triple{lp({-2, 1}), lp({1, 1})},
                        Triple{lp({3, -1}), lp({-1, -1})}}) {
    LatticePoint nu = -(t.lam + t.mu);
    CHECK(dual_pairing_invariance(*e, base, t.lam, t.mu, nu).is_zero());
  }
  // non-pairing weights do not interact at all
  CHECK(dual_pairing_invariance(*e, base, lp({1, 0}), lp({0, 1}), lp({0, 0})).is_zero());
}

TEST_CASE("tensor parameters along a direction") {
  Coset g = demo_coset();
  // <rho, pi(e1)> = 1 and mu = (-1, 0) pairs to 1 against the direction
  auto [a, b] = tensor_parameters(g, CVec2(q(-1), q(0)), lp({1, 0}), 0);
  CHECK(a == q(1));
  CHECK(b == q(0));
  auto [a0, b0] = tensor_parameters(g, CVec2(q(0), q(0)), lp({1, 0}), 0);
  CHECK(a0 == q(0));
  CHECK(tensor_parameters(g, g.base, lp({0, 1}), 2).first ==
        symplectic(rho(), g.base) * GaussianRational::i().inv());
  CHECK_THROWS_WITH_AS(tensor_parameters(Coset{CVec2(q(0), q(0)), collinear_embedding()},
                                         CVec2(q(1), q(0)), lp({1, 0}), 0),
                       "tensor_parameters: degenerate-direction", std::domain_error);
}

TEST_CASE("direct action matches the rank-one parameter form") {
  Coset g = demo_coset();
  CVec2 mu = g.base;
  LatticePoint xi = lp({0, 1});
  struct MK {
    long m, k;
  };
  for (const auto& t : {MK{1, 0}, MK{2, -1}, MK{-1, 3}, MK{0, 2}, MK{3, 1}}) {
    CHECK(tensor_action_residual(g, mu, xi, 2, t.m, t.k).is_zero());
  }
  CHECK(tensor_action_residual(g, CVec2(q(-1), q(5, 7)), lp({1, 0}), 3, 2, -2).is_zero());
}

TEST_CASE("twist cocycle satisfies the flatness equation") {
  std::vector<CVec2> weights = {
      CVec2(q(1), q(0)),
      CVec2(q(0), q(1)) + CVec2(GaussianRational::i(), q(0)),
      CVec2(q(-1, 2), q(3)),
      CVec2(q(2), q(-1)) + CVec2(q(0), GaussianRational::i() * q(1, 3)),
  };
  for (const auto& lam : weights)
    for (const auto& mu : weights) {
      CHECK(ext_is_zero(mc_residual(lam, mu)));
    }
}

TEST_CASE("extended bracket multiplies symbols and brackets fibers") {
  ExtElement a = mc_cocycle(CVec2(q(1), q(0)));
  ExtElement b = mc_cocycle(CVec2(q(0), q(1)));
  ExtElement br = ext_bracket(a, b);
  // symbol indices combine with the unit shift: (lam-rho) + (mu-rho) + rho
  REQUIRE(br.size() == 1);
  CHECK(br.begin()->first == CVec2(q(1), q(0)) + CVec2(q(0), q(1)) - rho());
}

TEST_CASE("fiber validation rejects degree mismatches") {
  Coset g = demo_coset();
  GradedModuleSpec s = GradedModuleSpec::mn(g, 2);
  CHECK_THROWS_AS(basis_vector(s, lp({0, 0}), PolyV::monomial(1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(GradedModuleSpec::mn(g, -1), std::invalid_argument);
  CHECK_THROWS_AS(Window({0, 0}, {-1, 0}), std::invalid_argument);
  ModuleVector stray = basis_vector(s, lp({5, 5}), PolyV::monomial(2, 0));
  CHECK_THROWS_AS(submodule_window_span(s, stray, Window::cube(2, 1)), std::invalid_argument);
}
