#include "CLI11.hpp"

#include "wpi/config.hpp"
#include "wpi/cover.hpp"
#include "wpi/dop.hpp"
#include "wpi/enveloping.hpp"
#include "wpi/gmod.hpp"
#include "wpi/lattice.hpp"
#include "wpi/poisson.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace wpi;

struct Options {
  std::string embedding_path, module_path, suite, out;
  unsigned long long seed = 20;
  long trials = 0;       // 0: suite default
  long long radius = -1;  // -1: suite default
  long order = 5;
};

// All randomness flows from here; plain modulo keeps draws identical across
// platforms.
struct Rng {
  std::mt19937_64 g;
  explicit Rng(unsigned long long seed) : g(seed) {}
  long long range(long long lo, long long hi) {
    return lo + (long long)(g() % (unsigned long long)(hi - lo + 1));
  }
  LatticePoint point(int n, long long radius) {
    std::vector<long long> c(static_cast<size_t>(n));
    for (long long& v : c) v = range(-radius, radius);
    return LatticePoint(std::move(c));
  }
  LatticePoint nonzero_point(int n, long long radius) {
    for (;;) {
      LatticePoint p = point(n, radius);
      if (!p.is_zero()) return p;
    }
  }
};

struct Report {
  std::ostringstream os;
  bool pass = true;
  void line(const std::string& s) { os << s << "\n"; }
  void raw(const std::string& s) { os << s; }
  void fail(const std::string& s) {
    pass = false;
    os << "FAIL " << s << "\n";
  }
};

void emit_header(Report& r, const std::string& cmd, const Options& o, const LatticeEmbedding& e) {
  r.line("wpi " + cmd);
  r.line(
      "convention: components indexed by lattice points; the component at k carries weight "
      "base + pi(k); the symbol at lambda moves k to k + lambda");
  std::string imgs = "embedding:";
  for (int i = 0; i < e.rank(); ++i) imgs += " " + to_string(e.image(i));
  r.line(imgs);
  r.line("seed=" + std::to_string(o.seed) + " trials=" + std::to_string(o.trials) +
         " radius=" + std::to_string(o.radius) + " order=" + std::to_string(o.order));
}

int finish(const Report& r, const Options& o) {
  std::string body = r.os.str() + (r.pass ? "result: PASS\n" : "result: FAIL\n");
  std::cout << body;
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return 2;
    }
    f << body;
  }
  return r.pass ? 0 : 1;
}

struct SuiteCtx {
  EmbeddingRef emb;
  Options o;
  Rng rng;
  Report& rep;
};

CVec2 symbol_weight(SuiteCtx& c, long t) {
  CVec2 w = c.emb->embed(c.rng.point(c.emb->rank(), c.o.radius));
  if (t % 2) w += generic_coset(c.emb).base;
  return w;
}

void suite_jacobi(SuiteCtx& c) {
  long checked = 0;
  for (long t = 0; t < c.o.trials; ++t) {
    SymbolElement a = SymbolElement::symbol(symbol_weight(c, t));
    SymbolElement b = SymbolElement::symbol(symbol_weight(c, t + 1));
    SymbolElement d = SymbolElement::symbol(symbol_weight(c, t));
    SymbolElement res = s_bracket(s_bracket(a, b), d) + s_bracket(s_bracket(b, d), a) +
                        s_bracket(s_bracket(d, a), b);
    if (!res.is_zero())
      c.rep.fail("jacobi trial=" + std::to_string(t) + " residual=" + to_string(res));
    else
      ++checked;
  }
  c.rep.line("checked=" + std::to_string(checked));
}

void suite_leibniz(SuiteCtx& c) {
  long checked = 0;
  for (long t = 0; t < c.o.trials; ++t) {
    SymbolElement a = SymbolElement::symbol(symbol_weight(c, t));
    SymbolElement b = SymbolElement::symbol(symbol_weight(c, t + 1));
    SymbolElement d = SymbolElement::symbol(symbol_weight(c, t));
    SymbolElement res =
        s_bracket(a, s_product(b, d)) - s_product(s_bracket(a, b), d) - s_product(b, s_bracket(a, d));
    if (!res.is_zero())
      c.rep.fail("leibniz trial=" + std::to_string(t) + " residual=" + to_string(res));
    else
      ++checked;
  }
  c.rep.line("checked=" + std::to_string(checked));
}

void suite_mc(SuiteCtx& c) {
  long checked = 0;
  for (long t = 0; t < c.o.trials; ++t) {
    CVec2 lam = c.emb->embed(c.rng.point(c.emb->rank(), c.o.radius));
    CVec2 mu = c.emb->embed(c.rng.point(c.emb->rank(), c.o.radius));
    if (!ext_is_zero(mc_residual(lam, mu)))
      c.rep.fail("mc lam=" + to_string(lam) + " mu=" + to_string(mu));
    else
      ++checked;
  }
  c.rep.line("checked=" + std::to_string(checked));
}

void suite_diff_rel(SuiteCtx& c) {
  UAlgebra ua(c.emb);
  const int N = c.emb->rank();
  const std::vector<LatticePoint> grid = box_points(N, c.o.radius);
  long tuples = 0;
  for (const LatticePoint& a : grid)
    for (const LatticePoint& b : grid) {
      ++tuples;
      for (int ax = 0; ax < N; ++ax) {
        const LatticePoint xi = LatticePoint::unit(N, ax);
        for (int m = 1; m <= int(c.o.order); ++m) {
          UElement lhs = ua.differentiator({a, b, xi, m});
          UElement refl = ua.differentiator({a - (long long)m * xi, b + (long long)m * xi, -xi, m});
          if (m % 2) refl = -refl;
          if (lhs != refl)
            c.rep.fail("reflection a=" + to_string(a) + " b=" + to_string(b) +
                       " axis=" + std::to_string(ax) + " m=" + std::to_string(m));
          UElement rec =
              ua.differentiator({a, b, xi, m - 1}) - ua.differentiator({a - xi, b + xi, xi, m - 1});
          if (lhs != rec)
            c.rep.fail("recursion a=" + to_string(a) + " b=" + to_string(b) +
                       " axis=" + std::to_string(ax) + " m=" + std::to_string(m));
        }
      }
    }
  c.rep.line("tuples=" + std::to_string(tuples) + " orders=1.." + std::to_string(c.o.order));
}

void suite_bf_identity(SuiteCtx& c) {
  UAlgebra ua(c.emb);
  const int N = c.emb->rank();
  long checked = 0;
  for (long t = 0; t < c.o.trials; ++t) {
    LatticePoint al = c.rng.point(N, c.o.radius), be = c.rng.point(N, c.o.radius);
    LatticePoint ga = c.rng.point(N, c.o.radius), de = c.rng.point(N, c.o.radius);
    LatticePoint xi = c.rng.nonzero_point(N, 1);
    int m = int(c.rng.range(2, 3)), r = int(c.rng.range(2, 3));
    if (!verify_bf_identity(ua, al, be, ga, de, xi, m, r).is_zero())
      c.rep.fail("bf trial=" + std::to_string(t) + " m=" + std::to_string(m) +
                 " r=" + std::to_string(r));
    else
      ++checked;
  }
  long collinear = 0;
  for (long t = 0; t < 10; ++t) {
    LatticePoint al = c.rng.point(N, c.o.radius), be = c.rng.point(N, c.o.radius);
    LatticePoint de = c.rng.point(N, c.o.radius);
    LatticePoint xi = c.rng.nonzero_point(N, 1);
    LatticePoint ga = be + c.rng.range(-2, 2) * xi;
    int m = int(c.rng.range(2, 3)), r = int(c.rng.range(2, 3));
    UElement res = bf_identity_lhs(ua, al, be, ga, de, xi, m, r) -
                   bf_identity_rhs_collinear(ua, al, be, ga, de, xi, m, r);
    if (!res.is_zero())
      c.rep.fail("bf-collinear trial=" + std::to_string(t));
    else
      ++collinear;
  }
  c.rep.line("checked=" + std::to_string(checked) + " collinear=" + std::to_string(collinear));
}

ModuleVector random_vector(Rng& rng, const GradedModuleSpec& s, long long radius) {
  const int N = s.coset.emb->rank();
  const long n = s.fiber_dim() - 1;
  LatticePoint k = rng.point(N, radius);
  long j = rng.range(0, n);
  ModuleVector v = basis_vector(s, k, PolyV::monomial(n - j, j));
  v += basis_vector(s, rng.point(N, radius), PolyV::monomial(n, 0, GaussianRational(int(rng.range(1, 5)))));
  return v;
}

void suite_av_compat(SuiteCtx& c) {
  const Coset g = generic_coset(c.emb);
  const GradedModuleSpec kinds[] = {GradedModuleSpec::sgamma(g), GradedModuleSpec::mn(g, 2)};
  long checked = 0;
  for (long t = 0; t < c.o.trials; ++t) {
    const GradedModuleSpec& s = kinds[t % 2];
    const int N = c.emb->rank();
    LatticePoint lam = c.rng.point(N, c.o.radius), mu = c.rng.point(N, c.o.radius);
    ModuleVector v = random_vector(c.rng, s, c.o.radius);
    if (!av_compatibility_residual(s, lam, mu, v).is_zero())
      c.rep.fail("av trial=" + std::to_string(t) + " lam=" + to_string(lam) +
                 " mu=" + to_string(mu));
    else
      ++checked;
  }
  c.rep.line("checked=" + std::to_string(checked) + " kinds=sgamma,mn");
}

void suite_omega(SuiteCtx& c) {
  const Coset g = generic_coset(c.emb);
  const int N = c.emb->rank();
  long checked = 0;
  for (long n = 0; n <= 4; ++n) {
    const GradedModuleSpec s = GradedModuleSpec::mn(g, n);
    for (long t = 0; t < c.o.trials; ++t) {
      LatticePoint delta = c.rng.point(N, c.o.radius);
      LatticePoint xi = c.rng.nonzero_point(N, c.o.radius);
      ModuleVector v = random_vector(c.rng, s, 1);
      if (!omega_apply(s, delta, LatticePoint::zero(N), xi, c.o.order, v).is_zero())
        c.rep.fail("omega n=" + std::to_string(n) + " delta=" + to_string(delta) +
                   " xi=" + to_string(xi));
      else
        ++checked;
    }
  }
  if (!c.rep.pass) {
    auto w = omega_witness_search(GradedModuleSpec::mn(g, 2), c.o.order);
    if (w) c.rep.line("witness: " + w->describe());
  }
  c.rep.line("checked=" + std::to_string(checked) + " fibers n=0..4");
}

void suite_d_comm(SuiteCtx& c) {
  const Coset g = generic_coset(c.emb);
  const int N = c.emb->rank();
  long checked = 0;
  for (long t = 0; t < c.o.trials; ++t) {
    const GradedModuleSpec s = GradedModuleSpec::mn(g, t % 4);
    LatticePoint at = c.rng.point(N, 1);
    LatticePoint lam = c.rng.point(N, c.o.radius), mu = c.rng.point(N, c.o.radius);
    if (!dd_residual(s, at, lam, mu).is_zero())
      c.rep.fail("d-comm trial=" + std::to_string(t) + " lam=" + to_string(lam) +
                 " mu=" + to_string(mu));
    else
      ++checked;
  }
  long interpolated = 0;
  for (long n = 0; n <= 4; ++n) {
    try {
      extract_p_table(GradedModuleSpec::mn(g, n), LatticePoint::zero(N), 2, c.o.seed);
      ++interpolated;
    } catch (const std::exception& e) {
      c.rep.fail(std::string("interpolation n=") + std::to_string(n) + ": " + e.what());
    }
  }
  c.rep.line("checked=" + std::to_string(checked) +
             " interpolated_degrees=" + std::to_string(interpolated));
}

void suite_p_relations(SuiteCtx& c) {
  const Coset g = generic_coset(c.emb);
  const int N = c.emb->rank();
  for (long n = 0; n <= 4; ++n) {
    PTable t = extract_p_table(GradedModuleSpec::mn(g, n), LatticePoint::zero(N), 2, c.o.seed);
    PRelationReport r = verify_p_relations(t);
    if (!r.ok())
      for (const PRelationViolation& v : r.violations)
        c.rep.fail("n=" + std::to_string(n) + " family=" + v.family + " k=" + to_string(v.k) +
                   " s=" + to_string(v.s));
    c.rep.line("n=" + std::to_string(n) + " pairs=" + std::to_string(r.pairs));
  }
}

void suite_p_actions(SuiteCtx& c) {
  const Coset g = generic_coset(c.emb);
  const int N = c.emb->rank();
  long offset = -1;
  bool offset_uniform = true;
  for (long n = 0; n <= 4; ++n) {
    const GradedModuleSpec s = GradedModuleSpec::mn(g, n);
    PTable t = extract_p_table(s, LatticePoint::zero(N), 2, c.o.seed);
    const long dim = t.dim;
    const QMatrix id = QMatrix::identity(int(dim));
    if (t.get(LatticePoint::zero(N)) != symplectic(rho(), g.base) * id)
      c.rep.fail("constant coefficient n=" + std::to_string(n));
    for (int i = 0; i < N; ++i) {
      const CVec2 gi = c.emb->image(i);
      QMatrix expect = symplectic(gi, g.base + rho()) * id +
                       GaussianRational(make_rational(1, 2)) *
                           bracket_matrix(PolyV::linear(gi) * PolyV::linear(rho()), n);
      if (t.get(LatticePoint::unit(N, i)) != expect)
        c.rep.fail("linear coefficient n=" + std::to_string(n) + " axis=" + std::to_string(i));
      for (int j = i; j < N; ++j) {
        QMatrix quad = bracket_matrix(PolyV::linear(gi) * PolyV::linear(c.emb->image(j)), n);
        if (t.get(LatticePoint::unit(N, i) + LatticePoint::unit(N, j)) != quad)
          c.rep.fail("quadratic coefficient n=" + std::to_string(n) + " axes=" +
                     std::to_string(i) + "," + std::to_string(j));
      }
    }
    Classification cl = classify(t);
    if (offset == -1) offset = cl.convention_offset;
    if (cl.convention_offset != offset) offset_uniform = false;
  }
  if (!offset_uniform) c.rep.fail("convention offset differs across fixtures");
  c.rep.line("convention_offset=" + std::to_string(offset) + " uniform=" +
             (offset_uniform ? "yes" : "no"));
}

void suite_structural_maps(SuiteCtx& c) {
  StructuralMapsReport r = structural_maps_check(*c.emb);
  if (!r.tau_ok) c.rep.fail("degree map");
  if (!r.eta_ok) c.rep.fail("quadratic symbol map");
  if (!r.pi_star_ok) c.rep.fail("pushforward");
  if (!r.phi_ok) c.rep.fail("splitting map");
  c.rep.line(std::string("tau=") + (r.tau_ok ? "ok" : "bad") + " eta=" + (r.eta_ok ? "ok" : "bad") +
             " pi_star=" + (r.pi_star_ok ? "ok" : "bad") + " phi=" + (r.phi_ok ? "ok" : "bad"));
}

void suite_m1_sequence(SuiteCtx& c) {
  M1Report r = m1_sequence_check(generic_coset(c.emb), Window::cube(c.emb->rank(), c.o.radius));
  if (!r.embed_ok) c.rep.fail("scalar submodule embedding");
  if (!r.quotient_ok) c.rep.fail("scalar quotient");
  if (r.splits) c.rep.fail("unexpected invariant complement");
  c.rep.line(std::string("embed=") + (r.embed_ok ? "true" : "false") +
             " quotient=" + (r.quotient_ok ? "true" : "false") +
             " splits=" + (r.splits ? "true" : "false"));
}

void suite_dual_pairing(SuiteCtx& c) {
  const CVec2 base = generic_coset(c.emb).base;
  const int N = c.emb->rank();
  long checked = 0;
  for (const LatticePoint& lam : box_points(N, c.o.radius))
    for (const LatticePoint& mu : box_points(N, c.o.radius)) {
      const LatticePoint nu = -(lam + mu);
      if (!dual_pairing_invariance(*c.emb, base, lam, mu, nu).is_zero())
        c.rep.fail("dual-pairing lam=" + to_string(lam) + " mu=" + to_string(mu));
      else
        ++checked;
    }
  c.rep.line("checked=" + std::to_string(checked));
}

void suite_tensor_params(SuiteCtx& c) {
  const Coset g = generic_coset(c.emb);
  const int N = c.emb->rank();
  long checked = 0;
  std::vector<LatticePoint> dirs;
  for (int i = 0; i < N; ++i) dirs.push_back(LatticePoint::unit(N, i));
  dirs.push_back(LatticePoint::unit(N, 0) + LatticePoint::unit(N, 1));
  for (const LatticePoint& xi : dirs) {
    if (symplectic(rho(), c.emb->embed(xi)).is_zero()) continue;
    for (long n = 0; n <= 3; ++n) {
      const CVec2 mu = g.base + c.emb->embed(LatticePoint::unit(N, 0));
      tensor_parameters(g, mu, xi, n);
      for (long m = -2; m <= 2; ++m)
        for (long k = -2; k <= 2; ++k) {
          if (!tensor_action_residual(g, mu, xi, n, m, k).is_zero())
            c.rep.fail("tensor xi=" + to_string(xi) + " n=" + std::to_string(n) +
                       " m=" + std::to_string(m) + " k=" + std::to_string(k));
          else
            ++checked;
        }
    }
  }
  c.rep.line("checked=" + std::to_string(checked));
}

struct SuiteEntry {
  long trials;
  long long radius;
  void (*run)(SuiteCtx&);
};

const std::map<std::string, SuiteEntry>& suite_table() {
  static const std::map<std::string, SuiteEntry> table = {
      {"jacobi", {200, 3, suite_jacobi}},
      {"leibniz", {200, 3, suite_leibniz}},
      {"mc", {100, 3, suite_mc}},
      {"diff-rel", {0, 1, suite_diff_rel}},
      {"bf-identity", {50, 2, suite_bf_identity}},
      {"av-compat", {100, 2, suite_av_compat}},
      {"omega-annihilate", {20, 2, suite_omega}},
      {"d-comm", {100, 3, suite_d_comm}},
      {"p-relations", {0, 0, suite_p_relations}},
      {"p-actions", {0, 0, suite_p_actions}},
      {"structural-maps", {0, 0, suite_structural_maps}},
      {"m1-sequence", {0, 2, suite_m1_sequence}},
      {"dual-pairing", {0, 2, suite_dual_pairing}},
      {"tensor-params", {0, 0, suite_tensor_params}},
  };
  return table;
}

EmbeddingRef resolve_embedding(const Options& o) {
  if (o.embedding_path.empty()) return demo_embedding();
  return load_embedding(o.embedding_path);
}

int cmd_lattice_check(Options o) {
  EmbeddingRef e = resolve_embedding(o);
  if (o.radius < 0) o.radius = 8;
  Report rep;
  emit_header(rep, "lattice-check", o, *e);
  ConditionReport r = check_conditions(*e, o.radius);
  rep.raw(format_report(r));
  rep.pass = r.all_pass();
  return finish(rep, o);
}

int cmd_verify(Options o) {
  const auto& table = suite_table();
  const auto it = table.find(o.suite);
  if (it == table.end()) {
    std::cerr << "error: unknown suite \"" << o.suite << "\"\n";
    return 2;
  }
  EmbeddingRef e = resolve_embedding(o);
  if (o.trials == 0) o.trials = it->second.trials;
  if (o.radius < 0) o.radius = it->second.radius;
  Report rep;
  emit_header(rep, "verify --suite " + o.suite, o, *e);
  SuiteCtx ctx{e, o, Rng(o.seed), rep};
  it->second.run(ctx);
  return finish(rep, o);
}

int cmd_classify(Options o) {
  EmbeddingRef e = resolve_embedding(o);
  if (o.radius < 0) o.radius = 0;
  GradedModuleSpec s = load_module_spec(o.module_path, e);
  Report rep;
  emit_header(rep, "classify", o, *e);
  try {
    Classification c = classify(s);
    rep.raw(format_classification(c));
  } catch (const std::runtime_error& err) {
    rep.fail(err.what());
  }
  return finish(rep, o);
}

int cmd_cover(Options o) {
  EmbeddingRef e = resolve_embedding(o);
  if (o.radius < 0) o.radius = 1;
  GradedModuleSpec s = o.module_path.empty() ? GradedModuleSpec::mn(generic_coset(e), 2)
                                             : load_module_spec(o.module_path, e);
  const int N = e->rank();
  Report rep;
  emit_header(rep, "cover", o, *e);
  GmodFixture f(s);
  CoverAudit a = boundedness_audit(f, s.fiber_dim(), o.order, box_points(N, o.radius));
  rep.raw(format_audit(a));
  if (!a.within_bound) rep.fail("rank exceeds spanning-set bound");
  for (const CoverAuditRow& r : a.rows)
    if (!r.stabilized) rep.fail("rank not stabilized at gamma=" + to_string(r.gamma));
  long reductions = 0;
  const Window probes = Window::cube(N, 1);
  for (const LatticePoint& alpha : box_points(N, 1)) {
    if (symplectic(rho(), f.weight(alpha)).is_zero()) continue;
    FixtureVector res =
        spanning_reduction_check(f, LatticePoint::zero(N), alpha, 0, 0, +1, o.order, probes);
    if (!fv_is_zero(res)) rep.fail("reduction residual at alpha=" + to_string(alpha));
    ++reductions;
    if (reductions >= 3) break;
  }
  rep.line("reductions_checked=" + std::to_string(reductions));
  return finish(rep, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact tools for lattice Witt algebras: condition audits, identity suites, "
               "module classification, cover audits"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* c, bool module_opt, bool module_required) {
    c->add_option("--embedding", o.embedding_path, "embedding config file (default: built-in demo)");
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--trials", o.trials, "number of randomized trials (0: suite default)");
    c->add_option("--radius", o.radius, "box radius for sweeps (-1: suite default)");
    c->add_option("--order", o.order, "operator order for order-sensitive suites");
    c->add_option("--out", o.out, "also write the report to this file");
    if (module_opt) {
      auto* m = c->add_option("--module", o.module_path, "module config file");
      if (module_required) m->required();
    }
  };

  CLI::App* lat = app.add_subcommand("lattice-check", "audit the embedding conditions");
  add_common(lat, false, false);
  CLI::App* ver = app.add_subcommand("verify", "run an identity-verification suite");
  add_common(ver, false, false);
  ver->add_option("--suite", o.suite, "suite name")->required();
  CLI::App* cls = app.add_subcommand("classify", "classify a module from its coefficient table");
  add_common(cls, true, true);
  CLI::App* cov = app.add_subcommand("cover", "windowed cover rank and reduction audit");
  add_common(cov, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (lat->parsed()) return cmd_lattice_check(o);
    if (ver->parsed()) return cmd_verify(o);
    if (cls->parsed()) return cmd_classify(o);
    if (cov->parsed()) return cmd_cover(o);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
