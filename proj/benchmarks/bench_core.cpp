#include <benchmark/benchmark.h>

#include "wpi/cover.hpp"
#include "wpi/dop.hpp"
#include "wpi/enveloping.hpp"
#include "wpi/gmod.hpp"
#include "wpi/lattice.hpp"
#include "wpi/poisson.hpp"

namespace {

using namespace wpi;

LatticePoint lp(std::vector<long long> c) { return LatticePoint(std::move(c)); }

void BM_SymbolBracket(benchmark::State& state) {
  EmbeddingRef e = demo_embedding();
  const long k = state.range(0);
  SymbolElement a, b;
  for (long i = 0; i < k; ++i) {
    a += SymbolElement::symbol(e->embed(lp({i, -i})), GaussianRational(int(i + 1)));
    b += SymbolElement::symbol(e->embed(lp({-i, 2 * i})), GaussianRational(int(i + 2)));
  }
  for (auto _ : state) {
    SymbolElement r = s_bracket(a, b);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SymbolBracket)->Arg(8)->Arg(32);

void BM_DifferentiatorNormalForm(benchmark::State& state) {
  UAlgebra ua(demo_embedding());
  const int m = int(state.range(0));
  const LatticePoint a = lp({1, -1}), b = lp({0, 2}), xi = lp({1, 0});
  for (auto _ : state) {
    UElement r = ua.differentiator({a, b, xi, m});
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_DifferentiatorNormalForm)->Arg(2)->Arg(4)->Arg(5);

void BM_CompositionIdentity(benchmark::State& state) {
  UAlgebra ua(demo_embedding());
  for (auto _ : state) {
    UElement r = verify_bf_identity(ua, lp({1, 0}), lp({0, 1}), lp({-1, 1}), lp({1, 1}),
                                    lp({1, 0}), 2, 2);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_CompositionIdentity);

void BM_PTableExtract(benchmark::State& state) {
  const Coset g = generic_coset(demo_embedding());
  const GradedModuleSpec s = GradedModuleSpec::mn(g, state.range(0));
  for (auto _ : state) {
    PTable t = extract_p_table(s, LatticePoint::zero(2), 2, 1);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_PTableExtract)->Arg(0)->Arg(2)->Arg(4);

void BM_Classify(benchmark::State& state) {
  const Coset g = generic_coset(demo_embedding());
  const GradedModuleSpec s = GradedModuleSpec::mn(g, 3);
  for (auto _ : state) {
    Classification c = classify(s);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_Classify);

void BM_CoverRank(benchmark::State& state) {
  const Coset g = generic_coset(demo_embedding());
  GmodFixture f(GradedModuleSpec::mn(g, state.range(0)));
  const Window probes = Window::cube(2, 1), gens = Window::cube(2, 2);
  for (auto _ : state) {
    CoverRankResult r = cover_rank(f, lp({0, 0}), probes, gens);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_CoverRank)->Arg(1)->Arg(3);

void BM_CasimirSpectrum(benchmark::State& state) {
  Sl2Triple t = sl2_triple(CVec2(GaussianRational(1), GaussianRational(0)),
                           CVec2(GaussianRational(0), GaussianRational(1)));
  for (auto _ : state) {
    CasimirSpectrum s = casimir_like_spectrum(t, state.range(0));
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_CasimirSpectrum)->Arg(4)->Arg(8);

void BM_ConditionAudit(benchmark::State& state) {
  EmbeddingRef e = demo_embedding();
  for (auto _ : state) {
    ConditionReport r = check_conditions(*e, state.range(0));
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ConditionAudit)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
