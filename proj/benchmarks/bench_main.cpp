// Microbenchmarks for the hot paths: weight-table construction, the
// quadratic collision term, and the chaos-coupled right-hand side.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "boltspec/gpc.hpp"
#include "boltspec/weights.hpp"

using namespace boltspec;

namespace {

SpectralField random_hermitian(const Domain& dom, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  SpectralField f(dom, true);
  for (int n1 = 0; n1 <= dom.N; ++n1)
    for (int n2 = -dom.N; n2 <= dom.N; ++n2) {
      if (n1 == 0 && n2 < 0) continue;
      const cplx c(unif(rng), (n1 == 0 && n2 == 0) ? 0.0 : unif(rng));
      f.at(n1, n2) = c;
      f.at(-n1, -n2) = std::conj(c);
    }
  return f;
}

const WeightTable& table_for(int N) {
  static std::map<int, WeightTable> cache;
  auto it = cache.find(N);
  if (it == cache.end()) {
    const Domain dom = Domain::from_support(2, 3.0, N);
    const KernelSpec spec = KernelSpec::maxwell(dom.R);
    it = cache.emplace(N, precompute_weights(spec, dom,
                                             QuadratureRule::make(dom)))
             .first;
  }
  return it->second;
}

}  // namespace

static void BM_PrecomputeWeights(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const Domain dom = Domain::from_support(2, 3.0, N);
  const KernelSpec spec = KernelSpec::maxwell(dom.R);
  const QuadratureRule quad = QuadratureRule::make(dom);
  for (auto _ : state) {
    benchmark::DoNotOptimize(precompute_weights(spec, dom, quad));
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_PrecomputeWeights)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_CollisionRhs(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const WeightTable& G = table_for(N);
  const SpectralField f = random_hermitian(G.domain, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(collision_rhs(G, f));
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_CollisionRhs)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_GpcRhs(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const int N = 6;
  const WeightTable& G = table_for(N);
  const QuadratureRule quad = QuadratureRule::make(G.domain, K);
  const STensor S = build_s_tensor(RandomFactor::affine(0.5), K, quad);
  GpcField F(G.domain, K);
  for (int k = 0; k <= K; ++k) F.modes[k] = random_hermitian(G.domain, 30 + k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gpc_collision_rhs(G, S, F));
  }
  state.SetComplexityN(K);
}
BENCHMARK(BM_GpcRhs)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
