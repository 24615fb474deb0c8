#include <benchmark/benchmark.h>

#include "setpack/generator.hpp"
#include "setpack/pricing.hpp"

namespace {

using namespace setpack;

const GeneratedInstance& fixture() {
  static const GeneratedInstance generated = [] {
    GeneratorParams params;
    params.n_superpixels = 1200;
    params.n_planted_cells = 30;
    params.cell_radius = 3.0;
    params.seed = 7;
    return generate_instance(params);
  }();
  return generated;
}

void BM_PriceAllSerial(benchmark::State& state) {
  const auto& instance = fixture().instance;
  Pricer pricer(instance);
  const auto duals = zero_duals(instance, 0);
  for (auto _ : state) {
    auto results = pricer.price_all_serial(duals, {});
    benchmark::DoNotOptimize(results);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(instance.size()));
}
BENCHMARK(BM_PriceAllSerial)->Unit(benchmark::kMillisecond);

void BM_PriceAllParallel(benchmark::State& state) {
  const auto& instance = fixture().instance;
  Pricer pricer(instance);
  const auto duals = zero_duals(instance, 0);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto results = pricer.price_all(duals, {}, threads);
    benchmark::DoNotOptimize(results);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(instance.size()));
}
BENCHMARK(BM_PriceAllParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
