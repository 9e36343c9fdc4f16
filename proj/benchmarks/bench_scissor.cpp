#include <benchmark/benchmark.h>

#include "scissor/classifier.hpp"
#include "scissor/features.hpp"
#include "scissor/generator.hpp"
#include "scissor/simulator.hpp"

namespace {

using namespace scissor;

const std::vector<TestCase>& corpus() {
  static const std::vector<TestCase> tests = [] {
    GeneratorConfig cfg = default_generator_config();
    cfg.seed = 404;
    return generate(cfg, 200).tests;
  }();
  return tests;
}

void BM_Generate(benchmark::State& state) {
  GeneratorConfig cfg = default_generator_config();
  cfg.seed = 1;
  for (auto _ : state) {
    auto result = generate(cfg, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(result.tests.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(10)->Arg(100);

void BM_Polyline(benchmark::State& state) {
  const auto& tests = corpus();
  std::size_t i = 0;
  for (auto _ : state) {
    auto pts = polyline(tests[i++ % tests.size()], 1.0);
    benchmark::DoNotOptimize(pts.data());
  }
}
BENCHMARK(BM_Polyline);

void BM_Simulate(benchmark::State& state) {
  const auto& tests = corpus();
  const DriverConfig driver = default_driver(1.5, 7);
  std::size_t i = 0;
  for (auto _ : state) {
    auto result = simulate(tests[i++ % tests.size()], driver);
    benchmark::DoNotOptimize(result.sim_duration_s);
  }
}
BENCHMARK(BM_Simulate);

void BM_ExtractFullRoad(benchmark::State& state) {
  const auto& tests = corpus();
  std::size_t i = 0;
  for (auto _ : state) {
    auto f = extract_full_road(tests[i++ % tests.size()]);
    benchmark::DoNotOptimize(f.length);
  }
}
BENCHMARK(BM_ExtractFullRoad);

void BM_TrainLogistic(benchmark::State& state) {
  const auto labeled = label_batch(corpus(), default_driver(1.5, 7));
  const Dataset d = assemble_full_road(labeled, "bench");
  Hyperparams hyper;
  hyper.max_iterations = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto model = train(ClassifierKind::Logistic, d, hyper, 3);
    benchmark::DoNotOptimize(model.active_features.data());
  }
}
BENCHMARK(BM_TrainLogistic)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_TrainForest(benchmark::State& state) {
  const auto labeled = label_batch(corpus(), default_driver(1.5, 7));
  const Dataset d = assemble_full_road(labeled, "bench");
  Hyperparams hyper;
  hyper.n_trees = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto model = train(ClassifierKind::RandomForest, d, hyper, 3);
    benchmark::DoNotOptimize(model.active_features.data());
  }
}
BENCHMARK(BM_TrainForest)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
