// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "wear/learners/forest.hpp"
#include "wear/runner.hpp"
#include "wear/simulate.hpp"

namespace {

using namespace wear;

const MultiAnnotatedDataset& data() {
  static const auto d = generate(GeneratorSpec::experiment(2, 5000, 7));
  return d;
}

const FeatureMatrix& train_features() {
  static const FeatureMatrix f(data().features.values().topRows(2000));
  return f;
}

const Vector& train_labels() {
  static const Vector y = data().labels().head(2000);
  return y;
}

const ForestParams kForest{.n_trees = 100};

void BM_ForestFitSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_forest_reference(train_features(), train_labels(), kForest, RngStream(1, 0)));
  }
}

void BM_ForestFitParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_forest(train_features(), train_labels(), kForest, RngStream(1, 0)));
  }
}

const ForestModel& forest() {
  static const auto m = fit_forest(train_features(), train_labels(), kForest, RngStream(1, 0));
  return *m;
}

void BM_ForestPredictSerial(benchmark::State& state) {
  forest();
  for (auto _ : state) benchmark::DoNotOptimize(forest().predict_reference(data().features));
}

void BM_ForestPredictParallel(benchmark::State& state) {
  forest();
  for (auto _ : state) benchmark::DoNotOptimize(forest().predict(data().features));
}

void BM_RunExperiment(benchmark::State& state) {
  ExperimentConfig c;
  c.data = GeneratorSpec::experiment(3, 4000, 0);
  c.split = SplitSpec{0.25, 0.125, 0.625, 0};
  c.frameworks = {Framework::wear, Framework::raykar, Framework::arithmetic_mean, Framework::gold_standard};
  c.learners = {LearnerSpec::linear(), LearnerSpec::tree()};
  c.replications = 8;
  c.master_seed = 3;
  c.parallelism = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c));
}

}  // namespace

BENCHMARK(BM_ForestFitSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForestFitParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForestPredictSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForestPredictParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunExperiment)->Arg(1)->Arg(omp_get_num_procs())->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
