#include <grudyn/catalog.hpp>
#include <grudyn/fixed_points.hpp>
#include <grudyn/model.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace grudyn;

namespace {

GruParams random_params(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 2.0);
  GruParams p = GruParams::zeros(d);
  for (Mat* m : {&p.Uz, &p.Ur, &p.Uh})
    for (Eigen::Index k = 0; k < m->size(); ++k) m->data()[k] = n(rng);
  for (Vec* b : {&p.bz, &p.br, &p.bh})
    for (Eigen::Index k = 0; k < b->size(); ++k) (*b)[k] = n(rng);
  return p;
}

void BM_VectorField(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const GruParams p = random_params(d, 1);
  const Vec h = Vec::Constant(d, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(vector_field(p, h));
}
BENCHMARK(BM_VectorField)->Arg(2)->Arg(16)->Arg(64);

void BM_Jacobian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const GruParams p = random_params(d, 2);
  const Vec h = Vec::Constant(d, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(jacobian(p, h));
}
BENCHMARK(BM_Jacobian)->Arg(2)->Arg(16)->Arg(64);

void BM_FindFixedPoints(benchmark::State& state) {
  const GruParams p = find_case("xxxvi").params;
  for (auto _ : state) benchmark::DoNotOptimize(find_fixed_points(p));
}
BENCHMARK(BM_FindFixedPoints)->Unit(benchmark::kMillisecond);

void BM_Bptt(benchmark::State& state) {
  DatasetConfig dc;
  dc.task = Task::fhn;
  dc.n = 200;
  const Dataset ds = generate_dataset(dc);
  const TrainedModel m = TrainedModel::random(static_cast<int>(state.range(0)), Task::fhn, 1);
  for (auto _ : state) benchmark::DoNotOptimize(loss_and_gradient(m, ds));
}
BENCHMARK(BM_Bptt)->Arg(2)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
