#include <benchmark/benchmark.h>

#include "sntg/graph.hpp"
#include "sntg/matrix.hpp"
#include "sntg/mlp.hpp"
#include "sntg/rng.hpp"
#include "sntg/synthetic.hpp"

namespace {

sntg::Matrix random_matrix(std::size_t rows, std::size_t cols, sntg::Rng& rng) {
  sntg::Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.normal();
  return m;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  sntg::Rng rng(1);
  const sntg::Matrix a = random_matrix(n, n, rng);
  const sntg::Matrix b = random_matrix(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sntg::matmul(a, b));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(2 * n * n * n));
}
BENCHMARK(BM_Matmul)->Arg(64)->Arg(128)->Arg(256);

void BM_ForwardBackward(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  sntg::Rng rng(2);
  sntg::MlpModel model = sntg::make_mlp(784, {256, 128}, 10, 0.1, rng);
  const sntg::Matrix x = random_matrix(batch, 784, rng);
  const sntg::Perturbation pert{0.1, 0.1, 0.2, true};
  for (auto _ : state) {
    sntg::Rng step_rng = rng.child(state.iterations());
    const sntg::ForwardTrace trace = sntg::forward(model, x, pert, step_rng);
    sntg::Matrix dlogits(batch, 10, 1.0 / static_cast<double>(batch));
    benchmark::DoNotOptimize(sntg::backward(model, trace, dlogits));
  }
}
BENCHMARK(BM_ForwardBackward)->Arg(100);

void BM_SntgLossGrad(benchmark::State& state) {
  sntg::Rng rng(3);
  const sntg::Matrix h = random_matrix(100, 100, rng);
  sntg::PairBatch pairs = sntg::sample_pairs(100, 50, rng);
  for (std::size_t p = 0; p < pairs.size(); ++p) pairs.w[p] = p % 2;
  sntg::Matrix dh(100, 100);
  for (auto _ : state) benchmark::DoNotOptimize(sntg::sntg_loss_grad(h, pairs, 1.0, dh));
}
BENCHMARK(BM_SntgLossGrad);

void BM_KnnGraph(benchmark::State& state) {
  sntg::Rng rng(4);
  const sntg::Dataset ds = sntg::gen_two_moons(1000, 0.05, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sntg::fixed_knn_graph(ds.features, 10));
}
BENCHMARK(BM_KnnGraph);

}  // namespace

BENCHMARK_MAIN();
