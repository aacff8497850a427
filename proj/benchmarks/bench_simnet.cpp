#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "netgames/simnet.hpp"

namespace netgames {
namespace {

void BM_Coincidence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(1);
  std::normal_distribution<double> d;
  std::vector<double> v(n), r(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = d(gen);
    r[i] = d(gen);
  }
  for (auto _ : state) benchmark::DoNotOptimize(coincidence(v, r, 2.0));
}
BENCHMARK(BM_Coincidence)->Arg(3)->Arg(50)->Arg(1000);

void BM_Network(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rows; ++i) labels.push_back("c" + std::to_string(i));
  FeatureMatrix m(labels, 50);
  std::mt19937_64 gen(2);
  std::normal_distribution<double> d;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < 50; ++c) m.at(r, c) = d(gen);
  }
  const auto z = standardize(m);
  for (auto _ : state) benchmark::DoNotOptimize(build_similarity_network(z, 1.0));
}
BENCHMARK(BM_Network)->Arg(20)->Arg(200);

}  // namespace
}  // namespace netgames
