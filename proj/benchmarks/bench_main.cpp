#include <benchmark/benchmark.h>

#include <random>

#include "fracdiff/baselines.hpp"
#include "fracdiff/diffusion.hpp"
#include "fracdiff/field.hpp"
#include "fracdiff/fracops.hpp"
#include "fracdiff/metrics.hpp"

namespace {

using namespace fracdiff;

Grid noise_image(int n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> d(0.0, 255.0);
  Grid g(n, n);
  for (double& v : g.values()) v = d(rng);
  return g;
}

void BM_Kernel1D(benchmark::State& state) {
  const TwoSidedKernel k(1.67, static_cast<int>(state.range(0)), 1.0);
  std::vector<double> signal(4096 + 2 * k.margin(), 1.0);
  std::vector<double> out(4096);
  for (auto _ : state) {
    apply_frac_derivative_1d(signal, k, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_Kernel1D)->Arg(5)->Arg(15)->Arg(30);

void BM_FracGradient(benchmark::State& state) {
  const Grid u = noise_image(static_cast<int>(state.range(0)));
  const TwoSidedKernel k(1.67, 15, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(frac_gradient(u, k));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(u.size()));
}
BENCHMARK(BM_FracGradient)->Arg(128)->Arg(512);

void BM_DiffusionStep(benchmark::State& state) {
  const Grid u = noise_image(static_cast<int>(state.range(0)));
  SolverConfig cfg;
  cfg.exec.workers = static_cast<int>(state.range(1));
  const SolverKernels k(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(diffusion_step(u, cfg, k.flux, k.detect));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(u.size()));
}
BENCHMARK(BM_DiffusionStep)->Args({256, 1})->Args({512, 1})->Args({512, 4})->Unit(benchmark::kMillisecond);

void BM_PeronaMalikStep(benchmark::State& state) {
  const Grid u = noise_image(512);
  for (auto _ : state) benchmark::DoNotOptimize(pm_baseline_step(u, EdgeStopping{}, 0.25));
}
BENCHMARK(BM_PeronaMalikStep)->Unit(benchmark::kMillisecond);

void BM_Ssim(benchmark::State& state) {
  const Grid a = noise_image(512);
  const Grid b = add_gaussian_noise(a, {10.0, 1});
  const auto mode = state.range(0) ? SsimMode::windowed : SsimMode::global;
  for (auto _ : state) benchmark::DoNotOptimize(ssim(a, b, mode));
}
BENCHMARK(BM_Ssim)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MedianFilter(benchmark::State& state) {
  const Grid u = noise_image(512);
  const auto spec = FilterSpec::median(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(median_filter(u, spec));
}
BENCHMARK(BM_MedianFilter)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
