#include <array>
#include <cmath>
#include <cstddef>

#include <benchmark/benchmark.h>

#include "swiptrc/channel.hpp"
#include "swiptrc/optimizers.hpp"
#include "swiptrc/protocols.hpp"
#include "swiptrc/specfun.hpp"

namespace {

using namespace swiptrc;

// Line topology with the relay three sevenths of the way to the destination.
ChannelState reference_channel() {
  ChannelState ch;
  ch.h_sd = 1.0;
  ch.h_sr = 2401.0 / 81.0;
  ch.h_rd = 2401.0 / 256.0;
  ch.sigma_a2 = 1.0;
  ch.sigma_b2 = 1.0;
  ch.sigma_d2 = 2.0;
  return ch;
}

SystemParams reference_system(double epsilon) {
  return SystemParams{10.0, 1.0, epsilon};
}

// Cycling through a handful of arguments keeps the branch predictor honest
// without letting the compiler hoist a single evaluation out of the loop.

void bm_lambert_w0(benchmark::State& state) {
  static const std::array<double, 8> xs = {
      -0.3, -0.05, 0.2, 1.0, 6.5, 120.0, 3.0e4, 1.0e9};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w(WBranch::Principal, xs[i++ & 7]));
  }
}
BENCHMARK(bm_lambert_w0);

void bm_lambert_wm1(benchmark::State& state) {
  static const std::array<double, 8> xs = {
      -0.36, -0.3, -0.2, -0.1, -0.02, -1e-3, -1e-6, -1e-12};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w(WBranch::Lower, xs[i++ & 7]));
  }
}
BENCHMARK(bm_lambert_wm1);

void bm_lambert_w0_of_exp(benchmark::State& state) {
  static const std::array<double, 8> xs = {
      -5.0, 0.0, 10.0, 80.0, 700.0, 5e3, 1e5, 1e8};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w0_of_exp(xs[i++ & 7]));
  }
}
BENCHMARK(bm_lambert_w0_of_exp);

void bm_lambert_wm1_of_neg_exp(benchmark::State& state) {
  static const std::array<double, 8> xs = {
      -1.0, -1.5, -3.0, -10.0, -50.0, -300.0, -700.0, -1e4};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_wm1_of_neg_exp(xs[i++ & 7]));
  }
}
BENCHMARK(bm_lambert_wm1_of_neg_exp);

void bm_rate_ideal(benchmark::State& state) {
  const RateCoefficients k =
      coefficients(reference_channel(), reference_system(1e-3));
  double lambda = 0.30;
  for (auto _ : state) {
    lambda = lambda < 0.9 ? lambda + 1e-3 : 0.30;
    benchmark::DoNotOptimize(
        rate_ideal(lambda, ReceivingMethod::InfoAccumulation, k));
  }
}
BENCHMARK(bm_rate_ideal);

void bm_rate_ps(benchmark::State& state) {
  const ChannelState ch = reference_channel();
  const SystemParams sys = reference_system(1e-3);
  double lambda = 0.30;
  for (auto _ : state) {
    lambda = lambda < 0.9 ? lambda + 1e-3 : 0.30;
    benchmark::DoNotOptimize(
        rate_ps(lambda, 0.4, ReceivingMethod::InfoAccumulation, ch, sys));
  }
}
BENCHMARK(bm_rate_ps);

void bm_rate_ts(benchmark::State& state) {
  const ChannelState ch = reference_channel();
  const SystemParams sys = reference_system(1e-3);
  double a1 = 0.50;
  for (auto _ : state) {
    a1 = a1 < 0.7 ? a1 + 1e-3 : 0.50;
    const std::array<double, 3> alpha = {a1, 0.08, 1.0 - a1 - 0.08};
    benchmark::DoNotOptimize(
        rate_ts(alpha, ReceivingMethod::InfoAccumulation, ch, sys));
  }
}
BENCHMARK(bm_rate_ts);

void bm_optimize_ideal(benchmark::State& state) {
  const RateCoefficients k =
      coefficients(reference_channel(), reference_system(1e-3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        optimize_ideal(k, ReceivingMethod::InfoAccumulation));
  }
}
BENCHMARK(bm_optimize_ideal);

// range(0) is the scan resolution exponent: 2 -> epsilon 1e-2, 3 -> 1e-3.

void bm_optimize_ps(benchmark::State& state) {
  const ChannelState ch = reference_channel();
  const SystemParams sys =
      reference_system(std::pow(10.0, -static_cast<double>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        optimize_ps(ch, sys, ReceivingMethod::InfoAccumulation));
  }
}
BENCHMARK(bm_optimize_ps)->Arg(2)->Arg(3);

void bm_optimize_ts(benchmark::State& state) {
  const ChannelState ch = reference_channel();
  const SystemParams sys =
      reference_system(std::pow(10.0, -static_cast<double>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        optimize_ts(ch, sys, ReceivingMethod::InfoAccumulation));
  }
}
BENCHMARK(bm_optimize_ts)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
