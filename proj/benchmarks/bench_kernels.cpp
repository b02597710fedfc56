#include <benchmark/benchmark.h>

#include "wmark/attacks.hpp"
#include "wmark/dct.hpp"
#include "wmark/dwt.hpp"
#include "wmark/rng.hpp"
#include "wmark/schemes.hpp"
#include "wmark/svd.hpp"

namespace {

wmark::RealMatrix random_image(std::size_t n, std::uint64_t seed) {
  wmark::SplitMix64 rng(seed);
  wmark::RealMatrix m(n, n);
  for (double& v : m.data()) v = 255.0 * rng.uniform01();
  return m;
}

void BM_SvdDecompose(benchmark::State& state) {
  const auto a = random_image(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    auto f = wmark::svd_decompose(a);
    benchmark::DoNotOptimize(f);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SvdDecompose)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_Dct2Forward(benchmark::State& state) {
  const auto x = random_image(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    auto y = wmark::dct2_forward(x);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_Dct2Forward)->Arg(64)->Arg(256);

void BM_Dwt2RoundTrip(benchmark::State& state) {
  const auto x = random_image(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    auto back = wmark::dwt2_inverse(wmark::dwt2_forward(x));
    benchmark::DoNotOptimize(back);
  }
}
BENCHMARK(BM_Dwt2RoundTrip)->Arg(256)->Arg(512);

void BM_EmbedExtract(benchmark::State& state) {
  const auto host = random_image(static_cast<std::size_t>(state.range(0)), 4);
  const auto wm = random_image(static_cast<std::size_t>(state.range(0)) / 2, 5);
  const auto scheme = state.range(1) == 0 ? wmark::SchemeId::kDwtSvd
                                          : wmark::SchemeId::kDwtDctSvd;
  for (auto _ : state) {
    auto em = wmark::embed(scheme, host, wm);
    auto ex = wmark::extract(em.watermarked, em.key);
    benchmark::DoNotOptimize(ex);
  }
}
BENCHMARK(BM_EmbedExtract)->Args({256, 0})->Args({256, 1})->Args({512, 0})->Args({512, 1});

void BM_MedianAttack(benchmark::State& state) {
  const auto image = random_image(512, 6);
  const wmark::AttackSpec spec{wmark::MedianParams{3}, 0};
  for (auto _ : state) {
    auto out = wmark::apply_attack(image, spec);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_MedianAttack);

}  // namespace

BENCHMARK_MAIN();
