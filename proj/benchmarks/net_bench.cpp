#include <benchmark/benchmark.h>

#include "cham/net.hpp"
#include "cham/rng.hpp"

namespace {

cham::Canvas random_canvas(int h, int w, std::uint64_t seed) {
  cham::Canvas canvas(h, w);
  cham::Rng rng(seed);
  for (auto& b : canvas.rgb) b = static_cast<std::uint8_t>(rng.below(256));
  return canvas;
}

cham::ArchSpec desk_arch() {
  cham::ArchSpec arch;
  arch.input_h = 64;
  arch.input_w = 64;
  arch.conv_channels = {16, 32, 64};
  arch.hidden_dim = 128;
  arch.num_classes = 5;
  return arch;
}

void Forward(benchmark::State& state) {
  const auto params = cham::init_model(desk_arch(), 1);
  const auto canvas = random_canvas(64, 64, 2);
  for (auto _ : state) {
    auto logits = cham::forward(params, canvas);
    benchmark::DoNotOptimize(logits.data());
  }
}
BENCHMARK(Forward);

void LossAndGrads(benchmark::State& state) {
  const auto params = cham::init_model(desk_arch(), 1);
  std::vector<cham::CompositeSample> batch;
  for (int i = 0; i < static_cast<int>(state.range(0)); ++i) {
    cham::CompositeSample s;
    s.variant = cham::Variant::joint;
    s.canvases = {random_canvas(64, 64, 10 + i), random_canvas(64, 64, 100 + i)};
    s.label = i % 5;
    s.presence = {true, true};
    batch.push_back(std::move(s));
  }
  for (auto _ : state) {
    auto [loss, grads] = cham::loss_and_grads(params, batch);
    benchmark::DoNotOptimize(loss);
    benchmark::DoNotOptimize(grads.data());
  }
  state.SetItemsProcessed(state.iterations() * batch.size() * 2);  // canvases per pass
}
BENCHMARK(LossAndGrads)->Arg(8)->Unit(benchmark::kMillisecond);

void SaliencyMap(benchmark::State& state) {
  const auto params = cham::init_model(desk_arch(), 1);
  const auto canvas = random_canvas(64, 64, 3);
  for (auto _ : state) {
    auto map = cham::saliency_map(params, canvas, 0);
    benchmark::DoNotOptimize(map.data());
  }
}
BENCHMARK(SaliencyMap);

}  // namespace
