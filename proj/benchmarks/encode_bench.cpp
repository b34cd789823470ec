#include <benchmark/benchmark.h>

#include "cham/encode.hpp"
#include "cham/png.hpp"
#include "cham/rng.hpp"
#include "cham/text.hpp"

namespace {

cham::EmbeddingTable synthetic_table(int words, int dim) {
  cham::EmbeddingTable table;
  table.dim = dim;
  cham::Rng rng(1);
  for (int w = 0; w < words; ++w) {
    const std::string word = "w" + std::to_string(w);
    table.row_of.emplace(word, w);
    table.words.push_back(word);
    for (int d = 0; d < dim; ++d) table.vectors.push_back(rng.uniform(-1.0, 1.0));
  }
  table.global_min = -1.0;
  table.global_max = 1.0;
  return table;
}

void EncodeText(benchmark::State& state) {
  const auto table = synthetic_table(100, 36);
  const auto layout = cham::make_layout(36, 4, 16, 8);
  std::vector<std::string> tokens;
  for (int i = 0; i < 8; ++i) tokens.push_back("w" + std::to_string(i * 7 % 100));
  for (auto _ : state) {
    auto enc = cham::encode_text(tokens, table, layout);
    benchmark::DoNotOptimize(enc.pixels.rgb.data());
  }
}
BENCHMARK(EncodeText);

void NormalizeVector(benchmark::State& state) {
  const auto table = synthetic_table(1, static_cast<int>(state.range(0)));
  const auto row = table.row(0);
  for (auto _ : state) {
    auto bytes = cham::normalize_vector(row, table.global_min, table.global_max);
    benchmark::DoNotOptimize(bytes.data());
  }
}
BENCHMARK(NormalizeVector)->Arg(36)->Arg(300);

void PngRoundTrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  cham::Canvas canvas(n, n);
  cham::Rng rng(2);
  for (auto& b : canvas.rgb) b = static_cast<std::uint8_t>(rng.below(256));
  for (auto _ : state) {
    auto bytes = cham::encode_png(canvas);
    auto back = cham::decode_png(bytes);
    benchmark::DoNotOptimize(back.rgb.data());
  }
  state.SetBytesProcessed(state.iterations() * canvas.rgb.size());
}
BENCHMARK(PngRoundTrip)->Arg(64)->Arg(256);

void Tokenize(benchmark::State& state) {
  const std::string text =
      "The quick brown fox, jumping over 12 lazy dogs, kept tokenizing text all day long!";
  for (auto _ : state) {
    auto tokens = cham::tokenize(text);
    benchmark::DoNotOptimize(tokens.data());
  }
}
BENCHMARK(Tokenize);

}  // namespace
