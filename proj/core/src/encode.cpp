#include "cham/encode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cham {

void LayoutSpec::validate() const {
  if (pixels_per_word < 1) throw std::invalid_argument("LayoutSpec: pixels_per_word must be >= 1");
  if (block_scale < 1) throw std::invalid_argument("LayoutSpec: block_scale must be >= 1");
  if (grid_width < pixels_per_word)
    throw std::invalid_argument("LayoutSpec: grid_width must be >= pixels_per_word");
  if (max_words < 1) throw std::invalid_argument("LayoutSpec: max_words must be >= 1");
}

LayoutSpec make_layout(int dim, int block_scale, int grid_width, int max_words) {
  if (dim <= 0 || dim % 3 != 0)
    throw std::invalid_argument("make_layout: dim must be positive and divisible by 3");
  LayoutSpec layout;
  layout.pixels_per_word = dim / 3;
  layout.block_scale = block_scale;
  layout.grid_width = grid_width > 0 ? grid_width : layout.pixels_per_word;
  layout.max_words = max_words;
  layout.validate();
  return layout;
}

std::vector<std::uint8_t> normalize_vector(std::span<const double> v, double lo, double hi) {
  if (v.empty()) throw std::invalid_argument("normalize_vector: empty input");
  if (lo > hi) throw std::invalid_argument("normalize_vector: lo > hi");

  std::vector<std::uint8_t> out(v.size());
  if (lo == hi) {
    std::fill(out.begin(), out.end(), std::uint8_t{127});
    return out;
  }
  const double scale = 255.0 / (hi - lo);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = std::clamp(v[i], lo, hi);
    const double t = std::floor((x - lo) * scale + 0.5);  // round half up
    out[i] = static_cast<std::uint8_t>(std::clamp(t, 0.0, 255.0));
  }
  return out;
}

std::vector<Rgb> pack_rgb(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 3 != 0)
    throw std::invalid_argument("pack_rgb: length must be divisible by 3");
  std::vector<Rgb> out(bytes.size() / 3);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = {bytes[3 * i], bytes[3 * i + 1], bytes[3 * i + 2]};
  return out;
}

namespace {

void paint_block(Canvas& canvas, int logical_row, int logical_col, Rgb color, int scale) {
  const int y0 = logical_row * scale;
  const int x0 = logical_col * scale;
  for (int dy = 0; dy < scale; ++dy)
    for (int dx = 0; dx < scale; ++dx) canvas.set(y0 + dy, x0 + dx, color);
}

}  // namespace

EncodedText encode_text(const std::vector<std::string>& tokens, const EmbeddingTable& table,
                        const LayoutSpec& layout) {
  layout.validate();
  if (layout.pixels_per_word * 3 != table.dim)
    throw std::invalid_argument("encode_text: layout pixels_per_word does not match table dim");

  EncodedText enc;
  enc.layout = layout;
  enc.pixels = Canvas(layout.canvas_height(), layout.canvas_width(), layout.background);

  int row = 0;
  int col = 0;
  for (const auto& token : tokens) {
    if (enc.word_count == layout.max_words) break;
    const auto vec = table.lookup(token);
    if (!vec) {
      ++enc.skipped;
      continue;
    }
    const auto bytes = normalize_vector(*vec, table.global_min, table.global_max);
    const auto run = pack_rgb(bytes);
    if (col + layout.pixels_per_word > layout.grid_width) {
      ++row;
      col = 0;
    }
    for (std::size_t i = 0; i < run.size(); ++i)
      paint_block(enc.pixels, row, col + static_cast<int>(i), run[i], layout.block_scale);
    col += layout.pixels_per_word;
    ++enc.word_count;
  }
  return enc;
}

}  // namespace cham
