#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cham/embedding.hpp"
#include "cham/image.hpp"

namespace cham {

struct LayoutSpec {
  int pixels_per_word = 12;  // embedding dim / 3
  int block_scale = 4;       // each logical pixel rendered as an NxN square
  int grid_width = 16;       // logical pixels per row
  int max_words = 8;
  Rgb background = {0, 0, 0};

  void validate() const;
  int words_per_row() const { return grid_width / pixels_per_word; }
  int logical_rows() const {
    return (max_words + words_per_row() - 1) / words_per_row();
  }
  int canvas_height() const { return logical_rows() * block_scale; }
  int canvas_width() const { return grid_width * block_scale; }
};

// grid_width 0 picks one word per row.
LayoutSpec make_layout(int dim, int block_scale = 4, int grid_width = 0, int max_words = 8);

struct EncodedText {
  Canvas pixels;       // canvas_height() x canvas_width(), after block scaling
  int word_count = 0;  // words actually encoded
  int skipped = 0;     // out-of-vocabulary tokens dropped
  LayoutSpec layout;
};

// Affine map onto [0,255] with round-half-up; inputs marginally outside
// [lo,hi] are clamped first, and lo == hi maps every component to 127.
std::vector<std::uint8_t> normalize_vector(std::span<const double> v, double lo, double hi);

// Consecutive byte triples become RGB pixels; length must be divisible by 3.
std::vector<Rgb> pack_rgb(std::span<const std::uint8_t> bytes);

// Each in-vocabulary token becomes a run of pixels_per_word logical pixels,
// normalized against the table's global range. Words are laid out
// left-to-right and wrap to the next row rather than straddle one;
// out-of-vocabulary tokens are skipped and counted.
EncodedText encode_text(const std::vector<std::string>& tokens, const EmbeddingTable& table,
                        const LayoutSpec& layout);

}  // namespace cham
