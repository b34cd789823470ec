#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace cham {

using Rgb = std::array<std::uint8_t, 3>;

// 8-bit RGB raster, row-major.
struct Canvas {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> rgb;  // height * width * 3

  Canvas() = default;
  Canvas(int h, int w, Rgb fill = {0, 0, 0});

  std::size_t offset(int y, int x) const {
    return 3 * (static_cast<std::size_t>(y) * width + x);
  }
  const std::uint8_t* at(int y, int x) const { return rgb.data() + offset(y, x); }
  std::uint8_t* at(int y, int x) { return rgb.data() + offset(y, x); }
  Rgb get(int y, int x) const;
  void set(int y, int x, Rgb color);

  bool same_size(const Canvas& other) const {
    return height == other.height && width == other.width;
  }

  friend bool operator==(const Canvas& a, const Canvas& b) = default;
};

// Nearest-neighbor resize.
Canvas resize_nearest(const Canvas& src, int out_h, int out_w);

// Horizontal concatenation with a separator gap; parts must share a height.
Canvas hconcat(const std::vector<Canvas>& parts, int gap, Rgb gap_color);

}  // namespace cham
