#include "cham/image.hpp"

#include <cstring>
#include <stdexcept>

namespace cham {

Canvas::Canvas(int h, int w, Rgb fill) : height(h), width(w) {
  if (h < 1 || w < 1) throw std::invalid_argument("Canvas: dimensions must be >= 1");
  rgb.resize(static_cast<std::size_t>(h) * w * 3);
  for (std::size_t i = 0; i < rgb.size(); i += 3) {
    rgb[i] = fill[0];
    rgb[i + 1] = fill[1];
    rgb[i + 2] = fill[2];
  }
}

Rgb Canvas::get(int y, int x) const {
  const auto* p = at(y, x);
  return {p[0], p[1], p[2]};
}

void Canvas::set(int y, int x, Rgb color) {
  auto* p = at(y, x);
  p[0] = color[0];
  p[1] = color[1];
  p[2] = color[2];
}

Canvas resize_nearest(const Canvas& src, int out_h, int out_w) {
  if (src.height < 1 || src.width < 1) throw std::invalid_argument("resize_nearest: empty source");
  if (out_h < 1 || out_w < 1) throw std::invalid_argument("resize_nearest: bad target size");
  if (src.height == out_h && src.width == out_w) return src;

  Canvas out(out_h, out_w);
  for (int y = 0; y < out_h; ++y) {
    const int sy = static_cast<int>((static_cast<std::int64_t>(y) * src.height) / out_h);
    for (int x = 0; x < out_w; ++x) {
      const int sx = static_cast<int>((static_cast<std::int64_t>(x) * src.width) / out_w);
      std::memcpy(out.at(y, x), src.at(sy, sx), 3);
    }
  }
  return out;
}

Canvas hconcat(const std::vector<Canvas>& parts, int gap, Rgb gap_color) {
  if (parts.empty()) throw std::invalid_argument("hconcat: no parts");
  const int h = parts.front().height;
  int w = 0;
  for (const auto& part : parts) {
    if (part.height != h) throw std::invalid_argument("hconcat: height mismatch");
    w += part.width;
  }
  w += gap * (static_cast<int>(parts.size()) - 1);

  Canvas out(h, w, gap_color);
  int x0 = 0;
  for (const auto& part : parts) {
    for (int y = 0; y < h; ++y)
      std::memcpy(out.at(y, x0), part.at(y, 0), static_cast<std::size_t>(part.width) * 3);
    x0 += part.width + gap;
  }
  return out;
}

}  // namespace cham
