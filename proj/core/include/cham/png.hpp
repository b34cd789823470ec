#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cham/image.hpp"

namespace cham {

// Minimal PNG codec over zlib, enough for this toolkit's images. The encoder
// always writes 8-bit RGB (color type 2), non-interlaced; the decoder accepts
// 8-bit gray, gray+alpha, RGB and RGBA and returns an RGB canvas.
std::vector<std::uint8_t> encode_png(const Canvas& canvas);
Canvas decode_png(std::span<const std::uint8_t> bytes);

void write_png(const Canvas& canvas, const std::filesystem::path& path);
Canvas read_png(const std::filesystem::path& path);

}  // namespace cham
