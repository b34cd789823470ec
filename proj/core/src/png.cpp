#include "cham/png.hpp"

#include <zlib.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace cham {

namespace {

constexpr std::uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t read_u32(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::uint8_t* data, std::size_t len) {
  put_u32(out, static_cast<std::uint32_t>(len));
  const std::size_t type_pos = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data, data + len);
  const auto crc = crc32(0L, out.data() + type_pos, static_cast<uInt>(4 + len));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Canvas& canvas) {
  if (canvas.height < 1 || canvas.width < 1 || canvas.rgb.size() !=
      static_cast<std::size_t>(canvas.height) * canvas.width * 3)
    throw std::invalid_argument("encode_png: malformed canvas");

  const std::size_t stride = static_cast<std::size_t>(canvas.width) * 3;
  std::vector<std::uint8_t> raw;
  raw.reserve(static_cast<std::size_t>(canvas.height) * (stride + 1));
  for (int y = 0; y < canvas.height; ++y) {
    raw.push_back(0);  // filter type None
    const auto* row = canvas.at(y, 0);
    raw.insert(raw.end(), row, row + stride);
  }

  uLongf comp_len = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> comp(comp_len);
  if (compress2(comp.data(), &comp_len, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw std::runtime_error("encode_png: deflate failed");
  comp.resize(comp_len);

  std::vector<std::uint8_t> out(kSignature, kSignature + 8);
  std::uint8_t ihdr[13];
  ihdr[0] = static_cast<std::uint8_t>(canvas.width >> 24);
  ihdr[1] = static_cast<std::uint8_t>(canvas.width >> 16);
  ihdr[2] = static_cast<std::uint8_t>(canvas.width >> 8);
  ihdr[3] = static_cast<std::uint8_t>(canvas.width);
  ihdr[4] = static_cast<std::uint8_t>(canvas.height >> 24);
  ihdr[5] = static_cast<std::uint8_t>(canvas.height >> 16);
  ihdr[6] = static_cast<std::uint8_t>(canvas.height >> 8);
  ihdr[7] = static_cast<std::uint8_t>(canvas.height);
  ihdr[8] = 8;   // bit depth
  ihdr[9] = 2;   // color type: truecolor
  ihdr[10] = 0;  // compression
  ihdr[11] = 0;  // filter
  ihdr[12] = 0;  // interlace
  append_chunk(out, "IHDR", ihdr, sizeof ihdr);
  append_chunk(out, "IDAT", comp.data(), comp.size());
  append_chunk(out, "IEND", nullptr, 0);
  return out;
}

Canvas decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kSignature, 8) != 0)
    throw std::runtime_error("decode_png: not a PNG file");

  std::size_t pos = 8;
  std::uint32_t width = 0, height = 0;
  int bit_depth = 0, color_type = 0;
  bool saw_ihdr = false, saw_iend = false;
  std::vector<std::uint8_t> idat;

  while (pos + 8 <= bytes.size()) {
    const std::uint32_t len = read_u32(bytes.data() + pos);
    if (pos + 12 + static_cast<std::size_t>(len) > bytes.size())
      throw std::runtime_error("decode_png: truncated chunk");
    char type[5] = {};
    std::memcpy(type, bytes.data() + pos + 4, 4);
    const std::uint8_t* data = bytes.data() + pos + 8;

    if (std::strcmp(type, "IHDR") == 0) {
      if (len != 13) throw std::runtime_error("decode_png: bad IHDR");
      width = read_u32(data);
      height = read_u32(data + 4);
      bit_depth = data[8];
      color_type = data[9];
      if (data[10] != 0 || data[11] != 0) throw std::runtime_error("decode_png: unsupported compression/filter");
      if (data[12] != 0) throw std::runtime_error("decode_png: interlaced images unsupported");
      saw_ihdr = true;
    } else if (std::strcmp(type, "IDAT") == 0) {
      idat.insert(idat.end(), data, data + len);
    } else if (std::strcmp(type, "IEND") == 0) {
      saw_iend = true;
      break;
    }
    // ancillary chunks are skipped
    pos += 12 + static_cast<std::size_t>(len);
  }
  if (!saw_ihdr || !saw_iend || idat.empty())
    throw std::runtime_error("decode_png: missing required chunks");
  if (width == 0 || height == 0) throw std::runtime_error("decode_png: zero dimensions");
  if (bit_depth != 8) throw std::runtime_error("decode_png: only 8-bit images supported");

  int channels = 0;
  switch (color_type) {
    case 0: channels = 1; break;  // gray
    case 2: channels = 3; break;  // RGB
    case 4: channels = 2; break;  // gray + alpha
    case 6: channels = 4; break;  // RGBA
    default: throw std::runtime_error("decode_png: unsupported color type");
  }

  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  const std::size_t raw_size = static_cast<std::size_t>(height) * (stride + 1);
  std::vector<std::uint8_t> raw(raw_size);
  uLongf dest_len = raw_size;
  const int zrc = uncompress(raw.data(), &dest_len, idat.data(), static_cast<uLong>(idat.size()));
  if (zrc != Z_OK || dest_len != raw_size)
    throw std::runtime_error("decode_png: inflate failed");

  // Undo per-row filters in place (image bytes shifted left over filter bytes).
  std::vector<std::uint8_t> img(static_cast<std::size_t>(height) * stride);
  const int bpp = channels;
  for (std::uint32_t y = 0; y < height; ++y) {
    const std::uint8_t filter = raw[y * (stride + 1)];
    const std::uint8_t* src = raw.data() + y * (stride + 1) + 1;
    std::uint8_t* cur = img.data() + y * stride;
    const std::uint8_t* prev = y > 0 ? img.data() + (y - 1) * stride : nullptr;
    for (std::size_t x = 0; x < stride; ++x) {
      const int a = x >= static_cast<std::size_t>(bpp) ? cur[x - bpp] : 0;
      const int b = prev ? prev[x] : 0;
      const int c = (prev && x >= static_cast<std::size_t>(bpp)) ? prev[x - bpp] : 0;
      int v = src[x];
      switch (filter) {
        case 0: break;
        case 1: v += a; break;
        case 2: v += b; break;
        case 3: v += (a + b) / 2; break;
        case 4: v += paeth(a, b, c); break;
        default: throw std::runtime_error("decode_png: bad filter type");
      }
      cur[x] = static_cast<std::uint8_t>(v);
    }
  }

  Canvas canvas(static_cast<int>(height), static_cast<int>(width));
  for (std::uint32_t y = 0; y < height; ++y) {
    const std::uint8_t* row = img.data() + y * stride;
    std::uint8_t* dst = canvas.at(static_cast<int>(y), 0);
    for (std::uint32_t x = 0; x < width; ++x) {
      const std::uint8_t* px = row + static_cast<std::size_t>(x) * channels;
      switch (color_type) {
        case 0:
        case 4: dst[0] = dst[1] = dst[2] = px[0]; break;
        case 2:
        case 6: dst[0] = px[0]; dst[1] = px[1]; dst[2] = px[2]; break;
      }
      dst += 3;
    }
  }
  return canvas;
}

void write_png(const Canvas& canvas, const std::filesystem::path& path) {
  const auto bytes = encode_png(canvas);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_png: cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write_png: write failed for " + path.string());
}

Canvas read_png(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_png: cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_png(bytes);
}

}  // namespace cham
