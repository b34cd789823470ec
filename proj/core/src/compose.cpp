#include "cham/compose.hpp"

#include <cstring>
#include <stdexcept>

namespace cham {

Variant parse_variant(const std::string& name) {
  if (name == "joint") return Variant::joint;
  if (name == "fused") return Variant::fused;
  throw std::invalid_argument("unknown variant: " + name + " (expected joint or fused)");
}

const char* variant_name(Variant v) {
  return v == Variant::joint ? "joint" : "fused";
}

namespace {

void blit(Canvas& dst, const Canvas& src, int anchor_row, int anchor_col) {
  if (anchor_row < 0 || anchor_col < 0 || anchor_row + src.height > dst.height ||
      anchor_col + src.width > dst.width)
    throw std::invalid_argument("patch exceeds canvas bounds");
  for (int y = 0; y < src.height; ++y)
    std::memcpy(dst.at(anchor_row + y, anchor_col), src.at(y, 0),
                static_cast<std::size_t>(src.width) * 3);
}

}  // namespace

Canvas render_text_canvas(const EncodedText& enc, int height, int width,
                          int anchor_row, int anchor_col) {
  Canvas canvas(height, width, {0, 0, 0});
  if (enc.word_count > 0) blit(canvas, enc.pixels, anchor_row, anchor_col);
  return canvas;
}

Canvas compose_fused(const Canvas& host, const EncodedText& enc, int anchor_row, int anchor_col) {
  Canvas out = host;
  if (enc.word_count > 0) blit(out, enc.pixels, anchor_row, anchor_col);
  return out;
}

CompositeSample make_composite(const Canvas* image, const EncodedText* enc, Variant variant,
                               int height, int width, int anchor_row, int anchor_col, int label) {
  if (image == nullptr && enc == nullptr)
    throw std::invalid_argument("make_composite: both modalities absent");
  if (image != nullptr && (image->height != height || image->width != width))
    throw std::invalid_argument("make_composite: image does not match the model input size");

  CompositeSample sample;
  sample.variant = variant;
  sample.label = label;
  sample.presence = {image != nullptr, enc != nullptr};

  if (variant == Variant::joint) {
    if (image != nullptr) sample.canvases.push_back(*image);
    if (enc != nullptr)
      sample.canvases.push_back(render_text_canvas(*enc, height, width, anchor_row, anchor_col));
  } else {
    if (image != nullptr && enc != nullptr)
      sample.canvases.push_back(compose_fused(*image, *enc, anchor_row, anchor_col));
    else if (image != nullptr)
      sample.canvases.push_back(*image);
    else
      sample.canvases.push_back(render_text_canvas(*enc, height, width, anchor_row, anchor_col));
  }
  return sample;
}

Canvas debug_sheet(const Canvas& image, const EncodedText& enc, int anchor_row, int anchor_col) {
  const Canvas text = render_text_canvas(enc, image.height, image.width, anchor_row, anchor_col);
  const Canvas fused = compose_fused(image, enc, anchor_row, anchor_col);
  return hconcat({image, text, fused}, 2, {220, 220, 220});
}

}  // namespace cham
