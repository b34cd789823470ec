#pragma once

#include <string>
#include <vector>

#include "cham/encode.hpp"
#include "cham/image.hpp"

namespace cham {

enum class Variant { joint, fused };

Variant parse_variant(const std::string& name);  // "joint" | "fused"
const char* variant_name(Variant v);

struct Presence {
  bool image = false;
  bool text = false;
};

struct CompositeSample {
  Variant variant = Variant::joint;
  // fused: exactly one canvas; joint: [image, text] when both modalities are
  // present, otherwise just the available one.
  std::vector<Canvas> canvases;
  int label = 0;
  Presence presence;
};

// Encoded grid copied verbatim onto a black canvas at the anchor. An encoding
// with zero words is an empty patch and leaves the canvas untouched.
Canvas render_text_canvas(const EncodedText& enc, int height, int width,
                          int anchor_row, int anchor_col);

// Host with the patch region overwritten (no blending) by the encoded pixels.
Canvas compose_fused(const Canvas& host, const EncodedText& enc, int anchor_row, int anchor_col);

// image/enc may be null when the corresponding modality is missing, but not
// both. The image canvas must already have the requested size.
CompositeSample make_composite(const Canvas* image, const EncodedText* enc, Variant variant,
                               int height, int width, int anchor_row, int anchor_col, int label);

// Inspection sheet: image | text canvas | fused, separated by a light gap.
Canvas debug_sheet(const Canvas& image, const EncodedText& enc, int anchor_row, int anchor_col);

}  // namespace cham
