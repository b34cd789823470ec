#pragma once

#include <utility>
#include <vector>

#include "cham/compose.hpp"
#include "cham/dataset.hpp"
#include "cham/embedding.hpp"
#include "cham/encode.hpp"
#include "cham/mask.hpp"

namespace cham {

// Everything needed to turn sample records into model inputs.
struct ComposeContext {
  const EmbeddingTable* table = nullptr;
  LayoutSpec layout;
  int input_h = 64;
  int input_w = 64;

  void validate() const;

  // Joint text canvases anchor at the top-left corner; fused patches occupy a
  // band at the bottom of the host so the text region is a fixed rectangle.
  std::pair<int, int> anchor_for(Variant variant) const;

  // The rectangle covered by an encoded-text patch for this variant:
  // {row, col, height, width}.
  std::array<int, 4> text_band(Variant variant) const;
};

// Composes one record, reading only the modalities flagged present.
CompositeSample compose_sample(const SampleRecord& record, const ComposeContext& ctx,
                               Variant variant, bool image_present, bool text_present);

// Plan entries must cover the dataset ids exactly once each; output follows
// dataset record order.
std::vector<CompositeSample> apply_plan(const Dataset& data, const MaskPlan& plan,
                                        const ComposeContext& ctx, Variant variant);

}  // namespace cham
