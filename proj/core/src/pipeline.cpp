#include "cham/pipeline.hpp"

#include <stdexcept>
#include <unordered_map>

#include "cham/text.hpp"

namespace cham {

void ComposeContext::validate() const {
  if (table == nullptr) throw std::invalid_argument("ComposeContext: no embedding table");
  if (input_h < 1 || input_w < 1) throw std::invalid_argument("ComposeContext: bad input size");
  layout.validate();
  if (layout.pixels_per_word * 3 != table->dim)
    throw std::invalid_argument("ComposeContext: layout does not match embedding dim");
  if (layout.canvas_height() > input_h || layout.canvas_width() > input_w)
    throw std::invalid_argument("ComposeContext: encoded text grid does not fit the input size");
}

std::pair<int, int> ComposeContext::anchor_for(Variant variant) const {
  if (variant == Variant::joint) return {0, 0};
  return {input_h - layout.canvas_height(), 0};
}

std::array<int, 4> ComposeContext::text_band(Variant variant) const {
  const auto [row, col] = anchor_for(variant);
  return {row, col, layout.canvas_height(), layout.canvas_width()};
}

CompositeSample compose_sample(const SampleRecord& record, const ComposeContext& ctx,
                               Variant variant, bool image_present, bool text_present) {
  ctx.validate();
  if (!image_present && !text_present)
    throw std::invalid_argument("compose_sample: both modalities masked for " + record.id);

  Canvas image;
  EncodedText enc;
  if (image_present) image = sample_canvas(record, ctx.input_h, ctx.input_w);
  if (text_present) enc = encode_text(tokenize(record.text), *ctx.table, ctx.layout);

  const auto [row, col] = ctx.anchor_for(variant);
  return make_composite(image_present ? &image : nullptr, text_present ? &enc : nullptr, variant,
                        ctx.input_h, ctx.input_w, row, col, record.label);
}

std::vector<CompositeSample> apply_plan(const Dataset& data, const MaskPlan& plan,
                                        const ComposeContext& ctx, Variant variant) {
  if (plan.entries.size() != data.records.size())
    throw std::invalid_argument("apply_plan: plan covers " + std::to_string(plan.entries.size()) +
                                " samples but dataset has " + std::to_string(data.records.size()));
  std::unordered_map<std::string, const MaskEntry*> by_id;
  by_id.reserve(plan.entries.size());
  for (const auto& entry : plan.entries)
    if (!by_id.emplace(entry.sample_id, &entry).second)
      throw std::invalid_argument("apply_plan: duplicate plan entry for " + entry.sample_id);

  std::vector<CompositeSample> out;
  out.reserve(data.records.size());
  for (const auto& record : data.records) {
    const auto it = by_id.find(record.id);
    if (it == by_id.end())
      throw std::invalid_argument("apply_plan: no plan entry for sample " + record.id);
    const auto* entry = it->second;
    out.push_back(compose_sample(record, ctx, variant, entry->image_present, entry->text_present));
  }
  return out;
}

}  // namespace cham
