#include "cham/pipeline.hpp"

#include "doctest.h"

using namespace cham;

namespace {

EmbeddingTable keyword_table() {
  EmbeddingTable table;
  table.dim = 6;
  int row = 0;
  for (const auto* word : {"red", "blue", "dot"}) {
    table.words.push_back(word);
    table.row_of.emplace(word, row++);
    for (int d = 0; d < 6; ++d) table.vectors.push_back(0.05 * row * (d + 1));
  }
  table.global_min = *std::min_element(table.vectors.begin(), table.vectors.end());
  table.global_max = *std::max_element(table.vectors.begin(), table.vectors.end());
  return table;
}

Dataset two_samples() {
  Dataset data;
  data.num_classes = 2;
  SampleRecord a;
  a.id = "s0";
  a.label = 0;
  a.text = "red dot";
  a.image = Canvas(16, 16, {200, 10, 10});
  SampleRecord b;
  b.id = "s1";
  b.label = 1;
  b.text = "blue dot";
  b.image = Canvas(16, 16, {10, 10, 200});
  data.records = {a, b};
  return data;
}

ComposeContext context_for(const EmbeddingTable& table) {
  ComposeContext ctx;
  ctx.table = &table;
  ctx.layout = make_layout(table.dim, 2, 4, 2);  // 2 rows x 8 px wide, 4 px tall
  ctx.input_h = 16;
  ctx.input_w = 16;
  return ctx;
}

}  // namespace

TEST_CASE("context validation catches mismatches") {
  const auto table = keyword_table();
  auto ctx = context_for(table);
  CHECK_NOTHROW(ctx.validate());
  ctx.layout = make_layout(9);
  CHECK_THROWS(ctx.validate());  // layout dim != table dim
  ctx = context_for(table);
  ctx.input_h = 1;  // encoded grid no longer fits
  CHECK_THROWS(ctx.validate());
  ctx = context_for(table);
  ctx.table = nullptr;
  CHECK_THROWS(ctx.validate());
}

TEST_CASE("anchors: joint at the top-left, fused at the bottom band") {
  const auto table = keyword_table();
  const auto ctx = context_for(table);
  CHECK(ctx.anchor_for(Variant::joint) == std::pair{0, 0});
  CHECK(ctx.anchor_for(Variant::fused) == std::pair{16 - ctx.layout.canvas_height(), 0});
  const auto band = ctx.text_band(Variant::fused);
  CHECK(band[0] == 16 - ctx.layout.canvas_height());
  CHECK(band[2] == ctx.layout.canvas_height());
  CHECK(band[3] == ctx.layout.canvas_width());
}

TEST_CASE("an all-true plan matches unmasked composition") {
  const auto table = keyword_table();
  const auto ctx = context_for(table);
  const auto data = two_samples();
  const auto plan = make_plan(data.ids(), 100, 100, 5);
  const auto composites = apply_plan(data, plan, ctx, Variant::joint);
  REQUIRE(composites.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto direct = compose_sample(data.records[i], ctx, Variant::joint, true, true);
    CHECK(composites[i].canvases == direct.canvases);
    CHECK(composites[i].label == data.records[i].label);
    CHECK(composites[i].canvases.size() == 2);
  }
}

TEST_CASE("masked text routes the fused variant to the raw image") {
  const auto table = keyword_table();
  const auto ctx = context_for(table);
  const auto data = two_samples();
  MaskPlan plan = make_plan(data.ids(), 100, 100, 5);
  plan.entries[1].text_present = false;
  const auto composites = apply_plan(data, plan, ctx, Variant::fused);
  CHECK(composites[1].canvases[0] == resize_nearest(*data.records[1].image, 16, 16));
  CHECK_FALSE(composites[1].presence.text);
  // the text-bearing sample differs from its raw image inside the band
  CHECK(composites[0].canvases[0] != resize_nearest(*data.records[0].image, 16, 16));
}

TEST_CASE("plan and dataset ids must match exactly") {
  const auto table = keyword_table();
  const auto ctx = context_for(table);
  const auto data = two_samples();
  auto plan = make_plan(data.ids(), 100, 100, 5);
  plan.entries.pop_back();
  CHECK_THROWS(apply_plan(data, plan, ctx, Variant::joint));

  plan = make_plan({"s0", "zz"}, 100, 100, 5);
  CHECK_THROWS(apply_plan(data, plan, ctx, Variant::joint));
}

TEST_CASE("compose_sample never reads a masked modality") {
  const auto table = keyword_table();
  const auto ctx = context_for(table);
  SampleRecord broken;
  broken.id = "x";
  broken.label = 0;
  broken.text = "red";
  // no image at all: composing text-only must still work
  const auto s = compose_sample(broken, ctx, Variant::fused, false, true);
  CHECK(s.canvases.size() == 1);
  CHECK_FALSE(s.presence.image);
  // and image-only on a record with no image throws
  CHECK_THROWS(compose_sample(broken, ctx, Variant::fused, true, false));
  CHECK_THROWS(compose_sample(broken, ctx, Variant::fused, false, false));
}
