#include "cham/compose.hpp"

#include "cham/rng.hpp"
#include "doctest.h"

using namespace cham;

namespace {

EmbeddingTable one_word_table(int dim = 6) {
  EmbeddingTable table;
  table.dim = dim;
  table.words = {"w"};
  table.row_of = {{"w", 0}};
  for (int i = 0; i < dim; ++i) table.vectors.push_back(0.1 * i);
  table.global_min = 0.0;
  table.global_max = 0.1 * (dim - 1);
  return table;
}

Canvas noisy_host(int h, int w, std::uint64_t seed) {
  Canvas canvas(h, w);
  Rng rng(seed);
  for (auto& b : canvas.rgb) b = static_cast<std::uint8_t>(1 + rng.below(255));  // never zero
  return canvas;
}

EncodedText encode_one(const EmbeddingTable& table, int block_scale = 2) {
  const auto layout = make_layout(table.dim, block_scale, 0, 2);
  return encode_text({"w"}, table, layout);
}

EncodedText encode_none(const EmbeddingTable& table) {
  const auto layout = make_layout(table.dim, 2, 0, 2);
  return encode_text({}, table, layout);
}

}  // namespace

TEST_CASE("render_text_canvas places the grid on black") {
  const auto table = one_word_table();
  const auto enc = encode_one(table);  // 4x4 pixels (2 logical cols, scale 2, 2 rows)
  const auto canvas = render_text_canvas(enc, 16, 16, 0, 0);
  CHECK(canvas.height == 16);
  CHECK(canvas.width == 16);
  for (int y = 0; y < enc.pixels.height; ++y)
    for (int x = 0; x < enc.pixels.width; ++x) CHECK(canvas.get(y, x) == enc.pixels.get(y, x));
  for (int y = enc.pixels.height; y < 16; ++y)
    for (int x = 0; x < 16; ++x) CHECK(canvas.get(y, x) == Rgb{0, 0, 0});
  for (int x = enc.pixels.width; x < 16; ++x) CHECK(canvas.get(0, x) == Rgb{0, 0, 0});
}

TEST_CASE("an empty encoding renders an all-black canvas") {
  const auto table = one_word_table();
  const auto canvas = render_text_canvas(encode_none(table), 8, 8, 0, 0);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) CHECK(canvas.get(y, x) == Rgb{0, 0, 0});
}

TEST_CASE("rendering is deterministic") {
  const auto table = one_word_table();
  const auto enc = encode_one(table);
  CHECK(render_text_canvas(enc, 12, 12, 2, 3) == render_text_canvas(enc, 12, 12, 2, 3));
}

TEST_CASE("patches may not exceed canvas bounds") {
  const auto table = one_word_table();
  const auto enc = encode_one(table);
  CHECK_THROWS(render_text_canvas(enc, 4, 16, 1, 0));  // patch is 4 rows tall
  CHECK_THROWS(render_text_canvas(enc, 3, 3, 0, 0));
  const auto host = noisy_host(8, 8, 3);
  CHECK_THROWS(compose_fused(host, enc, 6, 0));
}

TEST_CASE("compose_fused overwrites exactly the patch rectangle") {
  const auto table = one_word_table();
  const auto enc = encode_one(table);
  const auto host = noisy_host(10, 12, 5);
  const int row = 10 - enc.pixels.height, col = 0;
  const auto fused = compose_fused(host, enc, row, col);

  int diffs = 0;
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 12; ++x) {
      const bool in_patch = y >= row && y < row + enc.pixels.height && x >= col &&
                            x < col + enc.pixels.width;
      if (fused.get(y, x) != host.get(y, x)) {
        ++diffs;
        CHECK(in_patch);
      }
      if (in_patch) CHECK(fused.get(y, x) == enc.pixels.get(y - row, x - col));
    }
  // the encoding contains a zero byte somewhere, so not every patch pixel
  // differs from the nonzero host; but every differing pixel lies in-patch
  CHECK(diffs > 0);
}

TEST_CASE("compose_fused with an empty encoding returns the host unchanged") {
  const auto table = one_word_table();
  const auto host = noisy_host(8, 8, 9);
  CHECK(compose_fused(host, encode_none(table), 4, 0) == host);
}

TEST_CASE("make_composite covers all modality cases") {
  const auto table = one_word_table();
  const auto enc = encode_one(table);
  const auto image = noisy_host(16, 16, 13);

  SUBCASE("fused, image only: the raw image") {
    const auto s = make_composite(&image, nullptr, Variant::fused, 16, 16, 12, 0, 3);
    REQUIRE(s.canvases.size() == 1);
    CHECK(s.canvases[0] == image);
    CHECK(s.presence.image);
    CHECK_FALSE(s.presence.text);
    CHECK(s.label == 3);
  }
  SUBCASE("fused, text only: text on blank") {
    const auto s = make_composite(nullptr, &enc, Variant::fused, 16, 16, 12, 0, 1);
    REQUIRE(s.canvases.size() == 1);
    CHECK(s.canvases[0] == render_text_canvas(enc, 16, 16, 12, 0));
    CHECK_FALSE(s.presence.image);
    CHECK(s.presence.text);
  }
  SUBCASE("fused, both: overwritten host") {
    const auto s = make_composite(&image, &enc, Variant::fused, 16, 16, 12, 0, 0);
    REQUIRE(s.canvases.size() == 1);
    CHECK(s.canvases[0] == compose_fused(image, enc, 12, 0));
  }
  SUBCASE("joint, both: image first, then text canvas") {
    const auto s = make_composite(&image, &enc, Variant::joint, 16, 16, 0, 0, 2);
    REQUIRE(s.canvases.size() == 2);
    CHECK(s.canvases[0] == image);
    CHECK(s.canvases[1] == render_text_canvas(enc, 16, 16, 0, 0));
  }
  SUBCASE("joint, single modality") {
    const auto si = make_composite(&image, nullptr, Variant::joint, 16, 16, 0, 0, 0);
    REQUIRE(si.canvases.size() == 1);
    CHECK(si.canvases[0] == image);
    const auto st = make_composite(nullptr, &enc, Variant::joint, 16, 16, 0, 0, 0);
    REQUIRE(st.canvases.size() == 1);
    CHECK(st.canvases[0] == render_text_canvas(enc, 16, 16, 0, 0));
  }
  SUBCASE("both modalities absent is an error") {
    CHECK_THROWS(make_composite(nullptr, nullptr, Variant::fused, 16, 16, 0, 0, 0));
  }
  SUBCASE("image must match the model input size") {
    CHECK_THROWS(make_composite(&image, nullptr, Variant::fused, 8, 8, 0, 0, 0));
  }
}

TEST_CASE("all emitted canvases share the configured input size") {
  const auto table = one_word_table();
  const auto enc = encode_one(table);
  const auto image = noisy_host(16, 16, 17);
  for (const auto variant : {Variant::joint, Variant::fused}) {
    const auto s = make_composite(&image, &enc, variant, 16, 16, 0, 0, 0);
    for (const auto& canvas : s.canvases) {
      CHECK(canvas.height == 16);
      CHECK(canvas.width == 16);
    }
  }
}

TEST_CASE("variant names parse and print") {
  CHECK(parse_variant("joint") == Variant::joint);
  CHECK(parse_variant("fused") == Variant::fused);
  CHECK_THROWS(parse_variant("both"));
  CHECK(std::string(variant_name(Variant::fused)) == "fused");
}

TEST_CASE("debug sheet lays the three views side by side") {
  const auto table = one_word_table();
  const auto enc = encode_one(table);
  const auto image = noisy_host(16, 16, 19);
  const auto sheet = debug_sheet(image, enc, 12, 0);
  CHECK(sheet.height == 16);
  CHECK(sheet.width == 16 * 3 + 2 * 2);
  CHECK(sheet.get(0, 0) == image.get(0, 0));
}
