#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cham/image.hpp"

namespace cham {

struct SampleRecord {
  std::string id;
  std::string image_path;        // as written in the manifest; empty for in-memory records
  std::optional<Canvas> image;   // decoded pixels (loader and generator fill this)
  std::string text;
  int label = 0;
};

struct Dataset {
  std::vector<SampleRecord> records;
  int num_classes = 0;

  std::vector<std::string> ids() const;
};

// Tab-separated manifest, one record per line:
//   id<TAB>image_path<TAB>label<TAB>text
// Image paths are resolved relative to the manifest's directory; every image
// must decode as 8-bit RGB. The number of classes is 1 + max label.
Dataset load_manifest(const std::filesystem::path& manifest_path);

struct SyntheticSpec {
  int num_classes = 5;
  int samples_per_class = 200;
  int image_h = 64;
  int image_w = 64;
  int keywords_per_class = 3;
  int words_per_sample = 6;
  int filler_vocab_size = 20;
  double image_noise_std = 8.0;    // additive, in byte units
  double text_keyword_prob = 0.8;  // probability a word is a class keyword
  std::uint64_t seed = 1;

  void validate() const;
};

// Per class: a base hue and a shape (rectangle/disc alternating by class) at
// seeded-random position and scale, plus texts mixing class keywords with
// shared filler words. Both modalities are independently predictive.
Dataset generate_synthetic(const SyntheticSpec& spec);

// Stratified split: per class, floor(train_fraction * n) records go to train
// after a seeded shuffle. Throws if any class would get an empty test set.
std::pair<Dataset, Dataset> split_dataset(const Dataset& data, double train_fraction,
                                          std::uint64_t seed);

// Writes images/<id>.png plus manifest.tsv under dir.
void materialize(const Dataset& data, const std::filesystem::path& dir);

// Decoded pixels resized (nearest neighbor) to the requested size.
Canvas sample_canvas(const SampleRecord& record, int height, int width);

}  // namespace cham
