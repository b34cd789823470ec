#include "cham/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cham/png.hpp"
#include "cham/rng.hpp"

namespace cham {

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.id);
  return out;
}

Dataset load_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("load_manifest: cannot open " + manifest_path.string());
  const auto base_dir = manifest_path.parent_path();

  Dataset data;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  int max_label = -1;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto where = manifest_path.string() + ":" + std::to_string(line_no);

    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    const auto t3 = t2 == std::string::npos ? std::string::npos : line.find('\t', t2 + 1);
    if (t3 == std::string::npos)
      throw std::runtime_error("load_manifest: expected 4 tab-separated fields at " + where);

    SampleRecord record;
    record.id = line.substr(0, t1);
    record.image_path = line.substr(t1 + 1, t2 - t1 - 1);
    const std::string label_str = line.substr(t2 + 1, t3 - t2 - 1);
    record.text = line.substr(t3 + 1);

    if (record.id.empty()) throw std::runtime_error("load_manifest: empty id at " + where);
    if (!seen_ids.insert(record.id).second)
      throw std::runtime_error("load_manifest: duplicate id '" + record.id + "' at " + where);

    try {
      std::size_t consumed = 0;
      record.label = std::stoi(label_str, &consumed);
      if (consumed != label_str.size()) throw std::invalid_argument(label_str);
    } catch (const std::exception&) {
      throw std::runtime_error("load_manifest: bad label '" + label_str + "' at " + where);
    }
    if (record.label < 0) throw std::runtime_error("load_manifest: negative label at " + where);

    const auto image_file = base_dir / record.image_path;
    if (!std::filesystem::exists(image_file))
      throw std::runtime_error("load_manifest: missing image file " + image_file.string() +
                               " at " + where);
    record.image = read_png(image_file);  // also validates it decodes as 8-bit RGB

    max_label = std::max(max_label, record.label);
    data.records.push_back(std::move(record));
  }
  if (data.records.empty())
    throw std::runtime_error("load_manifest: no records in " + manifest_path.string());
  data.num_classes = max_label + 1;
  return data;
}

void SyntheticSpec::validate() const {
  if (num_classes < 2) throw std::invalid_argument("SyntheticSpec: num_classes must be >= 2");
  if (samples_per_class < 1) throw std::invalid_argument("SyntheticSpec: samples_per_class must be >= 1");
  if (image_h < 8 || image_w < 8) throw std::invalid_argument("SyntheticSpec: image size must be >= 8x8");
  if (keywords_per_class < 1) throw std::invalid_argument("SyntheticSpec: keywords_per_class must be >= 1");
  if (words_per_sample < 1) throw std::invalid_argument("SyntheticSpec: words_per_sample must be >= 1");
  if (filler_vocab_size < 1) throw std::invalid_argument("SyntheticSpec: filler_vocab_size must be >= 1");
  if (image_noise_std < 0.0) throw std::invalid_argument("SyntheticSpec: image_noise_std must be >= 0");
  if (!(text_keyword_prob > 0.0 && text_keyword_prob <= 1.0))
    throw std::invalid_argument("SyntheticSpec: text_keyword_prob must lie in (0,1]");
}

namespace {

Rgb hsv_to_rgb(double h, double s, double v) {
  h = std::fmod(h, 360.0);
  const double c = v * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) { r = c; g = x; }
  else if (hp < 2) { r = x; g = c; }
  else if (hp < 3) { g = c; b = x; }
  else if (hp < 4) { g = x; b = c; }
  else if (hp < 5) { r = x; b = c; }
  else { r = c; b = x; }
  const double m = v - c;
  auto to_byte = [&](double t) {
    return static_cast<std::uint8_t>(std::clamp(std::floor((t + m) * 255.0 + 0.5), 0.0, 255.0));
  };
  return {to_byte(r), to_byte(g), to_byte(b)};
}

constexpr Rgb kSyntheticBackground = {28, 28, 28};

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  Dataset data;
  data.num_classes = spec.num_classes;
  data.records.reserve(static_cast<std::size_t>(spec.num_classes) * spec.samples_per_class);

  const int digits = static_cast<int>(std::to_string(spec.samples_per_class - 1).size());

  for (int label = 0; label < spec.num_classes; ++label) {
    const Rgb color = hsv_to_rgb(360.0 * label / spec.num_classes, 0.85, 0.9);
    for (int s = 0; s < spec.samples_per_class; ++s) {
      SampleRecord record;
      std::string idx = std::to_string(s);
      idx.insert(0, static_cast<std::size_t>(digits) - idx.size(), '0');
      record.id = "c" + std::to_string(label) + "_s" + idx;
      record.label = label;

      // shape geometry
      const double cy = rng.uniform(0.32, 0.68) * spec.image_h;
      const double cx = rng.uniform(0.32, 0.68) * spec.image_w;
      const double half = rng.uniform(0.18, 0.30) * std::min(spec.image_h, spec.image_w);
      const double half_w = label % 2 == 0 ? half * rng.uniform(0.8, 1.25) : half;

      Canvas image(spec.image_h, spec.image_w, kSyntheticBackground);
      for (int y = 0; y < spec.image_h; ++y) {
        for (int x = 0; x < spec.image_w; ++x) {
          bool inside;
          if (label % 2 == 0) {
            inside = std::fabs(y - cy) <= half && std::fabs(x - cx) <= half_w;
          } else {
            const double dy = y - cy, dx = x - cx;
            inside = dy * dy + dx * dx <= half * half;
          }
          if (inside) image.set(y, x, color);
        }
      }
      if (spec.image_noise_std > 0.0) {
        for (auto& byte : image.rgb) {
          const double noisy = byte + spec.image_noise_std * rng.normal();
          byte = static_cast<std::uint8_t>(std::clamp(std::floor(noisy + 0.5), 0.0, 255.0));
        }
      }
      record.image = std::move(image);

      // text: class keywords mixed with shared filler words
      std::string text;
      for (int w = 0; w < spec.words_per_sample; ++w) {
        if (!text.empty()) text += ' ';
        if (rng.uniform() < spec.text_keyword_prob) {
          text += "cls" + std::to_string(label) + "kw" +
                  std::to_string(rng.below(static_cast<std::uint64_t>(spec.keywords_per_class)));
        } else {
          text += "filler" + std::to_string(rng.below(static_cast<std::uint64_t>(spec.filler_vocab_size)));
        }
      }
      record.text = std::move(text);
      data.records.push_back(std::move(record));
    }
  }
  return data;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& data, double train_fraction,
                                          std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("split_dataset: train_fraction must lie in (0,1)");
  if (data.records.empty()) throw std::invalid_argument("split_dataset: empty dataset");

  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(data.num_classes));
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    const int label = data.records[i].label;
    if (label < 0 || label >= data.num_classes)
      throw std::invalid_argument("split_dataset: label out of range for sample " + data.records[i].id);
    by_class[static_cast<std::size_t>(label)].push_back(i);
  }

  Dataset train, test;
  train.num_classes = test.num_classes = data.num_classes;
  Rng rng(seed);
  for (int label = 0; label < data.num_classes; ++label) {
    auto& bucket = by_class[static_cast<std::size_t>(label)];
    rng.shuffle(bucket);
    // tiny epsilon so fractions like 0.7 * 10 floor to the intended count
    const auto n_train = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(bucket.size()) + 1e-9));
    if (bucket.size() == n_train || bucket.empty())
      throw std::runtime_error("split_dataset: class " + std::to_string(label) +
                               " would get an empty test set");
    for (std::size_t k = 0; k < bucket.size(); ++k)
      (k < n_train ? train : test).records.push_back(data.records[bucket[k]]);
  }
  return {std::move(train), std::move(test)};
}

void materialize(const Dataset& data, const std::filesystem::path& dir) {
  const auto image_dir = dir / "images";
  std::filesystem::create_directories(image_dir);

  std::ofstream manifest(dir / "manifest.tsv");
  if (!manifest) throw std::runtime_error("materialize: cannot open manifest in " + dir.string());

  for (const auto& record : data.records) {
    Canvas image;
    if (record.image) {
      image = *record.image;
    } else if (!record.image_path.empty()) {
      image = read_png(record.image_path);
    } else {
      throw std::runtime_error("materialize: sample " + record.id + " has no image");
    }
    const std::string rel = "images/" + record.id + ".png";
    write_png(image, dir / rel);
    manifest << record.id << '\t' << rel << '\t' << record.label << '\t' << record.text << '\n';
  }
  if (!manifest) throw std::runtime_error("materialize: manifest write failed in " + dir.string());
}

Canvas sample_canvas(const SampleRecord& record, int height, int width) {
  if (record.image) return resize_nearest(*record.image, height, width);
  if (!record.image_path.empty()) return resize_nearest(read_png(record.image_path), height, width);
  throw std::runtime_error("sample_canvas: sample " + record.id + " has no image");
}

}  // namespace cham
