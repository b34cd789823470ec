#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cham/compose.hpp"
#include "cham/image.hpp"

namespace cham {

struct Tensor {
  std::string name;
  std::vector<int> shape;
  std::vector<double> data;

  std::size_t size() const { return data.size(); }
};

// Stack of 3x3 stride-1 convolutions (zero padded, ReLU, 2x2 max-pool each),
// then one hidden dense layer and a linear classifier head. All math is done
// in double precision.
struct ArchSpec {
  int input_h = 64;
  int input_w = 64;
  std::vector<int> conv_channels = {16, 32, 64};
  int hidden_dim = 128;
  int num_classes = 2;

  void validate() const;
  int pooled_h() const;
  int pooled_w() const;
  int flat_dim() const;

  friend bool operator==(const ArchSpec& a, const ArchSpec& b) = default;
};

// Named tensors in a fixed order: conv<i>.weight/.bias per block, then
// fc1.weight/.bias and fc2.weight/.bias.
struct Parameters {
  ArchSpec arch;
  std::uint64_t seed = 0;
  std::vector<Tensor> tensors;

  Tensor& find(const std::string& name);
  const Tensor& find(const std::string& name) const;
};

// Shape-congruent with Parameters::tensors.
using GradientSet = std::vector<Tensor>;

GradientSet zeros_like(const Parameters& params);

// He fan-in scaled weights, zero biases; deterministic in seed.
Parameters init_model(const ArchSpec& arch, std::uint64_t seed);

std::vector<double> softmax(std::span<const double> logits);

// Logits for one canvas; pixel bytes are mapped to [0,1] by division by 255.
std::vector<double> forward(const Parameters& params, const Canvas& canvas);

// Weight-shared pass: softmax(forward(c)) per canvas with the one parameter
// set, combined as the arithmetic mean of the per-canvas probabilities.
std::vector<double> forward_joint(const Parameters& params, const std::vector<Canvas>& canvases);

// Mean cross-entropy over every canvas in the batch (a two-canvas joint
// sample contributes two terms with its shared label) plus exact analytic
// gradients. When `predictions` is given, it receives the per-sample argmax
// of the mean per-canvas probabilities.
std::pair<double, GradientSet> loss_and_grads(const Parameters& params,
                                              std::span<const CompositeSample* const> batch,
                                              std::vector<int>* predictions = nullptr);
std::pair<double, GradientSet> loss_and_grads(const Parameters& params,
                                              const std::vector<CompositeSample>& batch,
                                              std::vector<int>* predictions = nullptr);

// Per-pixel L2 norm over channels of d logit[class_index] / d input, scaled
// so the largest entry is 1 (all zeros when the gradient vanishes). Row-major
// input_h x input_w.
std::vector<double> saliency_map(const Parameters& params, const Canvas& canvas, int class_index);

// Fraction of a map's total mass inside {row, col, height, width}. Invariant
// to the map's scaling, so maps of different inputs compare meaningfully.
double mass_share(std::span<const double> map, int map_width, const std::array<int, 4>& rect);

// Versioned binary checkpoint with the arch, seed and raw tensor data;
// round-trips byte-exactly.
void save_checkpoint(const Parameters& params, const std::filesystem::path& path);
Parameters load_checkpoint(const std::filesystem::path& path);

}  // namespace cham
