#include "cham/net.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "cham/rng.hpp"

namespace cham {

void ArchSpec::validate() const {
  if (input_h < 1 || input_w < 1) throw std::invalid_argument("ArchSpec: input size must be >= 1");
  if (conv_channels.empty()) throw std::invalid_argument("ArchSpec: at least one conv block required");
  for (int c : conv_channels)
    if (c < 1) throw std::invalid_argument("ArchSpec: conv channels must be >= 1");
  if (hidden_dim < 1) throw std::invalid_argument("ArchSpec: hidden_dim must be >= 1");
  if (num_classes < 2) throw std::invalid_argument("ArchSpec: num_classes must be >= 2");
  if (pooled_h() < 1 || pooled_w() < 1)
    throw std::invalid_argument("ArchSpec: spatial size collapses to zero after pooling");
}

int ArchSpec::pooled_h() const {
  int h = input_h;
  for (std::size_t i = 0; i < conv_channels.size(); ++i) h /= 2;
  return h;
}

int ArchSpec::pooled_w() const {
  int w = input_w;
  for (std::size_t i = 0; i < conv_channels.size(); ++i) w /= 2;
  return w;
}

int ArchSpec::flat_dim() const { return conv_channels.back() * pooled_h() * pooled_w(); }

Tensor& Parameters::find(const std::string& name) {
  for (auto& t : tensors)
    if (t.name == name) return t;
  throw std::invalid_argument("Parameters: no tensor named " + name);
}

const Tensor& Parameters::find(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return t;
  throw std::invalid_argument("Parameters: no tensor named " + name);
}

GradientSet zeros_like(const Parameters& params) {
  GradientSet grads = params.tensors;
  for (auto& t : grads) std::fill(t.data.begin(), t.data.end(), 0.0);
  return grads;
}

Parameters init_model(const ArchSpec& arch, std::uint64_t seed) {
  arch.validate();
  Parameters params;
  params.arch = arch;
  params.seed = seed;
  Rng rng(seed);

  auto add = [&](const std::string& name, std::vector<int> shape, double he_fan_in) {
    Tensor t;
    t.name = name;
    t.shape = std::move(shape);
    std::size_t n = 1;
    for (int d : t.shape) n *= static_cast<std::size_t>(d);
    t.data.resize(n);
    if (he_fan_in > 0.0) {
      const double stddev = std::sqrt(2.0 / he_fan_in);
      for (auto& v : t.data) v = stddev * rng.normal();
    }
    params.tensors.push_back(std::move(t));
  };

  int in_c = 3;
  for (std::size_t i = 0; i < arch.conv_channels.size(); ++i) {
    const int out_c = arch.conv_channels[i];
    const std::string id = std::to_string(i);
    add("conv" + id + ".weight", {out_c, in_c, 3, 3}, in_c * 9.0);
    add("conv" + id + ".bias", {out_c}, 0.0);
    in_c = out_c;
  }
  add("fc1.weight", {arch.hidden_dim, arch.flat_dim()}, arch.flat_dim());
  add("fc1.bias", {arch.hidden_dim}, 0.0);
  add("fc2.weight", {arch.num_classes, arch.hidden_dim}, arch.hidden_dim);
  add("fc2.bias", {arch.num_classes}, 0.0);
  return params;
}

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw std::invalid_argument("softmax: empty logits");
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> probs(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - peak);
    sum += probs[i];
  }
  for (auto& p : probs) p /= sum;
  return probs;
}

namespace {

// Per-canvas activations, reusable across forward passes.
struct Activations {
  std::vector<double> input;                  // [3 * H * W]
  std::vector<std::vector<double>> conv_pre;  // per block, pre-ReLU [OC * H * W]
  std::vector<std::vector<double>> pooled;    // per block, [OC * H/2 * W/2]
  std::vector<std::vector<int>> argmax;       // per block, flat index into conv_pre
  std::vector<double> fc1_pre;
  std::vector<double> fc1_act;
  std::vector<double> logits;
};

struct BlockDims {
  int in_c, h, w;    // input of the block
  int out_c, ph, pw; // after conv + pool
};

std::vector<BlockDims> block_dims(const ArchSpec& arch) {
  std::vector<BlockDims> dims;
  int c = 3, h = arch.input_h, w = arch.input_w;
  for (int out_c : arch.conv_channels) {
    dims.push_back({c, h, w, out_c, h / 2, w / 2});
    c = out_c;
    h /= 2;
    w /= 2;
  }
  return dims;
}

void conv3x3_forward(const double* in, int in_c, int h, int w, const double* weight,
                     const double* bias, double* out, int out_c) {
  const std::size_t plane = static_cast<std::size_t>(h) * w;
  for (int oc = 0; oc < out_c; ++oc) {
    double* out_plane = out + oc * plane;
    std::fill(out_plane, out_plane + plane, bias[oc]);
    for (int ic = 0; ic < in_c; ++ic) {
      const double* in_plane = in + ic * plane;
      const double* kernel = weight + (static_cast<std::size_t>(oc) * in_c + ic) * 9;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          const double wv = kernel[ky * 3 + kx];
          if (wv == 0.0) continue;
          const int y_lo = std::max(0, 1 - ky), y_hi = std::min(h, h + 1 - ky);
          const int x_lo = std::max(0, 1 - kx), x_hi = std::min(w, w + 1 - kx);
          for (int y = y_lo; y < y_hi; ++y) {
            const double* src = in_plane + static_cast<std::size_t>(y + ky - 1) * w + (kx - 1);
            double* dst = out_plane + static_cast<std::size_t>(y) * w;
            for (int x = x_lo; x < x_hi; ++x) dst[x] += wv * src[x];
          }
        }
      }
    }
  }
}

// dW/db for one block; `din` (when non-null) receives the input gradient.
void conv3x3_backward(const double* in, int in_c, int h, int w, const double* weight, int out_c,
                      const double* dout, double* dweight, double* dbias, double* din) {
  const std::size_t plane = static_cast<std::size_t>(h) * w;
  if (din != nullptr) std::fill(din, din + static_cast<std::size_t>(in_c) * plane, 0.0);

  for (int oc = 0; oc < out_c; ++oc) {
    const double* dout_plane = dout + oc * plane;
    double acc = 0.0;
    for (std::size_t i = 0; i < plane; ++i) acc += dout_plane[i];
    dbias[oc] += acc;

    for (int ic = 0; ic < in_c; ++ic) {
      const double* in_plane = in + ic * plane;
      const double* kernel = weight + (static_cast<std::size_t>(oc) * in_c + ic) * 9;
      double* dkernel = dweight + (static_cast<std::size_t>(oc) * in_c + ic) * 9;
      double* din_plane = din != nullptr ? din + ic * plane : nullptr;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          const int y_lo = std::max(0, 1 - ky), y_hi = std::min(h, h + 1 - ky);
          const int x_lo = std::max(0, 1 - kx), x_hi = std::min(w, w + 1 - kx);
          double wgrad = 0.0;
          const double wv = kernel[ky * 3 + kx];
          for (int y = y_lo; y < y_hi; ++y) {
            const double* src = in_plane + static_cast<std::size_t>(y + ky - 1) * w + (kx - 1);
            const double* grad = dout_plane + static_cast<std::size_t>(y) * w;
            for (int x = x_lo; x < x_hi; ++x) wgrad += grad[x] * src[x];
            if (din_plane != nullptr) {
              double* dst = din_plane + static_cast<std::size_t>(y + ky - 1) * w + (kx - 1);
              for (int x = x_lo; x < x_hi; ++x) dst[x] += wv * grad[x];
            }
          }
          dkernel[ky * 3 + kx] += wgrad;
        }
      }
    }
  }
}

// Input gradient only; used by the saliency path.
void conv3x3_backward_input(int in_c, int h, int w, const double* weight, int out_c,
                            const double* dout, double* din) {
  const std::size_t plane = static_cast<std::size_t>(h) * w;
  std::fill(din, din + static_cast<std::size_t>(in_c) * plane, 0.0);
  for (int oc = 0; oc < out_c; ++oc) {
    const double* dout_plane = dout + oc * plane;
    for (int ic = 0; ic < in_c; ++ic) {
      const double* kernel = weight + (static_cast<std::size_t>(oc) * in_c + ic) * 9;
      double* din_plane = din + ic * plane;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          const double wv = kernel[ky * 3 + kx];
          if (wv == 0.0) continue;
          const int y_lo = std::max(0, 1 - ky), y_hi = std::min(h, h + 1 - ky);
          const int x_lo = std::max(0, 1 - kx), x_hi = std::min(w, w + 1 - kx);
          for (int y = y_lo; y < y_hi; ++y) {
            double* dst = din_plane + static_cast<std::size_t>(y + ky - 1) * w + (kx - 1);
            const double* grad = dout_plane + static_cast<std::size_t>(y) * w;
            for (int x = x_lo; x < x_hi; ++x) dst[x] += wv * grad[x];
          }
        }
      }
    }
  }
}

// ReLU + 2x2 max-pool (stride 2, trailing odd row/column dropped); records
// the winning pre-ReLU index for the backward pass.
void relu_maxpool(const double* conv_pre, int c, int h, int w, double* pooled, int* argmax) {
  const int ph = h / 2, pw = w / 2;
  const std::size_t plane = static_cast<std::size_t>(h) * w;
  for (int ch = 0; ch < c; ++ch) {
    const double* src = conv_pre + ch * plane;
    for (int py = 0; py < ph; ++py) {
      for (int px = 0; px < pw; ++px) {
        double best = -1.0;
        int best_idx = -1;
        for (int dy = 0; dy < 2; ++dy) {
          for (int dx = 0; dx < 2; ++dx) {
            const int idx = (2 * py + dy) * w + (2 * px + dx);
            const double val = std::max(0.0, src[idx]);
            if (val > best) {
              best = val;
              best_idx = idx;
            }
          }
        }
        const std::size_t out_idx = (static_cast<std::size_t>(ch) * ph + py) * pw + px;
        pooled[out_idx] = best;
        argmax[out_idx] = static_cast<int>(ch * plane) + best_idx;
      }
    }
  }
}

void run_forward(const Parameters& params, const Canvas& canvas, Activations& act) {
  const ArchSpec& arch = params.arch;
  if (canvas.height != arch.input_h || canvas.width != arch.input_w)
    throw std::invalid_argument("forward: canvas does not match the model input size");

  const auto dims = block_dims(arch);
  const std::size_t plane = static_cast<std::size_t>(arch.input_h) * arch.input_w;
  act.input.resize(3 * plane);
  for (int y = 0; y < arch.input_h; ++y)
    for (int x = 0; x < arch.input_w; ++x) {
      const auto* px = canvas.at(y, x);
      const std::size_t at = static_cast<std::size_t>(y) * arch.input_w + x;
      act.input[at] = px[0] / 255.0;
      act.input[plane + at] = px[1] / 255.0;
      act.input[2 * plane + at] = px[2] / 255.0;
    }

  act.conv_pre.resize(dims.size());
  act.pooled.resize(dims.size());
  act.argmax.resize(dims.size());

  const double* cur = act.input.data();
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const auto& d = dims[i];
    act.conv_pre[i].resize(static_cast<std::size_t>(d.out_c) * d.h * d.w);
    act.pooled[i].resize(static_cast<std::size_t>(d.out_c) * d.ph * d.pw);
    act.argmax[i].resize(act.pooled[i].size());
    const auto& weight = params.tensors[2 * i];
    const auto& bias = params.tensors[2 * i + 1];
    conv3x3_forward(cur, d.in_c, d.h, d.w, weight.data.data(), bias.data.data(),
                    act.conv_pre[i].data(), d.out_c);
    relu_maxpool(act.conv_pre[i].data(), d.out_c, d.h, d.w, act.pooled[i].data(),
                 act.argmax[i].data());
    cur = act.pooled[i].data();
  }

  const auto& flat = act.pooled.back();
  const std::size_t n_blocks = dims.size();
  const auto& w1 = params.tensors[2 * n_blocks];
  const auto& b1 = params.tensors[2 * n_blocks + 1];
  const auto& w2 = params.tensors[2 * n_blocks + 2];
  const auto& b2 = params.tensors[2 * n_blocks + 3];
  const int hidden = arch.hidden_dim;
  const int flat_n = arch.flat_dim();

  act.fc1_pre.resize(hidden);
  act.fc1_act.resize(hidden);
  for (int i = 0; i < hidden; ++i) {
    const double* row = w1.data.data() + static_cast<std::size_t>(i) * flat_n;
    double acc = b1.data[i];
    for (int j = 0; j < flat_n; ++j) acc += row[j] * flat[j];
    act.fc1_pre[i] = acc;
    act.fc1_act[i] = std::max(0.0, acc);
  }

  act.logits.resize(arch.num_classes);
  for (int k = 0; k < arch.num_classes; ++k) {
    const double* row = w2.data.data() + static_cast<std::size_t>(k) * hidden;
    double acc = b2.data[k];
    for (int i = 0; i < hidden; ++i) acc += row[i] * act.fc1_act[i];
    act.logits[k] = acc;
  }
}

// Backpropagates dlogits; accumulates into `grads` when non-null and writes
// the input gradient into `dinput` when non-null.
void run_backward(const Parameters& params, const Activations& act,
                  std::span<const double> dlogits, GradientSet* grads,
                  std::vector<double>* dinput) {
  const ArchSpec& arch = params.arch;
  const auto dims = block_dims(arch);
  const std::size_t n_blocks = dims.size();
  const int hidden = arch.hidden_dim;
  const int flat_n = arch.flat_dim();

  const auto& w1 = params.tensors[2 * n_blocks];
  const auto& w2 = params.tensors[2 * n_blocks + 2];

  // classifier head
  std::vector<double> dh(hidden, 0.0);
  for (int k = 0; k < arch.num_classes; ++k) {
    const double g = dlogits[k];
    const double* row = w2.data.data() + static_cast<std::size_t>(k) * hidden;
    if (grads != nullptr) {
      double* drow = (*grads)[2 * n_blocks + 2].data.data() + static_cast<std::size_t>(k) * hidden;
      for (int i = 0; i < hidden; ++i) drow[i] += g * act.fc1_act[i];
      (*grads)[2 * n_blocks + 3].data[k] += g;
    }
    for (int i = 0; i < hidden; ++i) dh[i] += g * row[i];
  }
  for (int i = 0; i < hidden; ++i)
    if (act.fc1_pre[i] <= 0.0) dh[i] = 0.0;

  const auto& flat = act.pooled.back();
  std::vector<double> dflat(flat_n, 0.0);
  for (int i = 0; i < hidden; ++i) {
    const double g = dh[i];
    if (g == 0.0) continue;
    const double* row = w1.data.data() + static_cast<std::size_t>(i) * flat_n;
    if (grads != nullptr) {
      double* drow = (*grads)[2 * n_blocks].data.data() + static_cast<std::size_t>(i) * flat_n;
      for (int j = 0; j < flat_n; ++j) drow[j] += g * flat[j];
      (*grads)[2 * n_blocks + 1].data[i] += g;
    }
    for (int j = 0; j < flat_n; ++j) dflat[j] += g * row[j];
  }

  // conv stack, last block first
  std::vector<double> dpool = std::move(dflat);
  std::vector<double> dconv;
  std::vector<double> dprev;
  for (std::size_t bi = n_blocks; bi-- > 0;) {
    const auto& d = dims[bi];
    dconv.assign(act.conv_pre[bi].size(), 0.0);
    for (std::size_t cell = 0; cell < dpool.size(); ++cell) {
      const int idx = act.argmax[bi][cell];
      if (act.conv_pre[bi][idx] > 0.0) dconv[idx] += dpool[cell];
    }

    const double* block_in = bi == 0 ? act.input.data() : act.pooled[bi - 1].data();
    const auto& weight = params.tensors[2 * bi];
    const bool want_input = bi > 0 || dinput != nullptr;
    if (want_input) dprev.resize(static_cast<std::size_t>(d.in_c) * d.h * d.w);

    if (grads != nullptr) {
      conv3x3_backward(block_in, d.in_c, d.h, d.w, weight.data.data(), d.out_c, dconv.data(),
                       (*grads)[2 * bi].data.data(), (*grads)[2 * bi + 1].data.data(),
                       want_input ? dprev.data() : nullptr);
    } else if (want_input) {
      conv3x3_backward_input(d.in_c, d.h, d.w, weight.data.data(), d.out_c, dconv.data(),
                             dprev.data());
    }
    if (want_input) std::swap(dpool, dprev);
  }
  if (dinput != nullptr) *dinput = std::move(dpool);
}

}  // namespace

std::vector<double> forward(const Parameters& params, const Canvas& canvas) {
  Activations act;
  run_forward(params, canvas, act);
  return act.logits;
}

std::vector<double> forward_joint(const Parameters& params, const std::vector<Canvas>& canvases) {
  if (canvases.empty()) throw std::invalid_argument("forward_joint: no canvases");
  if (canvases.size() > 2) throw std::invalid_argument("forward_joint: at most two canvases");

  std::vector<double> mean(params.arch.num_classes, 0.0);
  Activations act;
  for (const auto& canvas : canvases) {
    run_forward(params, canvas, act);
    const auto probs = softmax(act.logits);
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += probs[k];
  }
  for (auto& p : mean) p /= static_cast<double>(canvases.size());
  return mean;
}

std::pair<double, GradientSet> loss_and_grads(const Parameters& params,
                                              std::span<const CompositeSample* const> batch,
                                              std::vector<int>* predictions) {
  if (batch.empty()) throw std::invalid_argument("loss_and_grads: empty batch");

  std::size_t total_canvases = 0;
  for (const auto* sample : batch) {
    if (sample->canvases.empty())
      throw std::invalid_argument("loss_and_grads: sample without canvases");
    if (sample->label < 0 || sample->label >= params.arch.num_classes)
      throw std::invalid_argument("loss_and_grads: label out of range");
    total_canvases += sample->canvases.size();
  }

  GradientSet grads = zeros_like(params);
  const double inv_m = 1.0 / static_cast<double>(total_canvases);
  double loss = 0.0;
  if (predictions != nullptr) {
    predictions->clear();
    predictions->reserve(batch.size());
  }

  Activations act;
  std::vector<double> dlogits(params.arch.num_classes);
  std::vector<double> mean_probs(params.arch.num_classes);
  for (const auto* sample : batch) {
    std::fill(mean_probs.begin(), mean_probs.end(), 0.0);
    for (const auto& canvas : sample->canvases) {
      run_forward(params, canvas, act);
      const auto probs = softmax(act.logits);
      loss -= std::log(probs[sample->label]) * inv_m;
      for (int k = 0; k < params.arch.num_classes; ++k) {
        dlogits[k] = (probs[k] - (k == sample->label ? 1.0 : 0.0)) * inv_m;
        mean_probs[k] += probs[k];
      }
      run_backward(params, act, dlogits, &grads, nullptr);
    }
    if (predictions != nullptr) {
      const auto best = std::max_element(mean_probs.begin(), mean_probs.end());
      predictions->push_back(static_cast<int>(best - mean_probs.begin()));
    }
  }
  return {loss, std::move(grads)};
}

std::pair<double, GradientSet> loss_and_grads(const Parameters& params,
                                              const std::vector<CompositeSample>& batch,
                                              std::vector<int>* predictions) {
  std::vector<const CompositeSample*> ptrs;
  ptrs.reserve(batch.size());
  for (const auto& sample : batch) ptrs.push_back(&sample);
  return loss_and_grads(params, std::span<const CompositeSample* const>(ptrs), predictions);
}

std::vector<double> saliency_map(const Parameters& params, const Canvas& canvas, int class_index) {
  if (class_index < 0 || class_index >= params.arch.num_classes)
    throw std::invalid_argument("saliency_map: class index out of range");

  Activations act;
  run_forward(params, canvas, act);
  std::vector<double> dlogits(params.arch.num_classes, 0.0);
  dlogits[class_index] = 1.0;
  std::vector<double> dinput;
  run_backward(params, act, dlogits, nullptr, &dinput);

  const int h = params.arch.input_h, w = params.arch.input_w;
  const std::size_t plane = static_cast<std::size_t>(h) * w;
  std::vector<double> map(plane, 0.0);
  double peak = 0.0;
  for (std::size_t i = 0; i < plane; ++i) {
    const double r = dinput[i], g = dinput[plane + i], b = dinput[2 * plane + i];
    map[i] = std::sqrt(r * r + g * g + b * b);
    peak = std::max(peak, map[i]);
  }
  if (peak > 0.0)
    for (auto& v : map) v /= peak;
  return map;
}

double mass_share(std::span<const double> map, int map_width, const std::array<int, 4>& rect) {
  if (map_width < 1 || map.size() % static_cast<std::size_t>(map_width) != 0)
    throw std::invalid_argument("mass_share: map size is not a multiple of its width");
  const int map_height = static_cast<int>(map.size()) / map_width;
  if (rect[0] < 0 || rect[1] < 0 || rect[0] + rect[2] > map_height ||
      rect[1] + rect[3] > map_width)
    throw std::invalid_argument("mass_share: rectangle exceeds the map");

  double total = 0.0;
  for (double v : map) total += v;
  if (total <= 0.0) return 0.0;

  double inside = 0.0;
  for (int y = rect[0]; y < rect[0] + rect[2]; ++y)
    for (int x = rect[1]; x < rect[1] + rect[3]; ++x)
      inside += map[static_cast<std::size_t>(y) * map_width + x];
  return inside / total;
}

namespace {

constexpr char kCheckpointMagic[8] = {'C', 'H', 'A', 'M', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kCheckpointVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
void read_pod(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("load_checkpoint: truncated file");
}

}  // namespace

void save_checkpoint(const Parameters& params, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path.string());

  out.write(kCheckpointMagic, sizeof kCheckpointMagic);
  write_pod(out, kCheckpointVersion);
  write_pod(out, static_cast<std::uint32_t>(params.arch.input_h));
  write_pod(out, static_cast<std::uint32_t>(params.arch.input_w));
  write_pod(out, static_cast<std::uint32_t>(params.arch.conv_channels.size()));
  for (int c : params.arch.conv_channels) write_pod(out, static_cast<std::uint32_t>(c));
  write_pod(out, static_cast<std::uint32_t>(params.arch.hidden_dim));
  write_pod(out, static_cast<std::uint32_t>(params.arch.num_classes));
  write_pod(out, params.seed);

  write_pod(out, static_cast<std::uint32_t>(params.tensors.size()));
  for (const auto& t : params.tensors) {
    write_pod(out, static_cast<std::uint32_t>(t.name.size()));
    out.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
    write_pod(out, static_cast<std::uint32_t>(t.shape.size()));
    for (int d : t.shape) write_pod(out, static_cast<std::uint32_t>(d));
    write_pod(out, static_cast<std::uint64_t>(t.data.size()));
    out.write(reinterpret_cast<const char*>(t.data.data()),
              static_cast<std::streamsize>(t.data.size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path.string());
}

Parameters load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path.string());

  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kCheckpointMagic, sizeof magic) != 0)
    throw std::runtime_error("load_checkpoint: not a checkpoint file: " + path.string());
  std::uint32_t version = 0;
  read_pod(in, version);
  if (version != kCheckpointVersion)
    throw std::runtime_error("load_checkpoint: unsupported version " + std::to_string(version));

  Parameters params;
  std::uint32_t u = 0;
  read_pod(in, u);
  params.arch.input_h = static_cast<int>(u);
  read_pod(in, u);
  params.arch.input_w = static_cast<int>(u);
  std::uint32_t n_blocks = 0;
  read_pod(in, n_blocks);
  params.arch.conv_channels.resize(n_blocks);
  for (auto& c : params.arch.conv_channels) {
    read_pod(in, u);
    c = static_cast<int>(u);
  }
  read_pod(in, u);
  params.arch.hidden_dim = static_cast<int>(u);
  read_pod(in, u);
  params.arch.num_classes = static_cast<int>(u);
  read_pod(in, params.seed);
  params.arch.validate();

  std::uint32_t n_tensors = 0;
  read_pod(in, n_tensors);
  params.tensors.resize(n_tensors);
  for (auto& t : params.tensors) {
    std::uint32_t name_len = 0;
    read_pod(in, name_len);
    t.name.resize(name_len);
    in.read(t.name.data(), name_len);
    std::uint32_t ndim = 0;
    read_pod(in, ndim);
    t.shape.resize(ndim);
    std::size_t expected = 1;
    for (auto& d : t.shape) {
      read_pod(in, u);
      d = static_cast<int>(u);
      expected *= static_cast<std::size_t>(d);
    }
    std::uint64_t count = 0;
    read_pod(in, count);
    if (count != expected)
      throw std::runtime_error("load_checkpoint: shape mismatch in tensor " + t.name);
    t.data.resize(count);
    in.read(reinterpret_cast<char*>(t.data.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw std::runtime_error("load_checkpoint: truncated tensor " + t.name);
  }

  // The tensor list must agree with the recorded arch.
  const Parameters reference = init_model(params.arch, 0);
  if (reference.tensors.size() != params.tensors.size())
    throw std::runtime_error("load_checkpoint: tensor count does not match arch");
  for (std::size_t i = 0; i < params.tensors.size(); ++i) {
    if (params.tensors[i].name != reference.tensors[i].name ||
        params.tensors[i].shape != reference.tensors[i].shape)
      throw std::runtime_error("load_checkpoint: tensor " + params.tensors[i].name +
                               " does not match arch");
  }
  return params;
}

}  // namespace cham
