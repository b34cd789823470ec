#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cham/dataset.hpp"
#include "cham/mask.hpp"
#include "cham/net.hpp"
#include "cham/pipeline.hpp"

namespace cham {

struct TrainConfig {
  int epochs = 4;
  int batch_size = 32;
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::uint64_t seed = 1;
  Variant variant = Variant::joint;
  int train_image_pct = 100;
  int train_text_pct = 100;

  void validate() const;
};

struct EpochStats {
  double mean_loss = 0.0;
  double train_accuracy = 0.0;
};

struct History {
  std::vector<EpochStats> epochs;
};

// Mini-batch SGD with momentum. The train-side availability plan is drawn
// once, so each sample's modality availability is fixed for the whole run.
// Deterministic in cfg.seed; throws if the loss becomes non-finite.
History train_model(Parameters& params, const Dataset& train_set, const ComposeContext& ctx,
                    const TrainConfig& cfg);

struct EvalSpec {
  int image_pct = 100;
  int text_pct = 100;
  std::uint64_t seed = 1;
};

enum class Metric { accuracy, auroc, f1_macro };

Metric parse_metric(const std::string& name);
const char* metric_name(Metric m);

struct EvalResult {
  std::map<std::string, double> values;  // metric name -> value in [0,1]
  std::vector<int> predictions;
  std::vector<int> labels;
  std::vector<double> positive_scores;  // class-1 probability when binary
};

// Composites built from the test-side availability plan; probabilities come
// from the weight-shared forward over each sample's canvases.
EvalResult evaluate(const Parameters& params, const Dataset& test_set, const ComposeContext& ctx,
                    Variant variant, const EvalSpec& spec, const std::vector<Metric>& metrics);

}  // namespace cham
