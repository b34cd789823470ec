#include "cham/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cham/metrics.hpp"
#include "cham/rng.hpp"

namespace cham {

void TrainConfig::validate() const {
  if (epochs < 0) throw std::invalid_argument("TrainConfig: epochs must be >= 0");
  if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("TrainConfig: learning_rate must be > 0");
  if (momentum < 0.0 || momentum >= 1.0)
    throw std::invalid_argument("TrainConfig: momentum must lie in [0,1)");
  if (train_image_pct != 100 && train_text_pct != 100)
    throw std::invalid_argument("TrainConfig: at least one train modality must stay at 100%");
}

History train_model(Parameters& params, const Dataset& train_set, const ComposeContext& ctx,
                    const TrainConfig& cfg) {
  cfg.validate();
  if (train_set.records.empty()) throw std::invalid_argument("train_model: empty dataset");
  if (train_set.num_classes != params.arch.num_classes)
    throw std::invalid_argument("train_model: dataset classes do not match the model");

  const MaskPlan plan = make_plan(train_set.ids(), cfg.train_image_pct, cfg.train_text_pct,
                                  derive_seed(cfg.seed, "train.mask"));
  const auto composites = apply_plan(train_set, plan, ctx, cfg.variant);

  GradientSet velocity = zeros_like(params);
  Rng shuffle_rng(derive_seed(cfg.seed, "train.shuffle"));
  std::vector<std::size_t> order(composites.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  History history;
  std::vector<const CompositeSample*> batch;
  std::vector<int> batch_predictions;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(order);

    double loss_sum = 0.0;
    std::size_t canvas_count = 0;
    std::size_t hits = 0;

    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      for (std::size_t k = start; k < stop; ++k) batch.push_back(&composites[order[k]]);

      auto [batch_loss, grads] = loss_and_grads(
          params, std::span<const CompositeSample* const>(batch), &batch_predictions);
      if (!std::isfinite(batch_loss))
        throw std::runtime_error("train_model: loss diverged at epoch " + std::to_string(epoch + 1));

      std::size_t batch_canvases = 0;
      for (const auto* sample : batch) batch_canvases += sample->canvases.size();
      loss_sum += batch_loss * static_cast<double>(batch_canvases);
      canvas_count += batch_canvases;
      for (std::size_t k = start; k < stop; ++k)
        if (batch_predictions[k - start] == composites[order[k]].label) ++hits;

      for (std::size_t t = 0; t < params.tensors.size(); ++t) {
        auto& theta = params.tensors[t].data;
        auto& vel = velocity[t].data;
        const auto& g = grads[t].data;
        for (std::size_t i = 0; i < theta.size(); ++i) {
          vel[i] = cfg.momentum * vel[i] - cfg.learning_rate * g[i];
          theta[i] += vel[i];
        }
      }
    }

    EpochStats stats;
    stats.mean_loss = loss_sum / static_cast<double>(canvas_count);
    stats.train_accuracy = static_cast<double>(hits) / static_cast<double>(order.size());
    history.epochs.push_back(stats);
  }
  return history;
}

Metric parse_metric(const std::string& name) {
  if (name == "accuracy") return Metric::accuracy;
  if (name == "auroc") return Metric::auroc;
  if (name == "f1_macro") return Metric::f1_macro;
  throw std::invalid_argument("unknown metric: " + name +
                              " (expected accuracy, auroc or f1_macro)");
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::accuracy: return "accuracy";
    case Metric::auroc: return "auroc";
    case Metric::f1_macro: return "f1_macro";
  }
  return "?";
}

EvalResult evaluate(const Parameters& params, const Dataset& test_set, const ComposeContext& ctx,
                    Variant variant, const EvalSpec& spec, const std::vector<Metric>& metrics) {
  if (test_set.records.empty()) throw std::invalid_argument("evaluate: empty dataset");

  const MaskPlan plan = make_plan(test_set.ids(), spec.image_pct, spec.text_pct, spec.seed);
  const auto composites = apply_plan(test_set, plan, ctx, variant);

  EvalResult result;
  result.predictions.reserve(composites.size());
  result.labels.reserve(composites.size());
  const bool binary = params.arch.num_classes == 2;

  for (const auto& sample : composites) {
    const auto probs = forward_joint(params, sample.canvases);
    const auto best = std::max_element(probs.begin(), probs.end());
    result.predictions.push_back(static_cast<int>(best - probs.begin()));
    result.labels.push_back(sample.label);
    if (binary) result.positive_scores.push_back(probs[1]);
  }

  for (const Metric m : metrics) {
    switch (m) {
      case Metric::accuracy:
        result.values["accuracy"] = accuracy(result.predictions, result.labels);
        break;
      case Metric::auroc:
        if (!binary) throw std::invalid_argument("evaluate: auroc requires a binary task");
        result.values["auroc"] = auroc(result.positive_scores, result.labels);
        break;
      case Metric::f1_macro:
        result.values["f1_macro"] =
            f1_macro(result.predictions, result.labels, params.arch.num_classes);
        break;
    }
  }
  return result;
}

}  // namespace cham
