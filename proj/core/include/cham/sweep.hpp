#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cham/dataset.hpp"
#include "cham/net.hpp"
#include "cham/pipeline.hpp"
#include "cham/train.hpp"

namespace cham {

struct AvailabilityCell {
  int image_pct = 100;
  int text_pct = 100;

  friend bool operator==(const AvailabilityCell& a, const AvailabilityCell& b) = default;
};

struct SweepConfig {
  std::vector<AvailabilityCell> train_cells;
  std::vector<AvailabilityCell> test_cells;
  std::vector<std::uint64_t> seeds;
  TrainConfig base;  // epochs, batch size, rates, variant; seed and pcts set per cell
  std::vector<Metric> metrics;
};

struct SweepRow {
  int train_image_pct = 100;
  int train_text_pct = 100;
  int test_image_pct = 100;
  int test_text_pct = 100;
  std::string metric;
  double value = 0.0;  // fraction in [0,1]
  std::uint64_t seed = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::string dataset_id;
  Variant variant = Variant::joint;
  ArchSpec arch;
};

// Trains one model per (seed, train cell) and evaluates it on every test
// cell. When checkpoint_dir is set, each trained model is saved there as
// model_s<seed>_tr<img>x<txt>.ckpt.
SweepReport run_sweep(const Dataset& train_set, const Dataset& test_set,
                      const ComposeContext& ctx, const ArchSpec& arch, const SweepConfig& cfg,
                      const std::filesystem::path* checkpoint_dir = nullptr);

// Flat CSV: train_img,train_txt,test_img,test_txt,metric,value,seed with
// values as percentages, one decimal.
void write_report_csv(const SweepReport& report, std::ostream& out);

// Availability-grid table with per-seed rows and a labeled mean row per cell.
void write_report_table(const SweepReport& report, std::ostream& out);

// Line-plot data: per (test cell, metric), the mean value across seeds.
void write_plot_data(const SweepReport& report, std::ostream& out);

}  // namespace cham
