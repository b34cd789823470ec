#include "cham/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <map>
#include <ostream>
#include <stdexcept>

#include "cham/rng.hpp"

namespace cham {

SweepReport run_sweep(const Dataset& train_set, const Dataset& test_set,
                      const ComposeContext& ctx, const ArchSpec& arch, const SweepConfig& cfg,
                      const std::filesystem::path* checkpoint_dir) {
  if (cfg.train_cells.empty() || cfg.test_cells.empty())
    throw std::invalid_argument("run_sweep: empty availability grid");
  if (cfg.seeds.empty()) throw std::invalid_argument("run_sweep: no seeds");
  if (cfg.metrics.empty()) throw std::invalid_argument("run_sweep: no metrics requested");

  SweepReport report;
  report.variant = cfg.base.variant;
  report.arch = arch;

  for (const std::uint64_t seed : cfg.seeds) {
    for (const auto& tc : cfg.train_cells) {
      Parameters params = init_model(arch, derive_seed(seed, "init"));
      TrainConfig train_cfg = cfg.base;
      train_cfg.seed = derive_seed(seed, "train");
      train_cfg.train_image_pct = tc.image_pct;
      train_cfg.train_text_pct = tc.text_pct;
      train_model(params, train_set, ctx, train_cfg);

      if (checkpoint_dir != nullptr) {
        char name[96];
        std::snprintf(name, sizeof name, "model_s%llu_tr%dx%d.ckpt",
                      static_cast<unsigned long long>(seed), tc.image_pct, tc.text_pct);
        save_checkpoint(params, *checkpoint_dir / name);
      }

      for (const auto& ec : cfg.test_cells) {
        const EvalSpec spec{ec.image_pct, ec.text_pct, derive_seed(seed, "test.mask")};
        const auto result = evaluate(params, test_set, ctx, cfg.base.variant, spec, cfg.metrics);
        for (const Metric m : cfg.metrics) {
          SweepRow row;
          row.train_image_pct = tc.image_pct;
          row.train_text_pct = tc.text_pct;
          row.test_image_pct = ec.image_pct;
          row.test_text_pct = ec.text_pct;
          row.metric = metric_name(m);
          row.value = result.values.at(metric_name(m));
          row.seed = seed;
          report.rows.push_back(std::move(row));
        }
      }
    }
  }
  return report;
}

namespace {

std::string pct1(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", fraction * 100.0);
  return buf;
}

struct CellKey {
  int train_img, train_txt, test_img, test_txt;
  auto operator<=>(const CellKey&) const = default;
};

CellKey cell_of(const SweepRow& row) {
  return {row.train_image_pct, row.train_text_pct, row.test_image_pct, row.test_text_pct};
}

}  // namespace

void write_report_csv(const SweepReport& report, std::ostream& out) {
  out << "train_img,train_txt,test_img,test_txt,metric,value,seed\n";
  for (const auto& row : report.rows) {
    out << row.train_image_pct << ',' << row.train_text_pct << ',' << row.test_image_pct << ','
        << row.test_text_pct << ',' << row.metric << ',' << pct1(row.value) << ',' << row.seed
        << '\n';
  }
}

void write_report_table(const SweepReport& report, std::ostream& out) {
  // first-appearance orders
  std::vector<std::string> metrics;
  std::vector<CellKey> cells;
  std::vector<std::uint64_t> seeds;
  std::map<CellKey, std::map<std::string, std::map<std::uint64_t, double>>> values;
  for (const auto& row : report.rows) {
    if (std::find(metrics.begin(), metrics.end(), row.metric) == metrics.end())
      metrics.push_back(row.metric);
    const CellKey key = cell_of(row);
    if (std::find(cells.begin(), cells.end(), key) == cells.end()) cells.push_back(key);
    if (std::find(seeds.begin(), seeds.end(), row.seed) == seeds.end()) seeds.push_back(row.seed);
    values[key][row.metric][row.seed] = row.value;
  }

  out << "dataset: " << report.dataset_id << "  variant: " << variant_name(report.variant)
      << "\n\n";
  out << std::left << std::setw(10) << "train_img" << std::setw(10) << "train_txt" << std::setw(10)
      << "test_img" << std::setw(10) << "test_txt" << std::setw(8) << "seed";
  for (const auto& m : metrics) out << std::setw(12) << m;
  out << '\n';
  out << std::string(48 + 12 * metrics.size(), '-') << '\n';

  for (const auto& cell : cells) {
    const auto& cell_values = values[cell];
    auto print_prefix = [&](const std::string& seed_label) {
      out << std::left << std::setw(10) << cell.train_img << std::setw(10) << cell.train_txt
          << std::setw(10) << cell.test_img << std::setw(10) << cell.test_txt << std::setw(8)
          << seed_label;
    };
    for (const std::uint64_t seed : seeds) {
      bool any = false;
      for (const auto& m : metrics)
        if (cell_values.count(m) && cell_values.at(m).count(seed)) any = true;
      if (!any) continue;
      print_prefix(std::to_string(seed));
      for (const auto& m : metrics) {
        const auto it = cell_values.find(m);
        if (it != cell_values.end() && it->second.count(seed))
          out << std::setw(12) << pct1(it->second.at(seed));
        else
          out << std::setw(12) << "-";
      }
      out << '\n';
    }
    print_prefix("mean");
    for (const auto& m : metrics) {
      const auto it = cell_values.find(m);
      if (it == cell_values.end() || it->second.empty()) {
        out << std::setw(12) << "-";
        continue;
      }
      double sum = 0.0;
      for (const auto& [_, v] : it->second) sum += v;
      out << std::setw(12) << pct1(sum / static_cast<double>(it->second.size()));
    }
    out << '\n';
  }
}

void write_plot_data(const SweepReport& report, std::ostream& out) {
  std::vector<std::pair<CellKey, std::string>> order;
  std::map<std::pair<CellKey, std::string>, std::pair<double, int>> agg;
  for (const auto& row : report.rows) {
    const auto key = std::make_pair(cell_of(row), row.metric);
    if (!agg.count(key)) order.push_back(key);
    auto& [sum, count] = agg[key];
    sum += row.value;
    ++count;
  }

  out << "train_img\ttrain_txt\ttest_img\ttest_txt\tmetric\tmean_value\n";
  for (const auto& key : order) {
    const auto& [cell, metric] = key;
    const auto& [sum, count] = agg.at(key);
    out << cell.train_img << '\t' << cell.train_txt << '\t' << cell.test_img << '\t'
        << cell.test_txt << '\t' << metric << '\t' << pct1(sum / count) << '\n';
  }
}

}  // namespace cham
