#include "cham/sweep.hpp"

#include <sstream>

#include "cham/rng.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cham;

namespace {

struct Fixture {
  Dataset train_set;
  Dataset test_set;
  EmbeddingTable table;
  ArchSpec arch;
  ComposeContext ctx;
  SweepConfig cfg;

  Fixture() {
    SyntheticSpec spec;
    spec.num_classes = 2;
    spec.samples_per_class = 20;
    spec.image_h = 16;
    spec.image_w = 16;
    spec.words_per_sample = 3;
    spec.seed = 77;
    const auto data = generate_synthetic(spec);
    std::tie(train_set, test_set) = split_dataset(data, 0.75, 1);

    std::vector<std::vector<std::string>> corpus;
    for (const auto& r : train_set.records) corpus.push_back(tokenize(r.text));
    SkipGramConfig emb_cfg;
    emb_cfg.dim = 6;
    emb_cfg.epochs = 2;
    table = train_skipgram(corpus, build_vocab(corpus, 1), emb_cfg);

    arch.input_h = 16;
    arch.input_w = 16;
    arch.conv_channels = {4, 6};
    arch.hidden_dim = 16;
    arch.num_classes = 2;

    ctx.table = &table;
    ctx.layout = make_layout(6, 2, 4, 3);
    ctx.input_h = 16;
    ctx.input_w = 16;

    cfg.train_cells = {{100, 100}};
    cfg.test_cells = {{100, 100}};
    cfg.seeds = {1};
    cfg.base.epochs = 1;
    cfg.base.batch_size = 8;
    cfg.base.variant = Variant::joint;
    cfg.metrics = {Metric::accuracy, Metric::auroc};
  }
};

}  // namespace

TEST_CASE("a single-cell grid yields one row per metric per seed") {
  const Fixture fx;
  const auto report = run_sweep(fx.train_set, fx.test_set, fx.ctx, fx.arch, fx.cfg);
  CHECK(report.rows.size() == 2);  // two metrics, one cell, one seed
  for (const auto& row : report.rows) {
    CHECK(row.train_image_pct == 100);
    CHECK(row.test_text_pct == 100);
    CHECK(row.seed == 1);
    CHECK(row.value >= 0.0);
    CHECK(row.value <= 1.0);
  }
}

TEST_CASE("grids multiply out across cells and seeds") {
  Fixture fx;
  fx.cfg.test_cells = {{100, 100}, {100, 50}, {100, 0}};
  fx.cfg.seeds = {1, 2};
  fx.cfg.metrics = {Metric::accuracy};
  const auto report = run_sweep(fx.train_set, fx.test_set, fx.ctx, fx.arch, fx.cfg);
  CHECK(report.rows.size() == 3 * 2);
}

TEST_CASE("sweep reports are deterministic") {
  const Fixture fx;
  const auto a = run_sweep(fx.train_set, fx.test_set, fx.ctx, fx.arch, fx.cfg);
  const auto b = run_sweep(fx.train_set, fx.test_set, fx.ctx, fx.arch, fx.cfg);
  std::ostringstream csv_a, csv_b;
  write_report_csv(a, csv_a);
  write_report_csv(b, csv_b);
  CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("csv format is the flat availability table") {
  const Fixture fx;
  auto report = run_sweep(fx.train_set, fx.test_set, fx.ctx, fx.arch, fx.cfg);
  report.dataset_id = "toy";
  std::ostringstream out;
  write_report_csv(report, out);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "train_img,train_txt,test_img,test_txt,metric,value,seed");
  std::string row;
  std::getline(lines, row);
  CHECK(row.starts_with("100,100,100,100,accuracy,"));
  CHECK(row.ends_with(",1"));
}

TEST_CASE("pretty table carries per-seed rows and a mean row") {
  Fixture fx;
  fx.cfg.seeds = {1, 2};
  fx.cfg.metrics = {Metric::accuracy};
  auto report = run_sweep(fx.train_set, fx.test_set, fx.ctx, fx.arch, fx.cfg);
  report.dataset_id = "toy";
  std::ostringstream out;
  write_report_table(report, out);
  const auto text = out.str();
  CHECK(text.find("mean") != std::string::npos);
  CHECK(text.find("accuracy") != std::string::npos);
  CHECK(text.find("toy") != std::string::npos);
}

TEST_CASE("plot data aggregates seeds per cell") {
  Fixture fx;
  fx.cfg.seeds = {1, 2};
  fx.cfg.metrics = {Metric::accuracy};
  const auto report = run_sweep(fx.train_set, fx.test_set, fx.ctx, fx.arch, fx.cfg);
  std::ostringstream out;
  write_plot_data(report, out);
  std::istringstream lines(out.str());
  std::string header, row, extra;
  std::getline(lines, header);
  CHECK(header == "train_img\ttrain_txt\ttest_img\ttest_txt\tmetric\tmean_value");
  CHECK(std::getline(lines, row).good());
  CHECK_FALSE(std::getline(lines, extra).good());  // one aggregated line per cell/metric
}

TEST_CASE("sweeps can persist per-cell checkpoints") {
  cham::testing::TempDir dir("sweepckpt");
  Fixture fx;
  fx.cfg.seeds = {1, 2};
  const auto ckpt_dir = dir.path();
  run_sweep(fx.train_set, fx.test_set, fx.ctx, fx.arch, fx.cfg, &ckpt_dir);
  CHECK(std::filesystem::exists(ckpt_dir / "model_s1_tr100x100.ckpt"));
  CHECK(std::filesystem::exists(ckpt_dir / "model_s2_tr100x100.ckpt"));
  const auto loaded = load_checkpoint(ckpt_dir / "model_s1_tr100x100.ckpt");
  CHECK(loaded.arch == fx.arch);
}

TEST_CASE("sweep validation") {
  const Fixture fx;
  auto cfg = fx.cfg;
  cfg.seeds.clear();
  CHECK_THROWS(run_sweep(fx.train_set, fx.test_set, fx.ctx, fx.arch, cfg));
  cfg = fx.cfg;
  cfg.test_cells.clear();
  CHECK_THROWS(run_sweep(fx.train_set, fx.test_set, fx.ctx, fx.arch, cfg));
  cfg = fx.cfg;
  cfg.metrics.clear();
  CHECK_THROWS(run_sweep(fx.train_set, fx.test_set, fx.ctx, fx.arch, cfg));
}
