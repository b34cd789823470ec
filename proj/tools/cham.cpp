// cham: encode text as RGB pixel blocks from word embeddings, compose joint
// or fused multimodal canvases, train a weight-shared visual classifier and
// sweep missing-modality availability grids.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cham/dataset.hpp"
#include "cham/embedding.hpp"
#include "cham/metrics.hpp"
#include "cham/net.hpp"
#include "cham/pipeline.hpp"
#include "cham/png.hpp"
#include "cham/rng.hpp"
#include "cham/sweep.hpp"
#include "cham/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---- shared flag bundles ----------------------------------------------

struct LayoutFlags {
  int block_scale = 4;
  int grid_width = 0;  // 0: derived from the input width
  int max_words = 8;

  void attach(CLI::App* cmd) {
    cmd->add_option("--block-scale", block_scale, "Pixels per logical encoding cell")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--grid-width", grid_width,
                    "Logical pixels per encoding row (0: derive from input size)");
    cmd->add_option("--max-words", max_words, "Words encoded per text")
        ->check(CLI::PositiveNumber);
  }

  cham::LayoutSpec resolve(int dim, int input_w) const {
    int width = grid_width;
    if (width == 0) width = std::max(dim / 3, input_w / block_scale);
    return cham::make_layout(dim, block_scale, width, max_words);
  }

  json echo() const {
    return {{"block_scale", block_scale}, {"grid_width", grid_width}, {"max_words", max_words}};
  }
};

struct ArchFlags {
  std::vector<int> conv_channels{16, 32, 64};
  int hidden = 128;
  int input_size = 64;

  void attach(CLI::App* cmd) {
    cmd->add_option("--conv", conv_channels, "Conv block output channels")->delimiter(',');
    cmd->add_option("--hidden", hidden, "Hidden dense width")->check(CLI::PositiveNumber);
    cmd->add_option("--input-size", input_size, "Square model input size")
        ->check(CLI::PositiveNumber);
  }

  cham::ArchSpec resolve(int num_classes) const {
    cham::ArchSpec arch;
    arch.input_h = input_size;
    arch.input_w = input_size;
    arch.conv_channels = conv_channels;
    arch.hidden_dim = hidden;
    arch.num_classes = num_classes;
    arch.validate();
    return arch;
  }

  json echo() const {
    return {{"conv", conv_channels}, {"hidden", hidden}, {"input_size", input_size}};
  }
};

struct TrainFlags {
  int epochs = 4;
  int batch_size = 32;
  double learning_rate = 0.01;
  double momentum = 0.9;
  double train_fraction = 0.75;

  void attach(CLI::App* cmd) {
    cmd->add_option("--epochs", epochs)->check(CLI::NonNegativeNumber);
    cmd->add_option("--batch", batch_size)->check(CLI::PositiveNumber);
    cmd->add_option("--lr", learning_rate)->check(CLI::PositiveNumber);
    cmd->add_option("--momentum", momentum)->check(CLI::Range(0.0, 0.9999));
    cmd->add_option("--train-fraction", train_fraction, "Stratified train share of the manifest")
        ->check(CLI::Range(1e-6, 1.0 - 1e-6));
  }

  json echo() const {
    return {{"epochs", epochs},
            {"batch", batch_size},
            {"lr", learning_rate},
            {"momentum", momentum},
            {"train_fraction", train_fraction}};
  }
};

// ---- small helpers ------------------------------------------------------

void write_config_echo(const fs::path& path, const json& config) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config echo " + path.string());
  out << config.dump(2) << '\n';
}

std::vector<std::vector<std::string>> corpus_of(const cham::Dataset& data) {
  std::vector<std::vector<std::string>> corpus;
  corpus.reserve(data.records.size());
  for (const auto& record : data.records) corpus.push_back(cham::tokenize(record.text));
  return corpus;
}

cham::AvailabilityCell parse_cell(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("availability cell must look like IMG:TXT, got " + text);
  cham::AvailabilityCell cell;
  cell.image_pct = std::stoi(text.substr(0, colon));
  cell.text_pct = std::stoi(text.substr(colon + 1));
  return cell;
}

std::vector<cham::Metric> parse_metrics(const std::vector<std::string>& names) {
  std::vector<cham::Metric> metrics;
  for (const auto& name : names) metrics.push_back(cham::parse_metric(name));
  return metrics;
}

cham::Canvas grayscale_canvas(const std::vector<double>& map, int h, int w) {
  cham::Canvas canvas(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double v = map[static_cast<std::size_t>(y) * w + x];
      const auto byte = static_cast<std::uint8_t>(std::clamp(v * 255.0 + 0.5, 0.0, 255.0));
      canvas.set(y, x, {byte, byte, byte});
    }
  return canvas;
}


// ---- subcommands --------------------------------------------------------

void cmd_synth(const fs::path& out_dir, cham::SyntheticSpec spec, std::uint64_t seed) {
  spec.seed = cham::derive_seed(seed, "synth");
  const auto data = cham::generate_synthetic(spec);
  cham::materialize(data, out_dir);

  json config{{"command", "synth"},
              {"seed", seed},
              {"classes", spec.num_classes},
              {"per_class", spec.samples_per_class},
              {"size", spec.image_h},
              {"keywords_per_class", spec.keywords_per_class},
              {"words_per_sample", spec.words_per_sample},
              {"filler_vocab", spec.filler_vocab_size},
              {"noise_std", spec.image_noise_std},
              {"keyword_prob", spec.text_keyword_prob}};
  write_config_echo(out_dir / "config.json", config);
  std::cout << "wrote " << data.records.size() << " samples (" << spec.num_classes
            << " classes) to " << out_dir.string() << '\n';
}

void cmd_embed(const fs::path& manifest, const fs::path& out_file, cham::SkipGramConfig cfg,
               std::uint64_t seed) {
  const auto data = cham::load_manifest(manifest);
  auto corpus = corpus_of(data);
  const auto vocab = cham::build_vocab(corpus, cfg.min_count);
  // min_count may have dropped rare tokens; the trainer demands full coverage
  for (auto& sentence : corpus)
    std::erase_if(sentence, [&](const std::string& tok) { return !vocab.contains(tok); });

  cfg.seed = cham::derive_seed(seed, "embed");
  const auto table = cham::train_skipgram(corpus, vocab, cfg);
  cham::save_embeddings(table, out_file);

  json config{{"command", "embed"},   {"seed", seed},
              {"manifest", manifest.string()}, {"out", out_file.string()},
              {"dim", cfg.dim},       {"window", cfg.window},
              {"negatives", cfg.negatives},    {"epochs", cfg.epochs},
              {"lr", cfg.learning_rate},       {"min_count", cfg.min_count}};
  write_config_echo(out_file.string() + ".config.json", config);
  std::cout << "trained " << table.size() << " embeddings of dim " << table.dim << " -> "
            << out_file.string() << '\n';
}

void cmd_encode(const std::string& text, const fs::path& emb_file, const fs::path& out_png,
                const LayoutFlags& layout_flags) {
  const auto table = cham::load_embeddings(emb_file);
  int width = layout_flags.grid_width;
  if (width == 0) width = table.dim / 3;  // one word per row by default
  const auto layout =
      cham::make_layout(table.dim, layout_flags.block_scale, width, layout_flags.max_words);
  const auto enc = cham::encode_text(cham::tokenize(text), table, layout);
  cham::write_png(enc.pixels, out_png);

  json config{{"command", "encode"},
              {"text", text},
              {"emb", emb_file.string()},
              {"out", out_png.string()},
              {"layout", layout_flags.echo()}};
  write_config_echo(out_png.string() + ".config.json", config);
  std::cout << "encoded " << enc.word_count << " words (" << enc.skipped << " skipped) -> "
            << out_png.string() << '\n';
}

void cmd_compose(const fs::path& manifest, const fs::path& emb_file, const fs::path& out_dir,
                 int count, int input_size, const LayoutFlags& layout_flags) {
  const auto data = cham::load_manifest(manifest);
  const auto table = cham::load_embeddings(emb_file);

  cham::ComposeContext ctx;
  ctx.table = &table;
  ctx.layout = layout_flags.resolve(table.dim, input_size);
  ctx.input_h = input_size;
  ctx.input_w = input_size;
  ctx.validate();

  fs::create_directories(out_dir);
  const auto [row, col] = ctx.anchor_for(cham::Variant::fused);
  const int n = std::min<int>(count, static_cast<int>(data.records.size()));
  for (int i = 0; i < n; ++i) {
    const auto& record = data.records[i];
    const auto image = cham::sample_canvas(record, input_size, input_size);
    const auto enc = cham::encode_text(cham::tokenize(record.text), table, ctx.layout);
    cham::write_png(cham::debug_sheet(image, enc, row, col), out_dir / ("sheet_" + record.id + ".png"));
  }

  json config{{"command", "compose"},        {"manifest", manifest.string()},
              {"emb", emb_file.string()},    {"out", out_dir.string()},
              {"count", count},              {"input_size", input_size},
              {"layout", layout_flags.echo()}};
  write_config_echo(out_dir / "config.json", config);
  std::cout << "wrote " << n << " debug sheets to " << out_dir.string() << '\n';
}

struct SplitInputs {
  cham::Dataset train_set;
  cham::Dataset test_set;
  cham::EmbeddingTable table;
};

SplitInputs load_split_inputs(const fs::path& manifest, const fs::path& emb_file,
                              double train_fraction, std::uint64_t seed) {
  SplitInputs inputs;
  const auto data = cham::load_manifest(manifest);
  std::tie(inputs.train_set, inputs.test_set) =
      cham::split_dataset(data, train_fraction, cham::derive_seed(seed, "split"));
  inputs.table = cham::load_embeddings(emb_file);
  return inputs;
}

cham::ComposeContext make_context(const cham::EmbeddingTable& table,
                                  const LayoutFlags& layout_flags, int input_size) {
  cham::ComposeContext ctx;
  ctx.table = &table;
  ctx.layout = layout_flags.resolve(table.dim, input_size);
  ctx.input_h = input_size;
  ctx.input_w = input_size;
  ctx.validate();
  return ctx;
}

void cmd_train(const fs::path& manifest, const fs::path& emb_file, const fs::path& out_dir,
               const std::string& variant_name_str, const TrainFlags& train_flags,
               const ArchFlags& arch_flags, const LayoutFlags& layout_flags, int train_image_pct,
               int train_text_pct, std::uint64_t seed) {
  const auto variant = cham::parse_variant(variant_name_str);
  auto inputs = load_split_inputs(manifest, emb_file, train_flags.train_fraction, seed);
  const auto ctx = make_context(inputs.table, layout_flags, arch_flags.input_size);
  const auto arch = arch_flags.resolve(inputs.train_set.num_classes);

  auto params = cham::init_model(arch, cham::derive_seed(seed, "init"));
  cham::TrainConfig cfg;
  cfg.epochs = train_flags.epochs;
  cfg.batch_size = train_flags.batch_size;
  cfg.learning_rate = train_flags.learning_rate;
  cfg.momentum = train_flags.momentum;
  cfg.seed = cham::derive_seed(seed, "train");
  cfg.variant = variant;
  cfg.train_image_pct = train_image_pct;
  cfg.train_text_pct = train_text_pct;

  const auto history = cham::train_model(params, inputs.train_set, ctx, cfg);

  fs::create_directories(out_dir);
  cham::save_checkpoint(params, out_dir / "checkpoint.ckpt");
  {
    std::ofstream hist(out_dir / "history.csv");
    hist << "epoch,mean_loss,train_accuracy\n";
    char buf[64];
    for (std::size_t e = 0; e < history.epochs.size(); ++e) {
      std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f\n", e + 1, history.epochs[e].mean_loss,
                    history.epochs[e].train_accuracy);
      hist << buf;
    }
  }

  json config{{"command", "train"},
              {"manifest", manifest.string()},
              {"emb", emb_file.string()},
              {"out", out_dir.string()},
              {"variant", variant_name_str},
              {"seed", seed},
              {"train_image_pct", train_image_pct},
              {"train_text_pct", train_text_pct},
              {"train", train_flags.echo()},
              {"arch", arch_flags.echo()},
              {"layout", layout_flags.echo()}};
  write_config_echo(out_dir / "config.json", config);

  if (!history.epochs.empty()) {
    const auto& last = history.epochs.back();
    std::cout << "epoch " << history.epochs.size() << ": loss " << last.mean_loss
              << ", train accuracy " << last.train_accuracy << '\n';
  }
  std::cout << "checkpoint -> " << (out_dir / "checkpoint.ckpt").string() << '\n';
}

void cmd_eval(const fs::path& manifest, const fs::path& emb_file, const fs::path& checkpoint,
              const fs::path& out_dir, const std::string& variant_name_str,
              const std::vector<std::string>& metric_names, double train_fraction,
              const LayoutFlags& layout_flags, int test_image_pct, int test_text_pct,
              std::uint64_t seed) {
  const auto variant = cham::parse_variant(variant_name_str);
  const auto metrics = parse_metrics(metric_names);
  auto inputs = load_split_inputs(manifest, emb_file, train_fraction, seed);
  const auto params = cham::load_checkpoint(checkpoint);
  const auto ctx = make_context(inputs.table, layout_flags, params.arch.input_h);

  const cham::EvalSpec spec{test_image_pct, test_text_pct, cham::derive_seed(seed, "test.mask")};
  const auto result = cham::evaluate(params, inputs.test_set, ctx, variant, spec, metrics);

  fs::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "metrics.csv");
    out << "metric,value\n";
    char buf[64];
    for (const auto& [name, value] : result.values) {
      std::snprintf(buf, sizeof buf, "%s,%.1f\n", name.c_str(), value * 100.0);
      out << buf;
    }
  }

  json config{{"command", "eval"},
              {"manifest", manifest.string()},
              {"emb", emb_file.string()},
              {"checkpoint", checkpoint.string()},
              {"out", out_dir.string()},
              {"variant", variant_name_str},
              {"metrics", metric_names},
              {"train_fraction", train_fraction},
              {"test_image_pct", test_image_pct},
              {"test_text_pct", test_text_pct},
              {"seed", seed},
              {"layout", layout_flags.echo()}};
  write_config_echo(out_dir / "config.json", config);

  for (const auto& [name, value] : result.values)
    std::cout << name << ": " << value * 100.0 << "%\n";
}

void cmd_sweep(const fs::path& manifest, const fs::path& emb_file, const fs::path& out_dir,
               const std::string& variant_name_str, const std::vector<std::string>& train_cells,
               const std::vector<std::string>& test_cells, const std::vector<std::uint64_t>& seeds,
               const std::vector<std::string>& metric_names, const TrainFlags& train_flags,
               const ArchFlags& arch_flags, const LayoutFlags& layout_flags, std::uint64_t seed) {
  auto inputs = load_split_inputs(manifest, emb_file, train_flags.train_fraction, seed);
  const auto ctx = make_context(inputs.table, layout_flags, arch_flags.input_size);
  const auto arch = arch_flags.resolve(inputs.train_set.num_classes);

  cham::SweepConfig cfg;
  for (const auto& cell : train_cells) cfg.train_cells.push_back(parse_cell(cell));
  for (const auto& cell : test_cells) cfg.test_cells.push_back(parse_cell(cell));
  cfg.seeds = seeds;
  cfg.metrics = parse_metrics(metric_names);
  cfg.base.epochs = train_flags.epochs;
  cfg.base.batch_size = train_flags.batch_size;
  cfg.base.learning_rate = train_flags.learning_rate;
  cfg.base.momentum = train_flags.momentum;
  cfg.base.variant = cham::parse_variant(variant_name_str);

  const auto checkpoint_dir = out_dir / "checkpoints";
  fs::create_directories(checkpoint_dir);
  auto report = cham::run_sweep(inputs.train_set, inputs.test_set, ctx, arch, cfg, &checkpoint_dir);
  report.dataset_id = manifest.stem().string();

  {
    std::ofstream csv(out_dir / "report.csv");
    cham::write_report_csv(report, csv);
  }
  {
    std::ofstream table(out_dir / "report.txt");
    cham::write_report_table(report, table);
  }
  {
    std::ofstream plot(out_dir / "plot.tsv");
    cham::write_plot_data(report, plot);
  }

  json config{{"command", "sweep"},
              {"manifest", manifest.string()},
              {"emb", emb_file.string()},
              {"out", out_dir.string()},
              {"variant", variant_name_str},
              {"train_cells", train_cells},
              {"test_cells", test_cells},
              {"seeds", seeds},
              {"metrics", metric_names},
              {"seed", seed},
              {"train", train_flags.echo()},
              {"arch", arch_flags.echo()},
              {"layout", layout_flags.echo()}};
  write_config_echo(out_dir / "config.json", config);

  cham::write_report_table(report, std::cout);
  std::cout << "report -> " << (out_dir / "report.csv").string() << '\n';
}

void cmd_saliency(const fs::path& manifest, const fs::path& emb_file, const fs::path& checkpoint,
                  const fs::path& out_dir, const std::string& variant_name_str, int count,
                  double train_fraction, const LayoutFlags& layout_flags, std::uint64_t seed) {
  const auto variant = cham::parse_variant(variant_name_str);
  auto inputs = load_split_inputs(manifest, emb_file, train_fraction, seed);
  const auto params = cham::load_checkpoint(checkpoint);
  const auto ctx = make_context(inputs.table, layout_flags, params.arch.input_h);
  const auto band = ctx.text_band(variant);

  fs::create_directories(out_dir);
  std::ofstream stats(out_dir / "band_stats.csv");
  stats << "sample_id,band_share_with_text,band_share_without_text\n";

  const int n = std::min<int>(count, static_cast<int>(inputs.test_set.records.size()));
  char buf[128];
  for (int i = 0; i < n; ++i) {
    const auto& record = inputs.test_set.records[i];
    const auto with_text = cham::compose_sample(record, ctx, variant, true, true);
    const auto without_text = cham::compose_sample(record, ctx, variant, true, false);

    const auto map_with = cham::saliency_map(params, with_text.canvases.back(), record.label);
    const auto map_without =
        cham::saliency_map(params, without_text.canvases.front(), record.label);

    cham::write_png(grayscale_canvas(map_with, params.arch.input_h, params.arch.input_w),
                    out_dir / ("sal_" + record.id + "_with.png"));
    cham::write_png(grayscale_canvas(map_without, params.arch.input_h, params.arch.input_w),
                    out_dir / ("sal_" + record.id + "_without.png"));
    cham::write_png(with_text.canvases.back(), out_dir / ("input_" + record.id + "_with.png"));
    cham::write_png(without_text.canvases.front(),
                    out_dir / ("input_" + record.id + "_without.png"));

    std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f\n", record.id.c_str(),
                  cham::mass_share(map_with, params.arch.input_w, band),
                  cham::mass_share(map_without, params.arch.input_w, band));
    stats << buf;
  }

  json config{{"command", "saliency"},
              {"manifest", manifest.string()},
              {"emb", emb_file.string()},
              {"checkpoint", checkpoint.string()},
              {"out", out_dir.string()},
              {"variant", variant_name_str},
              {"count", count},
              {"train_fraction", train_fraction},
              {"seed", seed},
              {"layout", layout_flags.echo()}};
  write_config_echo(out_dir / "config.json", config);
  std::cout << "wrote saliency maps for " << n << " samples to " << out_dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"text-as-pixels multimodal classification toolkit"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Materialize a synthetic multimodal dataset");
  fs::path synth_out;
  cham::SyntheticSpec synth_spec;
  std::uint64_t synth_seed = 1;
  int synth_size = 64;
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--classes", synth_spec.num_classes)->check(CLI::Range(2, 1000));
  synth->add_option("--per-class", synth_spec.samples_per_class)->check(CLI::PositiveNumber);
  synth->add_option("--size", synth_size, "Square image size")->check(CLI::PositiveNumber);
  synth->add_option("--keywords-per-class", synth_spec.keywords_per_class)
      ->check(CLI::PositiveNumber);
  synth->add_option("--words-per-sample", synth_spec.words_per_sample)->check(CLI::PositiveNumber);
  synth->add_option("--filler-vocab", synth_spec.filler_vocab_size)->check(CLI::PositiveNumber);
  synth->add_option("--noise-std", synth_spec.image_noise_std)->check(CLI::NonNegativeNumber);
  synth->add_option("--keyword-prob", synth_spec.text_keyword_prob)
      ->check(CLI::Range(1e-9, 1.0));
  synth->add_option("--seed", synth_seed);
  synth->callback([&] {
    synth_spec.image_h = synth_size;
    synth_spec.image_w = synth_size;
    cmd_synth(synth_out, synth_spec, synth_seed);
  });

  // embed
  auto* embed = app.add_subcommand("embed", "Train word embeddings from manifest texts");
  fs::path embed_manifest, embed_out;
  cham::SkipGramConfig embed_cfg;
  std::uint64_t embed_seed = 1;
  embed->add_option("--manifest", embed_manifest)->required()->check(CLI::ExistingFile);
  embed->add_option("--out", embed_out, "Embedding file to write")->required();
  embed->add_option("--dim", embed_cfg.dim)->check(CLI::PositiveNumber);
  embed->add_option("--window", embed_cfg.window)->check(CLI::PositiveNumber);
  embed->add_option("--negatives", embed_cfg.negatives)->check(CLI::PositiveNumber);
  embed->add_option("--epochs", embed_cfg.epochs)->check(CLI::PositiveNumber);
  embed->add_option("--lr", embed_cfg.learning_rate)->check(CLI::PositiveNumber);
  embed->add_option("--min-count", embed_cfg.min_count)->check(CLI::PositiveNumber);
  embed->add_option("--seed", embed_seed);
  embed->callback([&] { cmd_embed(embed_manifest, embed_out, embed_cfg, embed_seed); });

  // encode
  auto* encode = app.add_subcommand("encode", "Encode a text string as a PNG");
  std::string encode_text_arg;
  fs::path encode_emb, encode_out;
  LayoutFlags encode_layout;
  encode->add_option("--text", encode_text_arg)->required();
  encode->add_option("--emb", encode_emb)->required()->check(CLI::ExistingFile);
  encode->add_option("--out", encode_out, "PNG to write")->required();
  encode_layout.attach(encode);
  encode->callback([&] { cmd_encode(encode_text_arg, encode_emb, encode_out, encode_layout); });

  // compose
  auto* compose = app.add_subcommand("compose", "Write image|text|fused debug sheets");
  fs::path compose_manifest, compose_emb, compose_out;
  int compose_count = 8, compose_input = 64;
  LayoutFlags compose_layout;
  compose->add_option("--manifest", compose_manifest)->required()->check(CLI::ExistingFile);
  compose->add_option("--emb", compose_emb)->required()->check(CLI::ExistingFile);
  compose->add_option("--out", compose_out)->required();
  compose->add_option("--count", compose_count)->check(CLI::PositiveNumber);
  compose->add_option("--input-size", compose_input)->check(CLI::PositiveNumber);
  compose_layout.attach(compose);
  compose->callback([&] {
    cmd_compose(compose_manifest, compose_emb, compose_out, compose_count, compose_input,
                compose_layout);
  });

  // train
  auto* train = app.add_subcommand("train", "Train a classifier on composed samples");
  fs::path train_manifest, train_emb, train_out;
  std::string train_variant = "joint";
  TrainFlags train_flags;
  ArchFlags train_arch;
  LayoutFlags train_layout;
  int train_image_pct = 100, train_text_pct = 100;
  std::uint64_t train_seed = 1;
  train->add_option("--manifest", train_manifest)->required()->check(CLI::ExistingFile);
  train->add_option("--emb", train_emb)->required()->check(CLI::ExistingFile);
  train->add_option("--out", train_out)->required();
  train->add_option("--variant", train_variant, "joint or fused");
  train->add_option("--train-image-pct", train_image_pct)->check(CLI::Range(0, 100));
  train->add_option("--train-text-pct", train_text_pct)->check(CLI::Range(0, 100));
  train->add_option("--seed", train_seed);
  train_flags.attach(train);
  train_arch.attach(train);
  train_layout.attach(train);
  train->callback([&] {
    cmd_train(train_manifest, train_emb, train_out, train_variant, train_flags, train_arch,
              train_layout, train_image_pct, train_text_pct, train_seed);
  });

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint under an availability cell");
  fs::path eval_manifest, eval_emb, eval_ckpt, eval_out;
  std::string eval_variant = "joint";
  std::vector<std::string> eval_metrics{"accuracy"};
  double eval_fraction = 0.75;
  LayoutFlags eval_layout;
  int eval_image_pct = 100, eval_text_pct = 100;
  std::uint64_t eval_seed = 1;
  eval->add_option("--manifest", eval_manifest)->required()->check(CLI::ExistingFile);
  eval->add_option("--emb", eval_emb)->required()->check(CLI::ExistingFile);
  eval->add_option("--checkpoint", eval_ckpt)->required()->check(CLI::ExistingFile);
  eval->add_option("--out", eval_out)->required();
  eval->add_option("--variant", eval_variant);
  eval->add_option("--metrics", eval_metrics, "accuracy, auroc, f1_macro")->delimiter(',');
  eval->add_option("--train-fraction", eval_fraction)->check(CLI::Range(1e-6, 1.0 - 1e-6));
  eval->add_option("--test-image-pct", eval_image_pct)->check(CLI::Range(0, 100));
  eval->add_option("--test-text-pct", eval_text_pct)->check(CLI::Range(0, 100));
  eval->add_option("--seed", eval_seed);
  eval_layout.attach(eval);
  eval->callback([&] {
    cmd_eval(eval_manifest, eval_emb, eval_ckpt, eval_out, eval_variant, eval_metrics,
             eval_fraction, eval_layout, eval_image_pct, eval_text_pct, eval_seed);
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Train/evaluate over an availability grid");
  fs::path sweep_manifest, sweep_emb, sweep_out;
  std::string sweep_variant = "joint";
  std::vector<std::string> sweep_train_cells{"100:100"};
  std::vector<std::string> sweep_test_cells{"100:100", "100:90", "100:70",
                                            "100:50",  "100:30", "100:10"};
  std::vector<std::uint64_t> sweep_seeds{1, 2, 3};
  std::vector<std::string> sweep_metrics{"accuracy"};
  TrainFlags sweep_flags;
  ArchFlags sweep_arch;
  LayoutFlags sweep_layout;
  std::uint64_t sweep_seed = 1;
  sweep->add_option("--manifest", sweep_manifest)->required()->check(CLI::ExistingFile);
  sweep->add_option("--emb", sweep_emb)->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out)->required();
  sweep->add_option("--variant", sweep_variant);
  sweep->add_option("--train-cells", sweep_train_cells, "IMG:TXT cells")->delimiter(',');
  sweep->add_option("--test-cells", sweep_test_cells, "IMG:TXT cells")->delimiter(',');
  sweep->add_option("--seeds", sweep_seeds)->delimiter(',');
  sweep->add_option("--metrics", sweep_metrics)->delimiter(',');
  sweep->add_option("--seed", sweep_seed, "Split/master seed");
  sweep_flags.attach(sweep);
  sweep_arch.attach(sweep);
  sweep_layout.attach(sweep);
  sweep->callback([&] {
    cmd_sweep(sweep_manifest, sweep_emb, sweep_out, sweep_variant, sweep_train_cells,
              sweep_test_cells, sweep_seeds, sweep_metrics, sweep_flags, sweep_arch, sweep_layout,
              sweep_seed);
  });

  // saliency
  auto* saliency = app.add_subcommand("saliency", "Input-gradient saliency maps and band stats");
  fs::path sal_manifest, sal_emb, sal_ckpt, sal_out;
  std::string sal_variant = "fused";
  int sal_count = 8;
  double sal_fraction = 0.75;
  LayoutFlags sal_layout;
  std::uint64_t sal_seed = 1;
  saliency->add_option("--manifest", sal_manifest)->required()->check(CLI::ExistingFile);
  saliency->add_option("--emb", sal_emb)->required()->check(CLI::ExistingFile);
  saliency->add_option("--checkpoint", sal_ckpt)->required()->check(CLI::ExistingFile);
  saliency->add_option("--out", sal_out)->required();
  saliency->add_option("--variant", sal_variant);
  saliency->add_option("--count", sal_count)->check(CLI::PositiveNumber);
  saliency->add_option("--train-fraction", sal_fraction)->check(CLI::Range(1e-6, 1.0 - 1e-6));
  saliency->add_option("--seed", sal_seed);
  sal_layout.attach(saliency);
  saliency->callback([&] {
    cmd_saliency(sal_manifest, sal_emb, sal_ckpt, sal_out, sal_variant, sal_count, sal_fraction,
                 sal_layout, sal_seed);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean; bad usage exits 2
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
