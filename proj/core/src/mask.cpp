#include "cham/mask.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cham/rng.hpp"

namespace cham {

namespace {

void check_split(int image_pct, int text_pct, const char* what) {
  if (image_pct < 0 || image_pct > 100 || text_pct < 0 || text_pct > 100)
    throw std::invalid_argument(std::string(what) + ": percentages must lie in [0,100]");
  if (image_pct != 100 && text_pct != 100)
    throw std::invalid_argument(std::string(what) + ": at least one modality must stay at 100%");
}

}  // namespace

void AvailabilitySpec::validate() const {
  check_split(train_image_pct, train_text_pct, "AvailabilitySpec(train)");
  check_split(test_image_pct, test_text_pct, "AvailabilitySpec(test)");
}

MaskPlan make_plan(const std::vector<std::string>& sample_ids, int image_pct, int text_pct,
                   std::uint64_t seed) {
  check_split(image_pct, text_pct, "make_plan");
  const auto n = sample_ids.size();
  if (n == 0) throw std::invalid_argument("make_plan: no sample ids");

  // Rank positions via one shuffle; keeping the first floor(pct*n/100) ranks
  // makes keep-sets nested across pct levels.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[order[k]] = k;

  const std::size_t keep_image = n * static_cast<std::size_t>(image_pct) / 100;
  const std::size_t keep_text = n * static_cast<std::size_t>(text_pct) / 100;

  MaskPlan plan;
  plan.image_pct = image_pct;
  plan.text_pct = text_pct;
  plan.seed = seed;
  plan.entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    plan.entries.push_back({sample_ids[i], rank[i] < keep_image, rank[i] < keep_text});
  return plan;
}

void save_plan(const MaskPlan& plan, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_plan: cannot open " + path.string());
  for (const auto& e : plan.entries)
    out << e.sample_id << ' ' << (e.image_present ? 1 : 0) << ' ' << (e.text_present ? 1 : 0) << '\n';
  if (!out) throw std::runtime_error("save_plan: write failed for " + path.string());
}

MaskPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_plan: cannot open " + path.string());

  MaskPlan plan;
  plan.image_pct = -1;
  plan.text_pct = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    MaskEntry entry;
    int image = -1, text = -1;
    row >> entry.sample_id >> image >> text;
    if (!row || (image != 0 && image != 1) || (text != 0 && text != 1))
      throw std::runtime_error("load_plan: malformed line " + std::to_string(line_no) + " in " +
                               path.string());
    if (image == 0 && text == 0)
      throw std::runtime_error("load_plan: sample " + entry.sample_id + " has no modality");
    entry.image_present = image == 1;
    entry.text_present = text == 1;
    plan.entries.push_back(std::move(entry));
  }
  if (plan.entries.empty()) throw std::runtime_error("load_plan: empty plan " + path.string());
  return plan;
}

}  // namespace cham
