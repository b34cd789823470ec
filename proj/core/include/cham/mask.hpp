#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cham {

// Availability percentages for one experiment cell. Protocols degrade one
// modality at a time, so within each split at least one side stays at 100.
struct AvailabilitySpec {
  int train_image_pct = 100;
  int train_text_pct = 100;
  int test_image_pct = 100;
  int test_text_pct = 100;
  std::uint64_t seed = 1;

  void validate() const;
};

struct MaskEntry {
  std::string sample_id;
  bool image_present = true;
  bool text_present = true;
};

// Deterministic sample-level availability assignment for one split. Loaded
// plans carry pct = -1 (the file records only the per-sample flags).
struct MaskPlan {
  std::vector<MaskEntry> entries;
  int image_pct = 100;
  int text_pct = 100;
  std::uint64_t seed = 0;
};

// Exactly floor(pct/100 * n) samples keep a degraded modality. The keep-set
// comes from ranking one seeded shuffle and thresholding, so keep-sets are
// nested across pct levels for a fixed seed.
MaskPlan make_plan(const std::vector<std::string>& sample_ids, int image_pct, int text_pct,
                   std::uint64_t seed);

// Line-oriented audit format: `<sample_id> <image:0|1> <text:0|1>`.
void save_plan(const MaskPlan& plan, const std::filesystem::path& path);
MaskPlan load_plan(const std::filesystem::path& path);

}  // namespace cham
