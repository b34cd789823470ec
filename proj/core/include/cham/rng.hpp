#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace cham {

// One splitmix64 step; advances `state` and returns the next value.
std::uint64_t splitmix64(std::uint64_t& state);

// Maps (seed, label) to an independent stream seed so a single user-facing
// seed can fan out to every module without correlated streams.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

// xoshiro256** with explicitly coded distributions. std:: engines are
// portable, but std:: distributions are implementation-defined, and results
// here must be reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53 random mantissa bits.
  double uniform();
  double uniform(double lo, double hi);

  // Uniform integer on [0,n); n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Standard normal via Box-Muller.
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(below(i + 1));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cham
