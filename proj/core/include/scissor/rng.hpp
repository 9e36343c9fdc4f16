#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace scissor {

// SplitMix64 finalizer; used to derive independent sub-stream seeds.
std::uint64_t mix64(std::uint64_t x);

// Combine a seed with a stream tag (counter, segment index, ...).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

// FNV-1a, for keying streams by string ids.
std::uint64_t hash_str(std::string_view s);

// Deterministic RNG wrapper. std::mt19937_64 is fully specified by the
// standard, and all value mappings below are hand-rolled, so sequences are
// identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Unbiased via rejection.
  std::uint64_t below(std::uint64_t n);

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Index into a discrete distribution given cumulative weights summing to ~1.
  std::size_t pick(const std::vector<double>& cumulative);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace scissor
