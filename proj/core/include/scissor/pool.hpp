#pragma once

#include <cstdint>
#include <vector>

#include "scissor/road.hpp"

namespace scissor {

// Requested class mix, written (safe_fraction/unsafe_fraction).
struct PoolComposition {
  double safe_fraction = 0.5;
  double unsafe_fraction = 0.5;
};

// A fixed-composition set of labeled tests. Selectors treat labels as hidden
// until a test is executed.
struct TestPool {
  std::vector<LabeledTest> entries;
  PoolComposition requested;
  std::size_t n_safe = 0;
  std::size_t n_unsafe = 0;

  std::size_t size() const { return entries.size(); }
};

// Seeded sample without replacement matching the requested mix. The pool is
// as large as the available class counts allow while keeping each realized
// class count within one row of the requested share.
// Throws InsufficientClass when no such pool exists.
TestPool build_pool(const std::vector<LabeledTest>& labeled, PoolComposition composition,
                    std::uint64_t seed);

}  // namespace scissor
