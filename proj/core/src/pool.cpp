#include "scissor/pool.hpp"

#include <cmath>

#include "scissor/error.hpp"
#include "scissor/rng.hpp"

namespace scissor {

TestPool build_pool(const std::vector<LabeledTest>& labeled, PoolComposition comp,
                    std::uint64_t seed) {
  if (comp.safe_fraction < 0.0 || comp.unsafe_fraction < 0.0 ||
      std::abs(comp.safe_fraction + comp.unsafe_fraction - 1.0) > 1e-9) {
    throw DomainError("pool composition fractions must be non-negative and sum to 1");
  }

  std::vector<std::size_t> safe_idx, unsafe_idx;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    (labeled[i].label == Label::Safe ? safe_idx : unsafe_idx).push_back(i);
  }
  const std::size_t avail_safe = safe_idx.size();
  const std::size_t avail_unsafe = unsafe_idx.size();

  // Largest total T whose per-class counts fit the availability and sit
  // within one row of T * fraction.
  std::size_t n_safe = 0, n_unsafe = 0;
  bool found = false;
  for (std::size_t t = avail_safe + avail_unsafe; t >= 1 && !found; --t) {
    const double target_safe = comp.safe_fraction * static_cast<double>(t);
    auto ns = static_cast<long long>(std::llround(target_safe));
    const long long lo = std::max<long long>(0, static_cast<long long>(t) -
                                                    static_cast<long long>(avail_unsafe));
    const long long hi =
        std::min<long long>(static_cast<long long>(avail_safe), static_cast<long long>(t));
    if (lo > hi) continue;
    ns = std::max(lo, std::min(hi, ns));
    const auto nu = static_cast<long long>(t) - ns;
    const bool represented = (comp.safe_fraction == 0.0 || ns >= 1) &&
                             (comp.unsafe_fraction == 0.0 || nu >= 1);
    if (represented && std::abs(static_cast<double>(ns) - target_safe) <= 1.0 &&
        std::abs(static_cast<double>(nu) -
                 comp.unsafe_fraction * static_cast<double>(t)) <= 1.0) {
      n_safe = static_cast<std::size_t>(ns);
      n_unsafe = static_cast<std::size_t>(nu);
      found = true;
    }
  }
  if (!found) {
    throw InsufficientClass("available class counts cannot realize the pool composition");
  }

  Rng rng(derive_seed(seed, 0xb001));
  rng.shuffle(safe_idx);
  rng.shuffle(unsafe_idx);

  TestPool pool;
  pool.requested = comp;
  pool.n_safe = n_safe;
  pool.n_unsafe = n_unsafe;
  pool.entries.reserve(n_safe + n_unsafe);
  for (std::size_t i = 0; i < n_safe; ++i) pool.entries.push_back(labeled[safe_idx[i]]);
  for (std::size_t i = 0; i < n_unsafe; ++i) pool.entries.push_back(labeled[unsafe_idx[i]]);
  rng.shuffle(pool.entries);
  return pool;
}

}  // namespace scissor
