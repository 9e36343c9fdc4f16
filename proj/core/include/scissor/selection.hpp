#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scissor/classifier.hpp"
#include "scissor/features.hpp"
#include "scissor/pool.hpp"

namespace scissor {

enum class Strategy { Baseline, MLSelector };

const char* to_string(Strategy s);

// A selector sees the test geometry and answers with a prediction; it must
// not look at the hidden label. The oracle selector (tests and upper-bound
// studies) is the one exception.
using SelectorFn = std::function<Prediction(const LabeledTest&)>;

// Wraps a trained model: extracts full-road features and predicts.
SelectorFn classifier_selector(const Classifier& model, const ExtractOptions& opt = {});

// Perfect predictions; upper bound for selector studies.
SelectorFn oracle_selector();

struct StepLog {
  std::string test_id;
  bool predicted = false;
  Label predicted_label = Label::Safe;
  bool executed = false;
  Label revealed_label = Label::Safe;  // truth; post-mortem for skipped draws
  double wall_cost_s = 0.0;            // charged only when executed
};

// One FIX or REACH run. Confusion counts cover every prediction made,
// whether the test was then executed or skipped.
struct SelectionRun {
  Strategy strategy = Strategy::Baseline;
  std::size_t target = 0;  // suite size S (FIX) or unsafe goal N (REACH)
  bool pool_exhausted = false;
  std::vector<StepLog> steps;

  std::size_t drawn = 0;
  std::size_t executed = 0;
  std::size_t skipped = 0;
  std::size_t executed_unsafe = 0;
  std::size_t executed_safe = 0;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double time_safe_s = 0.0;
  double time_unsafe_s = 0.0;

  // Unsafe share of the executed suite (FIX effectiveness measure).
  double suite_unsafe_ratio() const {
    return executed == 0 ? 0.0
                         : static_cast<double>(executed_unsafe) /
                               static_cast<double>(executed);
  }
  double total_time_s() const { return time_safe_s + time_unsafe_s; }
};

// Fixed-size suite selection: draws tests at random (without replacement);
// the ML strategy executes only predicted-unsafe draws. Ends when the suite
// holds `suite_size` executed tests, or with pool_exhausted set.
SelectionRun run_fix(const TestPool& pool, Strategy strategy, const SelectorFn& selector,
                     std::size_t suite_size, std::uint64_t seed);

// Unsafe-goal selection: stops once `n_unsafe` executed tests revealed
// Unsafe, or with pool_exhausted set. The ML strategy executes only
// predicted-unsafe draws.
SelectionRun run_reach(const TestPool& pool, Strategy strategy, const SelectorFn& selector,
                       std::size_t n_unsafe, std::uint64_t seed);

// Aggregates over repeated runs with per-repetition seeds derived from the
// master seed.
struct RepetitionSummary {
  std::vector<SelectionRun> runs;
  double mean_suite_unsafe_ratio = 0.0;
  double std_suite_unsafe_ratio = 0.0;
  double mean_drawn = 0.0;
  double std_drawn = 0.0;
  double mean_executed = 0.0;
  double std_executed = 0.0;
  double mean_time_safe_s = 0.0;
  double mean_time_unsafe_s = 0.0;
  std::size_t cum_tp = 0, cum_fp = 0, cum_tn = 0, cum_fn = 0;
};

RepetitionSummary run_fix_repetitions(const TestPool& pool, Strategy strategy,
                                      const SelectorFn& selector, std::size_t suite_size,
                                      std::uint64_t master_seed, std::size_t reps);
RepetitionSummary run_reach_repetitions(const TestPool& pool, Strategy strategy,
                                        const SelectorFn& selector, std::size_t n_unsafe,
                                        std::uint64_t master_seed, std::size_t reps);

}  // namespace scissor
