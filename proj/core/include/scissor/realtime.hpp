#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scissor/classifier.hpp"
#include "scissor/generator.hpp"
#include "scissor/selection.hpp"
#include "scissor/simulator.hpp"

namespace scissor {

enum class RealTimeMode { Baseline, PreTrained, Adaptive };

const char* to_string(RealTimeMode mode);
RealTimeMode realtime_mode_from(const std::string& name);

// Simulated-clock cost model so a multi-hour budget replays in milliseconds.
struct RealTimeCosts {
  double generation_s = 0.5;    // per generated test
  double prediction_s = 0.01;   // per model query
  double retrain_coef = 0.2;    // seconds per sqrt(training rows)
};

struct RealTimeLedger {
  double generation_s = 0.0;
  double prediction_s = 0.0;
  double execution_safe_s = 0.0;
  double execution_unsafe_s = 0.0;
  double retraining_s = 0.0;

  double total_s() const {
    return generation_s + prediction_s + execution_safe_s + execution_unsafe_s +
           retraining_s;
  }
};

struct RealTimeCounts {
  std::size_t generated = 0;
  std::size_t predicted = 0;
  std::size_t executed_safe = 0;
  std::size_t executed_unsafe = 0;
  std::size_t rejected = 0;
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
};

// Rejected tests are executed post-mortem, off the clock, so the prediction
// quality over the whole generated stream is measurable.
struct PostMortemRecord {
  std::string test_id;
  Label predicted = Label::Safe;
  Label truth = Label::Safe;
};

struct RealTimeRun {
  RealTimeMode mode = RealTimeMode::Baseline;
  double budget_s = 0.0;
  RealTimeLedger ledger;
  RealTimeCounts counts;
  std::vector<PostMortemRecord> post_mortem;
  std::size_t retrain_events = 0;
};

struct RealTimeConfig {
  RealTimeMode mode = RealTimeMode::Baseline;
  double budget_s = 21600.0;  // six hours
  GeneratorConfig generator;
  DriverConfig driver;
  ClassifierKind model_kind = ClassifierKind::Logistic;
  Hyperparams hyper;
  RealTimeCosts costs;
  // Adaptive: tests executed unconditionally before the first model exists.
  std::size_t bootstrap_size = 60;
};

// Generation -> (prediction) -> execute-or-reject loop on a simulated clock.
// An iteration is committed only when all of its costs fit in the remaining
// budget, so the ledger never exceeds budget_s. Adaptive mode retrains after
// every executed test once the bootstrap phase has produced both classes.
// PreTrained mode requires a selector; Baseline ignores it and executes
// everything. Pure function of (config, selector, seed).
RealTimeRun run_realtime(const RealTimeConfig& config, const SelectorFn& pretrained,
                         std::uint64_t seed);

}  // namespace scissor
