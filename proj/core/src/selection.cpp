#include "scissor/selection.hpp"

#include <cmath>
#include <numeric>

#include "scissor/error.hpp"
#include "scissor/rng.hpp"

namespace scissor {

namespace {

std::vector<std::size_t> draw_order(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, 0xd2a3));
  rng.shuffle(order);
  return order;
}

void record_confusion(SelectionRun& run, Label predicted, Label truth) {
  if (truth == Label::Unsafe) {
    (predicted == Label::Unsafe ? run.tp : run.fn) += 1;
  } else {
    (predicted == Label::Unsafe ? run.fp : run.tn) += 1;
  }
}

void execute(SelectionRun& run, StepLog& step, const LabeledTest& test) {
  step.executed = true;
  step.revealed_label = test.label;
  step.wall_cost_s = test.wall_cost_s;
  run.executed += 1;
  if (test.label == Label::Unsafe) {
    run.executed_unsafe += 1;
    run.time_unsafe_s += test.wall_cost_s;
  } else {
    run.executed_safe += 1;
    run.time_safe_s += test.wall_cost_s;
  }
}

enum class Goal { SuiteSize, UnsafeCount };

SelectionRun run_selection(const TestPool& pool, Strategy strategy,
                           const SelectorFn& selector, Goal goal, std::size_t target,
                           std::uint64_t seed) {
  if (target < 1) throw DomainError("selection target must be at least 1");
  if (strategy == Strategy::MLSelector && !selector) {
    throw DomainError("ML strategy needs a selector");
  }

  SelectionRun run;
  run.strategy = strategy;
  run.target = target;

  const auto order = draw_order(pool.size(), seed);
  for (const std::size_t idx : order) {
    const bool done = goal == Goal::SuiteSize ? run.executed >= target
                                              : run.executed_unsafe >= target;
    if (done) break;

    const LabeledTest& test = pool.entries[idx];
    StepLog step;
    step.test_id = test.test.id;
    run.drawn += 1;

    if (strategy == Strategy::Baseline) {
      execute(run, step, test);
    } else {
      const Prediction pred = selector(test);
      step.predicted = true;
      step.predicted_label = pred.label;
      record_confusion(run, pred.label, test.label);
      if (pred.label == Label::Unsafe) {
        execute(run, step, test);
      } else {
        step.revealed_label = test.label;  // post-mortem truth
        run.skipped += 1;
      }
    }
    run.steps.push_back(std::move(step));
  }

  const bool reached = goal == Goal::SuiteSize ? run.executed >= target
                                               : run.executed_unsafe >= target;
  run.pool_exhausted = !reached;
  return run;
}

RepetitionSummary summarize(std::vector<SelectionRun> runs) {
  RepetitionSummary s;
  const auto n = static_cast<double>(runs.size());
  double sum_ratio = 0.0, sum_ratio_sq = 0.0;
  double sum_drawn = 0.0, sum_drawn_sq = 0.0;
  double sum_exec = 0.0, sum_exec_sq = 0.0;
  for (const auto& r : runs) {
    sum_ratio += r.suite_unsafe_ratio();
    sum_ratio_sq += r.suite_unsafe_ratio() * r.suite_unsafe_ratio();
    sum_drawn += static_cast<double>(r.drawn);
    sum_drawn_sq += static_cast<double>(r.drawn) * static_cast<double>(r.drawn);
    sum_exec += static_cast<double>(r.executed);
    sum_exec_sq += static_cast<double>(r.executed) * static_cast<double>(r.executed);
    s.mean_time_safe_s += r.time_safe_s / n;
    s.mean_time_unsafe_s += r.time_unsafe_s / n;
    s.cum_tp += r.tp;
    s.cum_fp += r.fp;
    s.cum_tn += r.tn;
    s.cum_fn += r.fn;
  }
  auto finish = [n](double sum, double sum_sq, double& mean, double& stdev) {
    mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    stdev = std::sqrt(var);
  };
  finish(sum_ratio, sum_ratio_sq, s.mean_suite_unsafe_ratio, s.std_suite_unsafe_ratio);
  finish(sum_drawn, sum_drawn_sq, s.mean_drawn, s.std_drawn);
  finish(sum_exec, sum_exec_sq, s.mean_executed, s.std_executed);
  s.runs = std::move(runs);
  return s;
}

}  // namespace

const char* to_string(Strategy s) {
  return s == Strategy::Baseline ? "baseline" : "ml_selector";
}

SelectorFn classifier_selector(const Classifier& model, const ExtractOptions& opt) {
  return [model, opt](const LabeledTest& lt) {
    const auto row = vectorize(extract_full_road(lt.test, opt), Label::Safe, lt.test.id);
    return model.predict_row(row.values);
  };
}

SelectorFn oracle_selector() {
  return [](const LabeledTest& lt) {
    return Prediction{lt.label, lt.label == Label::Unsafe ? 1.0 : 0.0};
  };
}

SelectionRun run_fix(const TestPool& pool, Strategy strategy, const SelectorFn& selector,
                     std::size_t suite_size, std::uint64_t seed) {
  return run_selection(pool, strategy, selector, Goal::SuiteSize, suite_size, seed);
}

SelectionRun run_reach(const TestPool& pool, Strategy strategy, const SelectorFn& selector,
                       std::size_t n_unsafe, std::uint64_t seed) {
  return run_selection(pool, strategy, selector, Goal::UnsafeCount, n_unsafe, seed);
}

RepetitionSummary run_fix_repetitions(const TestPool& pool, Strategy strategy,
                                      const SelectorFn& selector, std::size_t suite_size,
                                      std::uint64_t master_seed, std::size_t reps) {
  std::vector<SelectionRun> runs;
  runs.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    runs.push_back(run_fix(pool, strategy, selector, suite_size, derive_seed(master_seed, r)));
  }
  return summarize(std::move(runs));
}

RepetitionSummary run_reach_repetitions(const TestPool& pool, Strategy strategy,
                                        const SelectorFn& selector, std::size_t n_unsafe,
                                        std::uint64_t master_seed, std::size_t reps) {
  std::vector<SelectionRun> runs;
  runs.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    runs.push_back(run_reach(pool, strategy, selector, n_unsafe, derive_seed(master_seed, r)));
  }
  return summarize(std::move(runs));
}

}  // namespace scissor
