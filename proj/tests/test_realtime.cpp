#include <cmath>

#include "doctest.h"
#include "scissor/error.hpp"
#include "scissor/realtime.hpp"

using namespace scissor;

namespace {

RealTimeConfig base_config(RealTimeMode mode, double budget_s) {
  RealTimeConfig cfg;
  cfg.mode = mode;
  cfg.budget_s = budget_s;
  cfg.generator = default_generator_config();
  cfg.driver = default_driver(1.5);
  return cfg;
}

}  // namespace

TEST_CASE("baseline spends nothing on prediction or retraining") {
  const RealTimeRun run = run_realtime(base_config(RealTimeMode::Baseline, 2000.0), {}, 1);
  CHECK(run.ledger.prediction_s == 0.0);
  CHECK(run.ledger.retraining_s == 0.0);
  CHECK(run.counts.predicted == 0);
  CHECK(run.counts.rejected == 0);
  CHECK(run.counts.tp + run.counts.tn + run.counts.fp + run.counts.fn == 0);
  CHECK(run.counts.generated == run.counts.executed_safe + run.counts.executed_unsafe);
  CHECK(run.counts.generated > 10);
}

TEST_CASE("ledger stays within budget and its parts sum to the clock") {
  for (auto mode : {RealTimeMode::Baseline, RealTimeMode::Adaptive}) {
    const RealTimeRun run = run_realtime(base_config(mode, 3000.0), {}, 3);
    const double total = run.ledger.total_s();
    CHECK(total <= run.budget_s);
    const double parts = run.ledger.generation_s + run.ledger.prediction_s +
                         run.ledger.execution_safe_s + run.ledger.execution_unsafe_s +
                         run.ledger.retraining_s;
    CHECK(parts == doctest::Approx(total).epsilon(1e-9));
    // Budget is actually used, not cut short.
    CHECK(total > 0.8 * run.budget_s);
  }
}

TEST_CASE("adaptive bootstrap executes its first tests unconditionally") {
  RealTimeConfig cfg = base_config(RealTimeMode::Adaptive, 4000.0);
  cfg.bootstrap_size = 60;
  const RealTimeRun run = run_realtime(cfg, {}, 5);
  REQUIRE(run.counts.generated > 60);
  // The first 60 generated tests were all executed: rejections can only
  // start after the bootstrap, so executed >= 60 and the first prediction
  // happened on test 61 or later.
  CHECK(run.counts.executed_safe + run.counts.executed_unsafe >= 60);
  CHECK(run.counts.predicted == run.counts.generated - 60);
  CHECK(run.counts.predicted == run.counts.tp + run.counts.tn + run.counts.fp +
                                    run.counts.fn);
  CHECK(run.retrain_events > 0);
  CHECK(run.ledger.retraining_s > 0.0);
}

TEST_CASE("adaptive rejects some predicted-safe tests after the bootstrap") {
  RealTimeConfig cfg = base_config(RealTimeMode::Adaptive, 6000.0);
  const RealTimeRun run = run_realtime(cfg, {}, 7);
  CHECK(run.counts.rejected > 0);
  CHECK(run.post_mortem.size() == run.counts.rejected);
  // Post-mortem truths complete the confusion bookkeeping: every predicted
  // test's truth is known, so TP+FN equals the unsafe among predicted.
  std::size_t unsafe_rejected = 0;
  for (const auto& pm : run.post_mortem) {
    CHECK(pm.predicted == Label::Safe);
    unsafe_rejected += pm.truth == Label::Unsafe;
  }
  CHECK(run.counts.fn == unsafe_rejected);
  CHECK(run.counts.tp + run.counts.fn >= unsafe_rejected);
}

TEST_CASE("oracle pretrained beats baseline on unsafe executions") {
  const SelectorFn oracle = [](const LabeledTest& lt) {
    return Prediction{lt.label, lt.label == Label::Unsafe ? 1.0 : 0.0};
  };
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RealTimeRun base =
        run_realtime(base_config(RealTimeMode::Baseline, 2500.0), {}, seed);
    const RealTimeRun pre =
        run_realtime(base_config(RealTimeMode::PreTrained, 2500.0), oracle, seed);
    CHECK(pre.counts.executed_unsafe > base.counts.executed_unsafe);
    // The oracle never wastes execution time on safe tests.
    CHECK(pre.counts.executed_safe == 0);
    CHECK(pre.ledger.execution_safe_s == 0.0);
  }
}

TEST_CASE("runs are pure functions of config and seed") {
  const RealTimeConfig cfg = base_config(RealTimeMode::Adaptive, 2000.0);
  const RealTimeRun a = run_realtime(cfg, {}, 11);
  const RealTimeRun b = run_realtime(cfg, {}, 11);
  CHECK(a.counts.generated == b.counts.generated);
  CHECK(a.counts.executed_unsafe == b.counts.executed_unsafe);
  CHECK(a.counts.rejected == b.counts.rejected);
  CHECK(a.ledger.total_s() == b.ledger.total_s());

  const RealTimeRun c = run_realtime(cfg, {}, 12);
  const bool identical = a.counts.generated == c.counts.generated &&
                         a.ledger.total_s() == c.ledger.total_s();
  CHECK_FALSE(identical);
}

TEST_CASE("pretrained mode requires a selector and a positive budget") {
  CHECK_THROWS_AS(run_realtime(base_config(RealTimeMode::PreTrained, 100.0), {}, 1),
                  DomainError);
  CHECK_THROWS_AS(run_realtime(base_config(RealTimeMode::Baseline, 0.0), {}, 1),
                  DomainError);
}
