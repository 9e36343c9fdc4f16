#include <algorithm>
#include <set>

#include "doctest.h"
#include "scissor/error.hpp"
#include "scissor/features.hpp"
#include "scissor/generator.hpp"
#include "scissor/pool.hpp"
#include "scissor/selection.hpp"
#include "scissor/simulator.hpp"

using namespace scissor;

namespace {

// Synthetic labeled tests: REACH/FIX bookkeeping only needs labels and costs.
std::vector<LabeledTest> synthetic_labeled(std::size_t n_safe, std::size_t n_unsafe,
                                           double safe_cost = 24.0,
                                           double unsafe_cost = 38.0) {
  std::vector<LabeledTest> out;
  for (std::size_t i = 0; i < n_safe + n_unsafe; ++i) {
    LabeledTest lt;
    lt.test.id = "p" + std::to_string(i);
    lt.test.segments = {RoadSegment::straight(40.0), RoadSegment::straight(40.0)};
    lt.label = i < n_safe ? Label::Safe : Label::Unsafe;
    if (lt.label == Label::Unsafe) lt.obe_segments = {0};
    lt.sim_duration_s = 10.0;
    lt.wall_cost_s = lt.label == Label::Safe ? safe_cost : unsafe_cost;
    out.push_back(std::move(lt));
  }
  return out;
}

}  // namespace

TEST_CASE("pool construction hits the published compositions") {
  // 1061 safe + 55 unsafe available: everything fits a (0.95/0.05) pool.
  const auto avail = synthetic_labeled(1061, 55);
  const TestPool pool = build_pool(avail, {0.95, 0.05}, 1);
  CHECK(pool.size() == 1116);
  CHECK(pool.n_safe == 1061);
  CHECK(pool.n_unsafe == 55);

  SUBCASE("even split from even availability") {
    const auto ten = synthetic_labeled(10, 10);
    const TestPool p = build_pool(ten, {0.5, 0.5}, 2);
    CHECK(p.n_safe == 10);
    CHECK(p.n_unsafe == 10);
  }

  SUBCASE("offline experiment pools from 1061/509 available") {
    // Each realized count sits within one row of the requested share, which
    // reproduces the published pool sizes up to that one-row slack.
    const auto rest = synthetic_labeled(1061, 509);
    const TestPool p80 = build_pool(rest, {0.80, 0.20}, 3);
    CHECK(p80.n_safe == 1061);
    CHECK(std::abs(static_cast<double>(p80.n_unsafe) - 0.20 * p80.size()) <= 1.0);
    CHECK(std::abs(static_cast<double>(p80.n_unsafe) - 265.0) <= 1.0);
    const TestPool p60 = build_pool(rest, {0.60, 0.40}, 3);
    CHECK(p60.n_unsafe == 509);
    CHECK(std::abs(static_cast<double>(p60.n_safe) - 763.0) <= 3.0);
    const TestPool p30 = build_pool(rest, {0.30, 0.70}, 3);
    CHECK(p30.n_unsafe == 509);
    CHECK(std::abs(static_cast<double>(p30.n_safe) - 218.0) <= 1.0);
  }

  SUBCASE("same seed gives identical membership, new seed differs") {
    const auto pool_a = build_pool(avail, {0.5, 0.5}, 7);
    const auto pool_b = build_pool(avail, {0.5, 0.5}, 7);
    REQUIRE(pool_a.size() == pool_b.size());
    bool same = true;
    for (std::size_t i = 0; i < pool_a.size(); ++i) {
      same = same && pool_a.entries[i].test.id == pool_b.entries[i].test.id;
    }
    CHECK(same);
    const auto pool_c = build_pool(avail, {0.5, 0.5}, 8);
    bool all_equal = pool_a.size() == pool_c.size();
    for (std::size_t i = 0; all_equal && i < pool_a.size(); ++i) {
      all_equal = pool_a.entries[i].test.id == pool_c.entries[i].test.id;
    }
    CHECK_FALSE(all_equal);
  }

  SUBCASE("impossible requests fail loudly") {
    const auto only_safe = synthetic_labeled(50, 0);
    CHECK_THROWS_AS(build_pool(only_safe, {0.5, 0.5}, 1), InsufficientClass);
    CHECK_THROWS_AS(build_pool(avail, {0.7, 0.7}, 1), DomainError);
  }
}

TEST_CASE("fix with an oracle selector fills the suite with unsafe tests") {
  const auto labeled = synthetic_labeled(200, 40);
  const TestPool pool = build_pool(labeled, {0.8, 0.2}, 5);
  const SelectionRun run = run_fix(pool, Strategy::MLSelector, oracle_selector(), 20, 9);
  CHECK_FALSE(run.pool_exhausted);
  CHECK(run.executed == 20);
  CHECK(run.suite_unsafe_ratio() == 1.0);
  CHECK(run.fp == 0);
  CHECK(run.fn == 0);
  CHECK(run.time_safe_s == 0.0);
}

TEST_CASE("baseline fix on an all-safe pool has ratio zero") {
  const auto labeled = synthetic_labeled(100, 1);
  TestPool pool;
  pool.entries.assign(labeled.begin(), labeled.begin() + 100);
  pool.n_safe = 100;
  const SelectionRun run = run_fix(pool, Strategy::Baseline, {}, 30, 2);
  CHECK(run.suite_unsafe_ratio() == 0.0);
  CHECK(run.executed == 30);
  CHECK(run.tp + run.fp + run.tn + run.fn == 0);  // baseline predicts nothing
}

TEST_CASE("baseline fix suites track the pool composition") {
  const auto labeled = synthetic_labeled(700, 300);
  const TestPool pool = build_pool(labeled, {0.7, 0.3}, 11);
  const RepetitionSummary reps =
      run_fix_repetitions(pool, Strategy::Baseline, {}, 100, 77, 30);
  // Hypergeometric mean 0.30; thirty repetitions keep the average within
  // the binomial-oracle band.
  CHECK(reps.mean_suite_unsafe_ratio >= 0.25);
  CHECK(reps.mean_suite_unsafe_ratio <= 0.35);
}

TEST_CASE("fix flags pool exhaustion as a partial result") {
  const auto labeled = synthetic_labeled(30, 5);
  const TestPool pool = build_pool(labeled, {30.0 / 35, 5.0 / 35}, 1);
  const SelectionRun run = run_fix(pool, Strategy::MLSelector, oracle_selector(), 20, 3);
  CHECK(run.pool_exhausted);
  CHECK(run.executed == 5);  // only the unsafe tests pass the filter
  CHECK(run.drawn == 35);
}

TEST_CASE("reach with an oracle stops at exactly N unsafe executions") {
  const auto labeled = synthetic_labeled(500, 50);
  const TestPool pool = build_pool(labeled, {0.9, 0.1}, 21);
  const SelectionRun run = run_reach(pool, Strategy::MLSelector, oracle_selector(), 10, 5);
  CHECK_FALSE(run.pool_exhausted);
  CHECK(run.executed == 10);
  CHECK(run.executed_unsafe == 10);
  CHECK(run.time_safe_s == 0.0);
  CHECK(run.time_unsafe_s == doctest::Approx(10 * 38.0));
}

TEST_CASE("baseline reach draw counts follow the negative-binomial oracle") {
  for (double p : {0.05, 0.3, 0.5, 0.7}) {
    const auto n_unsafe = static_cast<std::size_t>(1000 * p);
    const auto labeled = synthetic_labeled(1000 - n_unsafe, n_unsafe);
    TestPool pool;
    pool.entries = labeled;
    pool.n_safe = 1000 - n_unsafe;
    pool.n_unsafe = n_unsafe;
    const RepetitionSummary reps =
        run_reach_repetitions(pool, Strategy::Baseline, {}, 10, 31337, 30);
    const double expected = 10.0 / p;
    CHECK(reps.mean_drawn > 0.75 * expected);
    CHECK(reps.mean_drawn < 1.25 * expected);
  }
}

TEST_CASE("reach is cheaper on unsafe-rich pools") {
  const auto rich = synthetic_labeled(300, 700);
  const auto poor = synthetic_labeled(950, 50);
  TestPool pool_rich, pool_poor;
  pool_rich.entries = rich;
  pool_poor.entries = poor;
  const auto reps_rich =
      run_reach_repetitions(pool_rich, Strategy::Baseline, {}, 10, 3, 30);
  const auto reps_poor =
      run_reach_repetitions(pool_poor, Strategy::Baseline, {}, 10, 3, 30);
  CHECK(reps_rich.mean_drawn < reps_poor.mean_drawn);
  CHECK(reps_rich.mean_time_safe_s < reps_poor.mean_time_safe_s);
}

TEST_CASE("oracle reach never draws more than baseline on the same sequence") {
  const auto labeled = synthetic_labeled(400, 100);
  const TestPool pool = build_pool(labeled, {0.8, 0.2}, 13);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto oracle = run_reach(pool, Strategy::MLSelector, oracle_selector(), 10, seed);
    const auto base = run_reach(pool, Strategy::Baseline, {}, 10, seed);
    CHECK(oracle.drawn <= base.drawn);
  }
}

TEST_CASE("selection runs conserve draws and reveal truths consistently") {
  const auto labeled = synthetic_labeled(150, 60);
  const TestPool pool = build_pool(labeled, {0.7, 0.3}, 17);
  // A deliberately mediocre selector: unsafe when the id digit sum is even.
  const SelectorFn quirky = [](const LabeledTest& lt) {
    int sum = 0;
    for (char c : lt.test.id) sum += c;
    return Prediction{sum % 2 == 0 ? Label::Unsafe : Label::Safe,
                      sum % 2 == 0 ? 0.8 : 0.2};
  };
  const SelectionRun run = run_fix(pool, Strategy::MLSelector, quirky, 25, 19);
  CHECK(run.drawn == run.executed + run.skipped);
  CHECK(run.tp + run.fp + run.tn + run.fn == run.drawn);
  CHECK(run.tp + run.fp == run.executed);   // executed = predicted unsafe
  CHECK(run.tp == run.executed_unsafe);      // revealed unsafe among executed
  CHECK(run.steps.size() == run.drawn);

  // Per-step log agrees with the totals.
  std::size_t executed = 0;
  double time_sum = 0.0;
  for (const auto& step : run.steps) {
    executed += step.executed;
    time_sum += step.wall_cost_s;
  }
  CHECK(executed == run.executed);
  CHECK(time_sum == doctest::Approx(run.total_time_s()).epsilon(1e-12));
}

TEST_CASE("repetition aggregates are exact sums and means") {
  const auto labeled = synthetic_labeled(100, 50);
  const TestPool pool = build_pool(labeled, {2.0 / 3, 1.0 / 3}, 23);

  const RepetitionSummary one =
      run_fix_repetitions(pool, Strategy::Baseline, {}, 20, 5, 1);
  REQUIRE(one.runs.size() == 1);
  CHECK(one.mean_suite_unsafe_ratio ==
        doctest::Approx(one.runs[0].suite_unsafe_ratio()).epsilon(1e-12));
  CHECK(one.std_suite_unsafe_ratio == doctest::Approx(0.0).epsilon(1e-12));

  const RepetitionSummary many = run_reach_repetitions(
      pool, Strategy::MLSelector, oracle_selector(), 5, 5, 10);
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double drawn = 0.0;
  for (const auto& r : many.runs) {
    tp += r.tp;
    fp += r.fp;
    tn += r.tn;
    fn += r.fn;
    drawn += static_cast<double>(r.drawn);
  }
  CHECK(many.cum_tp == tp);
  CHECK(many.cum_fp == fp);
  CHECK(many.cum_tn == tn);
  CHECK(many.cum_fn == fn);
  CHECK(many.mean_drawn == doctest::Approx(drawn / 10.0).epsilon(1e-12));

  // Same master seed reproduces; a different one changes the draws.
  const RepetitionSummary again = run_reach_repetitions(
      pool, Strategy::MLSelector, oracle_selector(), 5, 5, 10);
  CHECK(again.mean_drawn == many.mean_drawn);
  const RepetitionSummary other = run_reach_repetitions(
      pool, Strategy::MLSelector, oracle_selector(), 5, 6, 10);
  CHECK(other.mean_drawn != many.mean_drawn);
}

TEST_CASE("cross evaluation reports both provenance tags") {
  GeneratorConfig cfg = default_generator_config();
  cfg.seed = 50;
  const auto tests = generate(cfg, 400).tests;

  const auto reckless = label_batch(tests, default_driver(2.0, 7));
  const auto cautious = label_batch(tests, default_driver(1.0, 7));
  Dataset reckless_data = assemble_full_road(reckless, "af-2.0");
  Dataset cautious_data = assemble_full_road(cautious, "af-1.0");

  const auto [train_side, test_side] = split(reckless_data, 0.8, 3);
  const Classifier model =
      train(ClassifierKind::Logistic, oversample(train_side, 4), Hyperparams{}, 5);

  const EvalReport in_domain = evaluate(model, test_side);
  const CrossEvalReport transfer = cross_evaluate(model, cautious_data);
  CHECK(transfer.model_provenance == "af-2.0");
  CHECK(transfer.data_provenance == "af-1.0");
  // Out-of-provenance accuracy drops: the cautious labels disagree with the
  // reckless decision boundary.
  CHECK(transfer.report.accuracy < in_domain.accuracy);

  const CrossEvalReport self_check = cross_evaluate(model, test_side);
  CHECK(self_check.report.accuracy == in_domain.accuracy);
  CHECK(self_check.report.tp == in_domain.tp);

  SUBCASE("a combined-provenance model is evaluated per source") {
    Dataset combined = reckless_data;
    combined.provenance = "combined";
    combined.rows.insert(combined.rows.end(), cautious_data.rows.begin(),
                         cautious_data.rows.end());
    const Classifier merged =
        train(ClassifierKind::NaiveBayes, oversample(combined, 6), Hyperparams{}, 7);
    const CrossEvalReport on_reckless = cross_evaluate(merged, reckless_data);
    const CrossEvalReport on_cautious = cross_evaluate(merged, cautious_data);
    CHECK(on_reckless.model_provenance == "combined");
    CHECK(on_reckless.data_provenance == "af-2.0");
    CHECK(on_cautious.data_provenance == "af-1.0");
    CHECK(on_reckless.report.total() == reckless_data.rows.size());
    CHECK(on_cautious.report.total() == cautious_data.rows.size());
  }
}
