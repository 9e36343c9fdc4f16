#include "scissor/realtime.hpp"

#include <cmath>

#include "scissor/error.hpp"
#include "scissor/features.hpp"
#include "scissor/rng.hpp"

namespace scissor {

namespace {

struct AdaptiveState {
  Dataset training;
  std::optional<Classifier> model;
  std::size_t retrain_counter = 0;

  explicit AdaptiveState(const std::string& provenance) {
    training.schema = full_road_schema();
    training.provenance = provenance;
  }

  void absorb(const LabeledTest& lt) {
    training.rows.push_back(
        vectorize(extract_full_road(lt.test), lt.label, lt.test.id));
  }

  bool both_classes_after(const LabeledTest& lt) const {
    const std::size_t safe = training.count(Label::Safe) + (lt.label == Label::Safe);
    const std::size_t unsafe = training.count(Label::Unsafe) + (lt.label == Label::Unsafe);
    return safe > 0 && unsafe > 0;
  }

  // Rebalance then retrain; keeps the previous model when only one class
  // has been observed so far.
  bool retrain(ClassifierKind kind, const Hyperparams& hyper, std::uint64_t seed) {
    if (!training.has_both_classes()) return false;
    const std::uint64_t step_seed = derive_seed(seed, 0x7e7 + retrain_counter);
    ++retrain_counter;
    const Dataset balanced = oversample(training, step_seed);
    model = train(kind, balanced, hyper, step_seed);
    return true;
  }
};

}  // namespace

const char* to_string(RealTimeMode mode) {
  switch (mode) {
    case RealTimeMode::Baseline: return "baseline";
    case RealTimeMode::PreTrained: return "pretrained";
    case RealTimeMode::Adaptive: return "adaptive";
  }
  return "?";
}

RealTimeMode realtime_mode_from(const std::string& name) {
  if (name == "baseline") return RealTimeMode::Baseline;
  if (name == "pretrained") return RealTimeMode::PreTrained;
  if (name == "adaptive") return RealTimeMode::Adaptive;
  throw Error("unknown real-time mode: " + name);
}

RealTimeRun run_realtime(const RealTimeConfig& config, const SelectorFn& pretrained,
                         std::uint64_t seed) {
  if (!(config.budget_s > 0.0)) throw DomainError("budget must be positive");
  if (config.mode == RealTimeMode::PreTrained && !pretrained) {
    throw DomainError("pretrained mode needs a selector");
  }

  GeneratorConfig gen_cfg = config.generator;
  gen_cfg.seed = derive_seed(seed, 0x6e1);
  DriverConfig driver = config.driver;
  driver.noise_seed = derive_seed(seed, 0x6e2);
  const std::uint64_t learn_seed = derive_seed(seed, 0x6e3);

  RealTimeRun run;
  run.mode = config.mode;
  run.budget_s = config.budget_s;

  AdaptiveState adaptive(std::string("realtime-af-") +
                         std::to_string(config.driver.aggression));

  double clock = 0.0;
  std::size_t next_index = 0;
  while (true) {
    // Build the whole iteration first, then commit it only if every cost
    // fits the remaining budget; a partially affordable test never happens.
    const GenerationResult gen = generate_range(gen_cfg, next_index, 1);
    const TestCase& test = gen.tests.front();
    const SimResult sim = simulate(test, driver);
    LabeledTest lt;
    lt.test = test;
    lt.label = sim.label;
    lt.obe_segments = sim.obe_segments;
    lt.sim_duration_s = sim.sim_duration_s;
    lt.wall_cost_s = sim.wall_cost_s;

    double cost = config.costs.generation_s;
    bool predicts = false;
    Prediction pred;
    bool executes = true;
    bool retrains = false;

    switch (config.mode) {
      case RealTimeMode::Baseline:
        break;
      case RealTimeMode::PreTrained:
        predicts = true;
        pred = pretrained(lt);
        executes = pred.label == Label::Unsafe;
        break;
      case RealTimeMode::Adaptive: {
        const bool bootstrapping = run.counts.generated < config.bootstrap_size;
        if (!bootstrapping && adaptive.model.has_value()) {
          predicts = true;
          pred = classifier_selector(*adaptive.model)(lt);
          executes = pred.label == Label::Unsafe;
          retrains = executes;
        } else {
          // Bootstrap, or the bootstrap sample was single-class: execute
          // unconditionally until a model can exist.
          executes = true;
          retrains = run.counts.generated + 1 >= config.bootstrap_size &&
                     adaptive.both_classes_after(lt);
        }
        break;
      }
    }

    if (predicts) cost += config.costs.prediction_s;
    if (executes) cost += lt.wall_cost_s;
    double retrain_cost = 0.0;
    if (retrains) {
      const auto rows_after = static_cast<double>(adaptive.training.rows.size() + 1);
      retrain_cost = config.costs.retrain_coef * std::sqrt(rows_after);
      cost += retrain_cost;
    }

    if (clock + cost > config.budget_s) break;

    clock += cost;
    next_index += 1;
    run.counts.generated += 1;
    run.ledger.generation_s += config.costs.generation_s;
    if (predicts) {
      run.counts.predicted += 1;
      run.ledger.prediction_s += config.costs.prediction_s;
      if (lt.label == Label::Unsafe) {
        (pred.label == Label::Unsafe ? run.counts.tp : run.counts.fn) += 1;
      } else {
        (pred.label == Label::Unsafe ? run.counts.fp : run.counts.tn) += 1;
      }
    }
    if (executes) {
      if (lt.label == Label::Unsafe) {
        run.counts.executed_unsafe += 1;
        run.ledger.execution_unsafe_s += lt.wall_cost_s;
      } else {
        run.counts.executed_safe += 1;
        run.ledger.execution_safe_s += lt.wall_cost_s;
      }
      if (config.mode == RealTimeMode::Adaptive) adaptive.absorb(lt);
    } else {
      run.counts.rejected += 1;
      run.post_mortem.push_back({lt.test.id, pred.label, lt.label});
    }
    if (retrains) {
      run.ledger.retraining_s += retrain_cost;
      run.retrain_events += 1;
      adaptive.retrain(config.model_kind, config.hyper, learn_seed);
    }
  }
  return run;
}

}  // namespace scissor
