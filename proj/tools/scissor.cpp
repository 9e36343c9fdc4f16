// scissor - test selection laboratory for simulated lane-keeping roads.
//
// Subcommands cover the full workflow: generate roads, label them with the
// kinematic driver, extract feature sets, train/evaluate/rank, run the FIX,
// REACH and real-time selection studies, and merge the emitted reports.
// Every subcommand takes an explicit --seed; nothing is seeded from the
// clock. Set SCISSOR_LOG=error|warn|info|debug to control logging.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scissor/classifier.hpp"
#include "scissor/dataset.hpp"
#include "scissor/error.hpp"
#include "scissor/features.hpp"
#include "scissor/generator.hpp"
#include "scissor/log.hpp"
#include "scissor/pipeline.hpp"
#include "scissor/pool.hpp"
#include "scissor/ranking.hpp"
#include "scissor/realtime.hpp"
#include "scissor/report.hpp"
#include "scissor/rng.hpp"
#include "scissor/road_io.hpp"
#include "scissor/selection.hpp"
#include "scissor/simulator.hpp"
#include "scissor/version.hpp"

namespace {

using nlohmann::json;
using namespace scissor;

DriverConfig driver_from_file(const std::string& path, std::uint64_t seed) {
  DriverConfig d = default_driver(1.5, seed);
  if (path.empty()) return d;
  json j = json::parse(read_file(path));
  std::string profile = "default";
  if (j.contains("profile")) profile = j["profile"].get<std::string>();
  if (profile == "planner") {
    d = planner_driver(seed);
  } else if (profile != "default") {
    throw ConfigInvalid("driver profile must be 'default' or 'planner'");
  }
  auto opt = [&](const char* key, double& into) {
    if (j.contains(key)) into = j[key].get<double>();
  };
  opt("aggression", d.aggression);
  opt("mu_assumed", d.mu_assumed);
  opt("v_max", d.v_max);
  opt("a_acc", d.a_acc);
  opt("a_dec", d.a_dec);
  opt("perception_noise", d.perception_noise);
  opt("g", d.g);
  opt("overhead_s", d.overhead_s);
  opt("grid_step_m", d.grid_step_m);
  if (j.contains("noise_seed")) d.noise_seed = j["noise_seed"].get<std::uint64_t>();
  return d;
}

GeneratorConfig generator_from_file(const std::string& path) {
  GeneratorConfig g = default_generator_config();
  if (path.empty()) return g;
  json j = json::parse(read_file(path));
  auto optd = [&](const char* key, double& into) {
    if (j.contains(key)) into = j[key].get<double>();
  };
  auto opti = [&](const char* key, int& into) {
    if (j.contains(key)) into = j[key].get<int>();
  };
  opti("segments_min", g.segments_min);
  opti("segments_max", g.segments_max);
  optd("straight_len_min", g.straight_len_min);
  optd("straight_len_max", g.straight_len_max);
  optd("turn_radius_min", g.turn_radius_min);
  optd("turn_radius_max", g.turn_radius_max);
  optd("turn_angle_min", g.turn_angle_min);
  optd("turn_angle_max", g.turn_angle_max);
  optd("p_straight", g.p_straight);
  optd("p_left", g.p_left);
  optd("p_right", g.p_right);
  optd("friction", g.friction);
  opti("max_retries", g.max_retries);
  return g;
}

json eval_report_json(const EvalReport& r) {
  return json{{"tp", r.tp},
              {"fp", r.fp},
              {"tn", r.tn},
              {"fn", r.fn},
              {"accuracy", r.accuracy},
              {"precision_unsafe", r.precision_unsafe},
              {"recall_unsafe", r.recall_unsafe},
              {"f1_unsafe", r.f1_unsafe},
              {"precision_safe", r.precision_safe},
              {"recall_safe", r.recall_safe},
              {"f1_safe", r.f1_safe}};
}

Dataset load_features(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() > 6 && path.substr(path.size() - 6) == ".jsonl") {
    return dataset_from_jsonl(text);
  }
  return dataset_from_csv(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scissor - ML-based selection of simulated road tests"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // generate
  auto* cmd_gen = app.add_subcommand("generate", "Generate road test cases");
  std::uint64_t seed = 0;
  std::size_t count = 500;
  std::string out_path, config_path;
  cmd_gen->add_option("--seed", seed, "Master seed")->required();
  cmd_gen->add_option("--count", count, "Number of tests")->required();
  cmd_gen->add_option("--out", out_path, "Output tests.json")->required();
  cmd_gen->add_option("--config", config_path, "Generator config JSON");

  // label
  auto* cmd_label = app.add_subcommand("label", "Label tests with the surrogate driver");
  std::string tests_path, driver_path, labeled_path;
  std::uint64_t label_seed = 0;
  cmd_label->add_option("--seed", label_seed, "Noise seed")->required();
  cmd_label->add_option("--tests", tests_path, "tests.json")->required();
  cmd_label->add_option("--driver", driver_path, "Driver config JSON");
  cmd_label->add_option("--out", labeled_path, "Output labeled.json")->required();

  // extract
  auto* cmd_extract = app.add_subcommand("extract", "Extract feature vectors");
  std::string ex_labeled, ex_tests, ex_set = "full", ex_out;
  bool ex_signed = false;
  std::uint64_t ex_seed = 0;
  cmd_extract->add_option("--seed", ex_seed, "Seed (recorded only)")->required();
  cmd_extract->add_option("--labeled", ex_labeled, "labeled.json")->required();
  cmd_extract->add_option("--tests", ex_tests, "tests.json with geometry")->required();
  cmd_extract->add_option("--set", ex_set, "full or segment")
      ->check(CLI::IsMember({"full", "segment"}));
  cmd_extract->add_flag("--signed-angles", ex_signed, "Signed angle statistics");
  cmd_extract->add_option("--out", ex_out, "Output .csv or .jsonl")->required();

  // train
  auto* cmd_train = app.add_subcommand("train", "Train a classifier");
  std::string tr_features, tr_model = "logistic", tr_out, tr_holdout;
  double tr_fraction = 1.0;
  bool tr_no_oversample = false;
  std::uint64_t tr_seed = 0;
  Hyperparams tr_hyper;
  cmd_train->add_option("--seed", tr_seed, "Training seed")->required();
  cmd_train->add_option("--features", tr_features, "features .csv/.jsonl")->required();
  cmd_train->add_option("--model", tr_model, "logistic|decision_tree|random_forest|naive_bayes")
      ->check(CLI::IsMember({"logistic", "decision_tree", "random_forest", "naive_bayes"}));
  cmd_train->add_option("--out", tr_out, "Output model.json")->required();
  cmd_train->add_option("--train-fraction", tr_fraction,
                        "Train on this fraction, hold out the rest");
  cmd_train->add_option("--holdout-out", tr_holdout, "Write held-out rows here");
  cmd_train->add_flag("--no-oversample", tr_no_oversample,
                      "Skip training-side rebalancing");
  cmd_train->add_option("--l2", tr_hyper.l2, "Logistic ridge strength");
  cmd_train->add_option("--min-leaf", tr_hyper.min_leaf, "Tree minimum leaf size");
  cmd_train->add_option("--trees", tr_hyper.n_trees, "Forest size");

  // eval
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate a model on a feature file");
  std::string ev_model, ev_features, ev_report;
  std::uint64_t ev_seed = 0;
  cmd_eval->add_option("--seed", ev_seed, "Seed (recorded only)")->required();
  cmd_eval->add_option("--model", ev_model, "model.json")->required();
  cmd_eval->add_option("--features", ev_features, "features .csv/.jsonl")->required();
  cmd_eval->add_option("--report", ev_report, "Output report.json")->required();

  // rank
  auto* cmd_rank = app.add_subcommand("rank", "Rank features against the label");
  std::string rk_features, rk_method = "infogain", rk_out;
  std::uint64_t rk_seed = 0;
  cmd_rank->add_option("--seed", rk_seed, "Seed (recorded only)")->required();
  cmd_rank->add_option("--features", rk_features, "features .csv/.jsonl")->required();
  cmd_rank->add_option("--method", rk_method, "infogain or correlation")
      ->check(CLI::IsMember({"infogain", "correlation"}));
  cmd_rank->add_option("--out", rk_out, "Output ranking.json")->required();

  // fix / reach
  auto* cmd_fix = app.add_subcommand("fix", "Fixed-size suite selection study");
  auto* cmd_reach = app.add_subcommand("reach", "Unsafe-goal selection study");
  struct SelArgs {
    std::string pool, tests, model, out;
    std::size_t target = 0;
    std::size_t reps = 30;
    std::uint64_t seed = 0;
  } fix_args, reach_args;
  for (auto [cmd, args, target_name, target_help] :
       {std::tuple{cmd_fix, &fix_args, "--suite-size", "Target suite size S"},
        std::tuple{cmd_reach, &reach_args, "--n", "Unsafe goal N"}}) {
    cmd->add_option("--seed", args->seed, "Master seed")->required();
    cmd->add_option("--pool", args->pool, "Pool labeled.json")->required();
    cmd->add_option("--tests", args->tests, "tests.json with geometry")->required();
    cmd->add_option("--model", args->model, "model.json (omit for baseline only)");
    cmd->add_option(target_name, args->target, target_help)->required();
    cmd->add_option("--reps", args->reps, "Repetitions");
    cmd->add_option("--out", args->out, "Output report.json (and .csv sibling)")
        ->required();
  }

  // realtime
  auto* cmd_rt = app.add_subcommand("realtime", "Real-time generation loop study");
  std::string rt_mode = "baseline", rt_model, rt_gen_config, rt_driver, rt_out;
  double rt_budget = 21600.0;
  std::size_t rt_bootstrap = 60;
  std::uint64_t rt_seed = 0;
  cmd_rt->add_option("--seed", rt_seed, "Master seed")->required();
  cmd_rt->add_option("--mode", rt_mode, "baseline|pretrained|adaptive")
      ->check(CLI::IsMember({"baseline", "pretrained", "adaptive"}))
      ->required();
  cmd_rt->add_option("--budget-s", rt_budget, "Simulated time budget in seconds")
      ->required();
  cmd_rt->add_option("--model", rt_model, "model.json (pretrained mode)");
  cmd_rt->add_option("--gen-config", rt_gen_config, "Generator config JSON");
  cmd_rt->add_option("--driver", rt_driver, "Driver config JSON");
  cmd_rt->add_option("--bootstrap", rt_bootstrap, "Adaptive bootstrap size");
  cmd_rt->add_option("--out", rt_out, "Output report.json (and .csv sibling)")->required();

  // report
  auto* cmd_report = app.add_subcommand("report", "Merge experiment reports");
  std::vector<std::string> rp_inputs;
  std::string rp_json, rp_csv;
  std::uint64_t rp_seed = 0;
  cmd_report->add_option("--seed", rp_seed, "Seed (recorded only)")->required();
  cmd_report->add_option("--inputs", rp_inputs, "Report JSON files")->required();
  cmd_report->add_option("--out-json", rp_json, "Merged JSON path")->required();
  cmd_report->add_option("--out-csv", rp_csv, "Merged CSV path")->required();

  // pipeline
  auto* cmd_pipe = app.add_subcommand("pipeline", "Run configured stages end to end");
  std::string pipe_config, pipe_manifest, pipe_outdir;
  cmd_pipe->add_option("--config", pipe_config, "Pipeline config JSON");
  cmd_pipe->add_option("--from-manifest", pipe_manifest,
                       "Re-run from a manifest's embedded config");
  cmd_pipe->add_option("--out-dir", pipe_outdir, "Override the output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_gen) {
      GeneratorConfig cfg = generator_from_file(config_path);
      cfg.seed = seed;
      const GenerationResult gen = generate(cfg, count);
      write_file(out_path, tests_to_json(gen.tests));
      std::printf("generated %zu tests (%llu drafts rejected, fraction %.4f)\n",
                  gen.tests.size(),
                  static_cast<unsigned long long>(gen.rejected_self_intersection +
                                                  gen.rejected_too_short),
                  gen.rejection_fraction());
    } else if (*cmd_label) {
      const auto tests = tests_from_json(read_file(tests_path));
      const DriverConfig driver = driver_from_file(driver_path, label_seed);
      const auto labeled = label_batch(tests, driver);
      write_file(labeled_path, labels_to_json(labeled));
      std::size_t unsafe = 0;
      for (const auto& lt : labeled) unsafe += lt.label == Label::Unsafe;
      std::printf("labeled %zu tests, %zu unsafe (%.1f%%)\n", labeled.size(), unsafe,
                  labeled.empty() ? 0.0 : 100.0 * unsafe / labeled.size());
    } else if (*cmd_extract) {
      const auto tests = tests_from_json(read_file(ex_tests));
      const auto labeled = labels_from_json(read_file(ex_labeled), tests);
      const Dataset d = ex_set == "full"
                            ? assemble_full_road(labeled, "cli", ExtractOptions{ex_signed})
                            : assemble_segments(labeled, "cli");
      const bool jsonl = ex_out.size() > 6 && ex_out.substr(ex_out.size() - 6) == ".jsonl";
      write_file(ex_out, jsonl ? dataset_to_jsonl(d) : dataset_to_csv(d));
      std::printf("wrote %zu %s rows to %s\n", d.rows.size(), ex_set.c_str(),
                  ex_out.c_str());
    } else if (*cmd_train) {
      Dataset d = load_features(tr_features);
      Dataset holdout;
      if (tr_fraction < 1.0) {
        auto [train_side, test_side] = split(d, tr_fraction, tr_seed);
        d = std::move(train_side);
        holdout = std::move(test_side);
      }
      if (!tr_no_oversample) d = oversample(d, derive_seed(tr_seed, 1));
      const Classifier model =
          train(classifier_kind_from(tr_model), d, tr_hyper, derive_seed(tr_seed, 2));
      write_file(tr_out, classifier_to_json(model));
      if (!tr_holdout.empty() && !holdout.rows.empty()) {
        write_file(tr_holdout, dataset_to_csv(holdout));
      }
      std::printf("trained %s on %zu rows\n", tr_model.c_str(), d.rows.size());
    } else if (*cmd_eval) {
      const Classifier model = classifier_from_json(read_file(ev_model));
      const Dataset d = load_features(ev_features);
      const EvalReport r = evaluate(model, d);
      write_file(ev_report, eval_report_json(r).dump(2) + "\n");
      std::printf("accuracy %.4f  unsafe P/R/F1 %.4f/%.4f/%.4f\n", r.accuracy,
                  r.precision_unsafe, r.recall_unsafe, r.f1_unsafe);
    } else if (*cmd_rank) {
      const Dataset d = load_features(rk_features);
      const auto method =
          rk_method == "infogain" ? RankMethod::InfoGain : RankMethod::Correlation;
      json arr = json::array();
      for (const auto& r : rank_features(d, method)) {
        arr.push_back(
            json{{"feature", r.feature}, {"score", r.score}, {"selected", r.selected}});
        std::printf("%-24s %.6f%s\n", r.feature.c_str(), r.score,
                    r.selected ? "  *" : "");
      }
      write_file(rk_out, json{{"method", rk_method}, {"ranking", arr}}.dump(2) + "\n");
    } else if (*cmd_fix || *cmd_reach) {
      const bool is_fix = static_cast<bool>(*cmd_fix);
      const SelArgs& a = is_fix ? fix_args : reach_args;
      const auto tests = tests_from_json(read_file(a.tests));
      const auto labeled = labels_from_json(read_file(a.pool), tests);
      std::size_t unsafe = 0;
      for (const auto& lt : labeled) unsafe += lt.label == Label::Unsafe;
      TestPool pool;
      pool.entries = labeled;
      pool.n_unsafe = unsafe;
      pool.n_safe = labeled.size() - unsafe;
      pool.requested = {labeled.empty() ? 0.0 : 1.0 - double(unsafe) / labeled.size(),
                        labeled.empty() ? 0.0 : double(unsafe) / labeled.size()};
      std::vector<StrategyBlock> blocks;
      auto run_reps = [&](Strategy strategy, const SelectorFn& sel, std::uint64_t s) {
        return is_fix ? run_fix_repetitions(pool, strategy, sel, a.target, s, a.reps)
                      : run_reach_repetitions(pool, strategy, sel, a.target, s, a.reps);
      };
      blocks.push_back(
          {Strategy::Baseline, run_reps(Strategy::Baseline, {}, derive_seed(a.seed, 1))});
      if (!a.model.empty()) {
        const Classifier model = classifier_from_json(read_file(a.model));
        blocks.push_back({Strategy::MLSelector,
                          run_reps(Strategy::MLSelector, classifier_selector(model),
                                   derive_seed(a.seed, 2))});
      }
      const std::string exp = is_fix ? "fix" : "reach";
      const std::string pname = pool_name(pool.requested);
      write_file(a.out, selection_report_json(exp, pname, a.target, blocks));
      const std::string csv_path = a.out.substr(0, a.out.find_last_of('.')) + ".csv";
      write_file(csv_path, selection_report_csv(exp, pname, blocks));
      for (const auto& b : blocks) {
        std::printf("%s %s: mean executed %.1f, mean suite unsafe ratio %.4f\n",
                    exp.c_str(), to_string(b.strategy), b.summary.mean_executed,
                    b.summary.mean_suite_unsafe_ratio);
      }
    } else if (*cmd_rt) {
      RealTimeConfig cfg;
      cfg.mode = realtime_mode_from(rt_mode);
      cfg.budget_s = rt_budget;
      cfg.generator = generator_from_file(rt_gen_config);
      cfg.driver = driver_from_file(rt_driver, 0);
      cfg.bootstrap_size = rt_bootstrap;
      SelectorFn selector;
      if (cfg.mode == RealTimeMode::PreTrained) {
        if (rt_model.empty()) throw ConfigInvalid("pretrained mode needs --model");
        const Classifier model = classifier_from_json(read_file(rt_model));
        selector = classifier_selector(model);
      }
      const RealTimeRun run = run_realtime(cfg, selector, rt_seed);
      write_file(rt_out, realtime_report_json({run}));
      const std::string csv_path = rt_out.substr(0, rt_out.find_last_of('.')) + ".csv";
      write_file(csv_path, realtime_report_csv({run}));
      std::printf("%s: generated %zu, executed %zu unsafe / %zu safe, rejected %zu\n",
                  rt_mode.c_str(), run.counts.generated, run.counts.executed_unsafe,
                  run.counts.executed_safe, run.counts.rejected);
    } else if (*cmd_report) {
      std::vector<std::string> texts;
      texts.reserve(rp_inputs.size());
      for (const auto& path : rp_inputs) texts.push_back(read_file(path));
      const MergedReport merged = merge_reports(texts);
      write_file(rp_json, merged.json);
      write_file(rp_csv, merged.csv);
      std::printf("merged %zu reports\n", rp_inputs.size());
    } else if (*cmd_pipe) {
      std::string config_text;
      if (!pipe_manifest.empty()) {
        const json manifest = json::parse(read_file(pipe_manifest));
        config_text = manifest.at("config").dump();
      } else if (!pipe_config.empty()) {
        config_text = read_file(pipe_config);
      } else {
        throw ConfigInvalid("pipeline needs --config or --from-manifest");
      }
      const PipelineResult r = run_pipeline(config_text, pipe_outdir);
      std::printf("pipeline wrote %zu artifacts + %s in %s\n", r.artifacts.size(),
                  r.manifest_path.c_str(), r.out_dir.c_str());
    }
  } catch (const StageFailure& e) {
    json err{{"error", "stage_failure"}, {"stage", e.stage_name}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", "failure"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
