#include "scissor/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <memory>
#include <set>
#include <unordered_set>

#include "json.hpp"
#include "scissor/dataset.hpp"
#include "scissor/digest.hpp"
#include "scissor/error.hpp"
#include "scissor/features.hpp"
#include "scissor/log.hpp"
#include "scissor/pool.hpp"
#include "scissor/ranking.hpp"
#include "scissor/realtime.hpp"
#include "scissor/report.hpp"
#include "scissor/rng.hpp"
#include "scissor/road_io.hpp"
#include "scissor/selection.hpp"
#include "scissor/version.hpp"

namespace scissor {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
  if (!j.is_object()) throw ConfigInvalid(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigInvalid("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read_opt(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

GeneratorConfig parse_generator(const json& j) {
  require_keys(j, {"count", "segments_min", "segments_max", "straight_len_min",
                   "straight_len_max", "turn_radius_min", "turn_radius_max",
                   "turn_angle_min", "turn_angle_max", "p_straight", "p_left", "p_right",
                   "friction", "max_retries"},
               "generate");
  GeneratorConfig g = default_generator_config();
  read_opt(j, "segments_min", g.segments_min);
  read_opt(j, "segments_max", g.segments_max);
  read_opt(j, "straight_len_min", g.straight_len_min);
  read_opt(j, "straight_len_max", g.straight_len_max);
  read_opt(j, "turn_radius_min", g.turn_radius_min);
  read_opt(j, "turn_radius_max", g.turn_radius_max);
  read_opt(j, "turn_angle_min", g.turn_angle_min);
  read_opt(j, "turn_angle_max", g.turn_angle_max);
  read_opt(j, "p_straight", g.p_straight);
  read_opt(j, "p_left", g.p_left);
  read_opt(j, "p_right", g.p_right);
  read_opt(j, "friction", g.friction);
  read_opt(j, "max_retries", g.max_retries);
  return g;
}

DriverConfig parse_driver(const json& j, std::string& profile) {
  require_keys(j, {"profile", "aggression", "mu_assumed", "v_max", "a_acc", "a_dec",
                   "perception_noise", "g", "overhead_s", "grid_step_m"},
               "label");
  read_opt(j, "profile", profile);
  DriverConfig d;
  if (profile == "planner") {
    d = planner_driver();
  } else if (profile == "default") {
    d = default_driver(1.5);
  } else {
    throw ConfigInvalid("label.profile must be 'default' or 'planner'");
  }
  read_opt(j, "aggression", d.aggression);
  read_opt(j, "mu_assumed", d.mu_assumed);
  read_opt(j, "v_max", d.v_max);
  read_opt(j, "a_acc", d.a_acc);
  read_opt(j, "a_dec", d.a_dec);
  read_opt(j, "perception_noise", d.perception_noise);
  read_opt(j, "g", d.g);
  read_opt(j, "overhead_s", d.overhead_s);
  read_opt(j, "grid_step_m", d.grid_step_m);
  return d;
}

Hyperparams parse_hyper(const json& j) {
  require_keys(j, {"l2", "max_iterations", "grad_tolerance", "min_leaf", "n_trees"},
               "train.hyper");
  Hyperparams h;
  read_opt(j, "l2", h.l2);
  read_opt(j, "max_iterations", h.max_iterations);
  read_opt(j, "grad_tolerance", h.grad_tolerance);
  read_opt(j, "min_leaf", h.min_leaf);
  read_opt(j, "n_trees", h.n_trees);
  return h;
}

// The snapshot records every computation input; the output directory is a
// location, not an input, and is deliberately left out so runs into
// different directories stay byte-identical.
json config_snapshot(const PipelineConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["timestamp"] = cfg.timestamp;
  j["stages"] = cfg.stages;
  j["generate"] = json{{"count", cfg.generate_count},
                       {"segments_min", cfg.generator.segments_min},
                       {"segments_max", cfg.generator.segments_max},
                       {"straight_len_min", cfg.generator.straight_len_min},
                       {"straight_len_max", cfg.generator.straight_len_max},
                       {"turn_radius_min", cfg.generator.turn_radius_min},
                       {"turn_radius_max", cfg.generator.turn_radius_max},
                       {"turn_angle_min", cfg.generator.turn_angle_min},
                       {"turn_angle_max", cfg.generator.turn_angle_max},
                       {"p_straight", cfg.generator.p_straight},
                       {"p_left", cfg.generator.p_left},
                       {"p_right", cfg.generator.p_right},
                       {"friction", cfg.generator.friction},
                       {"max_retries", cfg.generator.max_retries}};
  j["label"] = json{{"profile", cfg.driver_profile},
                    {"aggression", cfg.driver.aggression},
                    {"mu_assumed", cfg.driver.mu_assumed},
                    {"v_max", cfg.driver.v_max},
                    {"a_acc", cfg.driver.a_acc},
                    {"a_dec", cfg.driver.a_dec},
                    {"perception_noise", cfg.driver.perception_noise},
                    {"g", cfg.driver.g},
                    {"overhead_s", cfg.driver.overhead_s},
                    {"grid_step_m", cfg.driver.grid_step_m}};
  j["extract"] = json{{"set", cfg.extract_set},
                      {"signed_angles", cfg.signed_angles},
                      {"format", cfg.extract_format}};
  j["train"] = json{{"model", to_string(cfg.model_kind)},
                    {"train_fraction", cfg.train_fraction},
                    {"oversample", cfg.oversample_training},
                    {"hyper", json{{"l2", cfg.hyper.l2},
                                   {"max_iterations", cfg.hyper.max_iterations},
                                   {"grad_tolerance", cfg.hyper.grad_tolerance},
                                   {"min_leaf", cfg.hyper.min_leaf},
                                   {"n_trees", cfg.hyper.n_trees}}}};
  j["rank"] = json{{"method", cfg.rank_method}, {"features", cfg.rank_features_file}};
  j["fix"] = json{{"pool", json::array({cfg.fix_pool_safe, cfg.fix_pool_unsafe})},
                  {"suite_size", cfg.fix_suite_size},
                  {"reps", cfg.fix_reps}};
  j["reach"] = json{{"pool", json::array({cfg.reach_pool_safe, cfg.reach_pool_unsafe})},
                    {"n_unsafe", cfg.reach_n_unsafe},
                    {"reps", cfg.reach_reps}};
  j["realtime"] = json{{"modes", cfg.realtime_modes},
                       {"budget_s", cfg.realtime_budget_s},
                       {"bootstrap_size", cfg.realtime_bootstrap},
                       {"costs", json{{"generation_s", cfg.cost_generation_s},
                                      {"prediction_s", cfg.cost_prediction_s},
                                      {"retrain_coef", cfg.cost_retrain_coef}}}};
  return j;
}

std::uint64_t stage_seed(const PipelineConfig& cfg, const char* stage) {
  return derive_seed(cfg.seed, hash_str(stage));
}

}  // namespace

PipelineConfig parse_pipeline_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
  }
  require_keys(j, {"seed", "out_dir", "timestamp", "stages", "generate", "label", "extract",
                   "train", "rank", "fix", "reach", "realtime"},
               "config");
  if (!j.contains("seed")) throw ConfigInvalid("config requires a 'seed'");
  if (!j.contains("stages")) throw ConfigInvalid("config requires 'stages'");

  PipelineConfig cfg;
  cfg.seed = j.at("seed").get<std::uint64_t>();
  read_opt(j, "out_dir", cfg.out_dir);
  read_opt(j, "timestamp", cfg.timestamp);
  cfg.stages = j.at("stages").get<std::vector<std::string>>();

  static const std::set<std::string> known_stages = {
      "generate", "label", "extract", "train", "rank", "fix", "reach", "realtime"};
  for (const auto& s : cfg.stages) {
    if (!known_stages.count(s)) throw ConfigInvalid("unknown stage '" + s + "'");
  }

  cfg.generator = j.contains("generate") ? parse_generator(j["generate"])
                                         : default_generator_config();
  if (j.contains("generate")) read_opt(j["generate"], "count", cfg.generate_count);
  if (j.contains("label")) {
    cfg.driver = parse_driver(j["label"], cfg.driver_profile);
  } else {
    cfg.driver = default_driver(1.5);
  }
  if (j.contains("extract")) {
    require_keys(j["extract"], {"set", "signed_angles", "format"}, "extract");
    read_opt(j["extract"], "set", cfg.extract_set);
    read_opt(j["extract"], "signed_angles", cfg.signed_angles);
    read_opt(j["extract"], "format", cfg.extract_format);
    if (cfg.extract_set != "full" && cfg.extract_set != "segment" &&
        cfg.extract_set != "both") {
      throw ConfigInvalid("extract.set must be full, segment, or both");
    }
    if (cfg.extract_format != "csv" && cfg.extract_format != "jsonl") {
      throw ConfigInvalid("extract.format must be csv or jsonl");
    }
  }
  if (j.contains("train")) {
    require_keys(j["train"], {"model", "train_fraction", "oversample", "hyper"}, "train");
    if (j["train"].contains("model")) {
      cfg.model_kind = classifier_kind_from(j["train"]["model"].get<std::string>());
    }
    read_opt(j["train"], "train_fraction", cfg.train_fraction);
    read_opt(j["train"], "oversample", cfg.oversample_training);
    if (j["train"].contains("hyper")) cfg.hyper = parse_hyper(j["train"]["hyper"]);
    if (!(cfg.train_fraction > 0.0) || !(cfg.train_fraction < 1.0)) {
      throw ConfigInvalid("train.train_fraction must be in (0, 1)");
    }
  }
  if (j.contains("rank")) {
    require_keys(j["rank"], {"method", "features"}, "rank");
    read_opt(j["rank"], "method", cfg.rank_method);
    read_opt(j["rank"], "features", cfg.rank_features_file);
    if (cfg.rank_method != "infogain" && cfg.rank_method != "correlation" &&
        cfg.rank_method != "both") {
      throw ConfigInvalid("rank.method must be infogain, correlation, or both");
    }
  }
  auto parse_pool_stage = [](const json& s, const char* name, double& safe, double& unsafe,
                             std::size_t& target, std::size_t& reps, const char* target_key) {
    require_keys(s, {"pool", target_key, "reps"}, name);
    if (s.contains("pool")) {
      const auto pool = s.at("pool").get<std::vector<double>>();
      if (pool.size() != 2) throw ConfigInvalid(std::string(name) + ".pool needs [safe, unsafe]");
      safe = pool[0];
      unsafe = pool[1];
    }
    if (s.contains(target_key)) target = s.at(target_key).get<std::size_t>();
    if (s.contains("reps")) reps = s.at("reps").get<std::size_t>();
  };
  if (j.contains("fix")) {
    parse_pool_stage(j["fix"], "fix", cfg.fix_pool_safe, cfg.fix_pool_unsafe,
                     cfg.fix_suite_size, cfg.fix_reps, "suite_size");
  }
  if (j.contains("reach")) {
    parse_pool_stage(j["reach"], "reach", cfg.reach_pool_safe, cfg.reach_pool_unsafe,
                     cfg.reach_n_unsafe, cfg.reach_reps, "n_unsafe");
  }
  if (j.contains("realtime")) {
    require_keys(j["realtime"], {"modes", "budget_s", "bootstrap_size", "costs"},
                 "realtime");
    read_opt(j["realtime"], "modes", cfg.realtime_modes);
    read_opt(j["realtime"], "budget_s", cfg.realtime_budget_s);
    read_opt(j["realtime"], "bootstrap_size", cfg.realtime_bootstrap);
    if (j["realtime"].contains("costs")) {
      require_keys(j["realtime"]["costs"], {"generation_s", "prediction_s", "retrain_coef"},
                   "realtime.costs");
      read_opt(j["realtime"]["costs"], "generation_s", cfg.cost_generation_s);
      read_opt(j["realtime"]["costs"], "prediction_s", cfg.cost_prediction_s);
      read_opt(j["realtime"]["costs"], "retrain_coef", cfg.cost_retrain_coef);
    }
    for (const auto& m : cfg.realtime_modes) realtime_mode_from(m);  // validates
  }
  return cfg;
}

PipelineResult run_pipeline(const std::string& config_json_text,
                            const std::string& out_dir_override) {
  PipelineConfig cfg = parse_pipeline_config(config_json_text);
  if (!out_dir_override.empty()) cfg.out_dir = out_dir_override;
  if (cfg.timestamp.empty()) cfg.timestamp = utc_now();

  std::filesystem::create_directories(cfg.out_dir);
  PipelineResult result;
  result.out_dir = cfg.out_dir;

  json manifest;
  manifest["tool_version"] = kVersion;
  manifest["master_seed"] = cfg.seed;
  manifest["timestamp"] = cfg.timestamp;
  manifest["config"] = config_snapshot(cfg);
  manifest["inputs"] = json::object();
  manifest["artifacts"] = json::object();
  if (!cfg.rank_features_file.empty()) {
    manifest["inputs"][cfg.rank_features_file] = sha256_file(cfg.rank_features_file);
  }

  auto emit = [&](const std::string& name, const std::string& contents) {
    const std::string path = cfg.out_dir + "/" + name;
    write_file(path, contents);
    manifest["artifacts"][name] = json{{"path", name}, {"sha256", sha256_hex(contents)}};
    result.artifacts.push_back(name);
    log_info("wrote ", path);
  };

  // Stage products handed down the chain.
  std::vector<TestCase> tests;
  std::vector<LabeledTest> labeled;
  std::vector<LabeledTest> held_out_labeled;
  std::unique_ptr<Classifier> model;

  auto need = [&](const char* stage, bool ok, const char* what) {
    if (!ok) throw StageFailure(stage, std::string("requires ") + what);
  };

  for (const auto& stage : cfg.stages) {
    try {
      if (stage == "generate") {
        GeneratorConfig g = cfg.generator;
        g.seed = stage_seed(cfg, "generate");
        const GenerationResult gen = generate(g, cfg.generate_count);
        log_info("generated ", gen.tests.size(), " tests, rejection fraction ",
                 gen.rejection_fraction());
        tests = gen.tests;
        emit("tests.json", tests_to_json(tests));
      } else if (stage == "label") {
        need("label", !tests.empty(), "the generate stage");
        DriverConfig d = cfg.driver;
        d.noise_seed = stage_seed(cfg, "label");
        labeled = label_batch(tests, d);
        emit("labeled.json", labels_to_json(labeled));
      } else if (stage == "extract") {
        need("extract", !labeled.empty(), "the label stage");
        const std::string provenance =
            cfg.driver_profile + "-af-" + std::to_string(cfg.driver.aggression);
        auto emit_set = [&](const std::string& set_name) {
          Dataset d = set_name == "full"
                          ? assemble_full_road(labeled, provenance,
                                               ExtractOptions{cfg.signed_angles})
                          : assemble_segments(labeled, provenance);
          if (cfg.extract_format == "csv") {
            emit("features_" + set_name + ".csv", dataset_to_csv(d));
          } else {
            emit("features_" + set_name + ".jsonl", dataset_to_jsonl(d));
          }
        };
        if (cfg.extract_set == "full" || cfg.extract_set == "both") emit_set("full");
        if (cfg.extract_set == "segment" || cfg.extract_set == "both") emit_set("segment");
      } else if (stage == "train") {
        need("train", !labeled.empty(), "the label stage");
        const std::string provenance =
            cfg.driver_profile + "-af-" + std::to_string(cfg.driver.aggression);
        Dataset full = assemble_full_road(labeled, provenance,
                                          ExtractOptions{cfg.signed_angles});
        const auto seed = stage_seed(cfg, "train");
        auto [train_side, test_side] = split(full, cfg.train_fraction, seed);
        Dataset train_data = cfg.oversample_training
                                 ? oversample(train_side, derive_seed(seed, 1))
                                 : train_side;
        model = std::make_unique<Classifier>(
            train(cfg.model_kind, train_data, cfg.hyper, derive_seed(seed, 2)));
        emit("model.json", classifier_to_json(*model));
        const EvalReport eval_report = evaluate(*model, test_side);
        json jr;
        jr["model"] = to_string(cfg.model_kind);
        jr["train_rows"] = train_data.rows.size();
        jr["test_rows"] = test_side.rows.size();
        jr["tp"] = eval_report.tp;
        jr["fp"] = eval_report.fp;
        jr["tn"] = eval_report.tn;
        jr["fn"] = eval_report.fn;
        jr["accuracy"] = eval_report.accuracy;
        jr["precision_unsafe"] = eval_report.precision_unsafe;
        jr["recall_unsafe"] = eval_report.recall_unsafe;
        jr["f1_unsafe"] = eval_report.f1_unsafe;
        jr["precision_safe"] = eval_report.precision_safe;
        jr["recall_safe"] = eval_report.recall_safe;
        jr["f1_safe"] = eval_report.f1_safe;
        emit("eval_report.json", jr.dump(2) + "\n");
        // Held-out labeled tests feed the pool experiments.
        std::unordered_set<std::string> held_ids;
        for (const auto& row : test_side.rows) held_ids.insert(row.test_id);
        held_out_labeled.clear();
        for (const auto& lt : labeled) {
          if (held_ids.count(lt.test.id)) held_out_labeled.push_back(lt);
        }
      } else if (stage == "rank") {
        need("rank", !labeled.empty() || !cfg.rank_features_file.empty(),
             "the label stage or a rank.features file");
        Dataset full;
        if (!labeled.empty()) {
          const std::string provenance =
              cfg.driver_profile + "-af-" + std::to_string(cfg.driver.aggression);
          full = assemble_full_road(labeled, provenance, ExtractOptions{cfg.signed_angles});
        } else {
          const std::string text = read_file(cfg.rank_features_file);
          full = cfg.rank_features_file.ends_with(".jsonl")
                     ? dataset_from_jsonl(text)
                     : dataset_from_csv(text, "file");
        }
        json jr;
        auto rank_to_json = [&](RankMethod method) {
          json arr = json::array();
          for (const auto& r : rank_features(full, method)) {
            arr.push_back(
                json{{"feature", r.feature}, {"score", r.score}, {"selected", r.selected}});
          }
          return arr;
        };
        if (cfg.rank_method == "infogain" || cfg.rank_method == "both") {
          jr["infogain"] = rank_to_json(RankMethod::InfoGain);
        }
        if (cfg.rank_method == "correlation" || cfg.rank_method == "both") {
          jr["correlation"] = rank_to_json(RankMethod::Correlation);
        }
        emit("ranking.json", jr.dump(2) + "\n");
      } else if (stage == "fix" || stage == "reach") {
        need(stage.c_str(), model != nullptr && !held_out_labeled.empty(),
             "the train stage");
        const bool is_fix = stage == "fix";
        const PoolComposition comp = is_fix
                                         ? PoolComposition{cfg.fix_pool_safe, cfg.fix_pool_unsafe}
                                         : PoolComposition{cfg.reach_pool_safe,
                                                           cfg.reach_pool_unsafe};
        const auto seed = stage_seed(cfg, stage.c_str());
        const TestPool pool = build_pool(held_out_labeled, comp, seed);
        const std::size_t target = is_fix ? cfg.fix_suite_size : cfg.reach_n_unsafe;
        const std::size_t reps = is_fix ? cfg.fix_reps : cfg.reach_reps;
        const SelectorFn selector = classifier_selector(*model);
        std::vector<StrategyBlock> blocks;
        if (is_fix) {
          blocks.push_back({Strategy::Baseline,
                            run_fix_repetitions(pool, Strategy::Baseline, {}, target,
                                                derive_seed(seed, 1), reps)});
          blocks.push_back({Strategy::MLSelector,
                            run_fix_repetitions(pool, Strategy::MLSelector, selector, target,
                                                derive_seed(seed, 2), reps)});
        } else {
          blocks.push_back({Strategy::Baseline,
                            run_reach_repetitions(pool, Strategy::Baseline, {}, target,
                                                  derive_seed(seed, 1), reps)});
          blocks.push_back({Strategy::MLSelector,
                            run_reach_repetitions(pool, Strategy::MLSelector, selector,
                                                  target, derive_seed(seed, 2), reps)});
        }
        emit(stage + "_report.json",
             selection_report_json(stage, pool_name(comp), target, blocks));
        emit(stage + "_report.csv", selection_report_csv(stage, pool_name(comp), blocks));
      } else if (stage == "realtime") {
        RealTimeConfig rt;
        rt.budget_s = cfg.realtime_budget_s;
        rt.generator = cfg.generator;
        rt.driver = cfg.driver;
        rt.model_kind = cfg.model_kind;
        rt.hyper = cfg.hyper;
        rt.costs = RealTimeCosts{cfg.cost_generation_s, cfg.cost_prediction_s,
                                 cfg.cost_retrain_coef};
        rt.bootstrap_size = cfg.realtime_bootstrap;
        const auto seed = stage_seed(cfg, "realtime");
        std::vector<RealTimeRun> runs;
        for (const auto& mode_name : cfg.realtime_modes) {
          rt.mode = realtime_mode_from(mode_name);
          SelectorFn selector;
          if (rt.mode == RealTimeMode::PreTrained) {
            need("realtime", model != nullptr, "the train stage for pretrained mode");
            selector = classifier_selector(*model);
          }
          runs.push_back(run_realtime(rt, selector, seed));
        }
        emit("realtime_report.json", realtime_report_json(runs));
        emit("realtime_report.csv", realtime_report_csv(runs));
      }
    } catch (const StageFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw StageFailure(stage, e.what());
    }
  }

  const std::string manifest_text = manifest.dump(2) + "\n";
  write_file(cfg.out_dir + "/manifest.json", manifest_text);
  result.manifest_path = "manifest.json";
  return result;
}

}  // namespace scissor
