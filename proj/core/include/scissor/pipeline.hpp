#pragma once

#include <string>
#include <vector>

#include "scissor/classifier.hpp"
#include "scissor/generator.hpp"
#include "scissor/simulator.hpp"

namespace scissor {

// Strictly validated pipeline configuration; unknown keys anywhere are
// rejected. Stages run in dependency order: generate -> label -> extract /
// train -> rank / fix / reach / realtime.
//
// All stage randomness derives from the master seed through named
// sub-streams, so individual stages rerun consistently.
struct PipelineConfig;

// Parses and validates the JSON text. Throws ConfigInvalid on unknown keys,
// missing required keys, or out-of-domain values.
PipelineConfig parse_pipeline_config(const std::string& json_text);

struct PipelineResult {
  std::string out_dir;
  std::vector<std::string> artifacts;  // relative paths, in creation order
  std::string manifest_path;           // relative
};

// Runs the configured stages, writes artifacts plus manifest.json into the
// output directory, and returns what was written. Throws StageFailure with
// the stage name on any stage error.
PipelineResult run_pipeline(const std::string& config_json_text,
                            const std::string& out_dir_override = "");

struct PipelineConfig {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string timestamp;  // empty: stamped with the current UTC time
  std::vector<std::string> stages;

  // generate
  GeneratorConfig generator;
  std::size_t generate_count = 500;

  // label
  DriverConfig driver;
  std::string driver_profile = "default";  // or "planner"

  // extract
  std::string extract_set = "full";  // full | segment | both
  bool signed_angles = false;
  std::string extract_format = "csv";  // csv | jsonl

  // train
  ClassifierKind model_kind = ClassifierKind::Logistic;
  double train_fraction = 0.8;
  bool oversample_training = true;
  Hyperparams hyper;

  // rank
  std::string rank_method = "both";  // infogain | correlation | both
  // Optional feature file (.csv/.jsonl); lets a rank-only pipeline score a
  // prebuilt dataset instead of the label stage's output.
  std::string rank_features_file;

  // fix / reach
  double fix_pool_safe = 0.95;
  double fix_pool_unsafe = 0.05;
  std::size_t fix_suite_size = 30;
  std::size_t fix_reps = 30;
  double reach_pool_safe = 0.95;
  double reach_pool_unsafe = 0.05;
  std::size_t reach_n_unsafe = 10;
  std::size_t reach_reps = 30;

  // realtime
  std::vector<std::string> realtime_modes = {"baseline", "pretrained", "adaptive"};
  double realtime_budget_s = 3600.0;
  std::size_t realtime_bootstrap = 60;
  double cost_generation_s = 0.5;
  double cost_prediction_s = 0.01;
  double cost_retrain_coef = 0.2;
};

}  // namespace scissor
