#pragma once

#include <string>
#include <vector>

#include "scissor/realtime.hpp"
#include "scissor/selection.hpp"

namespace scissor {

// One strategy's repetition results inside an experiment report.
struct StrategyBlock {
  Strategy strategy = Strategy::Baseline;
  RepetitionSummary summary;
};

// FIX / REACH report emission. `experiment` is "fix" or "reach"; `pool_name`
// is the canonical "(safe/unsafe)" composition string.
std::string selection_report_json(const std::string& experiment,
                                  const std::string& pool_name, std::size_t target,
                                  const std::vector<StrategyBlock>& blocks);
std::string selection_report_csv(const std::string& experiment,
                                 const std::string& pool_name,
                                 const std::vector<StrategyBlock>& blocks);

std::string realtime_report_json(const std::vector<RealTimeRun>& runs);
std::string realtime_report_csv(const std::vector<RealTimeRun>& runs);

std::string pool_name(const PoolComposition& comp);

// Consolidates emitted report files into one table keyed by
// (experiment, strategy, pool, repetition). Values are copied, never
// recomputed. Throws SchemaMismatch when an input is not a known report.
struct MergedReport {
  std::string json;
  std::string csv;
};
MergedReport merge_reports(const std::vector<std::string>& report_json_texts);

}  // namespace scissor
