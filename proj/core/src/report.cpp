#include "scissor/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "scissor/error.hpp"

namespace scissor {

namespace {

using nlohmann::json;

json rep_row(const SelectionRun& run, std::size_t rep) {
  return json{{"repetition", rep},
              {"drawn", run.drawn},
              {"executed", run.executed},
              {"skipped", run.skipped},
              {"executed_unsafe", run.executed_unsafe},
              {"executed_safe", run.executed_safe},
              {"suite_unsafe_ratio", run.suite_unsafe_ratio()},
              {"tp", run.tp},
              {"fp", run.fp},
              {"tn", run.tn},
              {"fn", run.fn},
              {"time_safe_s", run.time_safe_s},
              {"time_unsafe_s", run.time_unsafe_s},
              {"pool_exhausted", run.pool_exhausted}};
}

json summary_obj(const RepetitionSummary& s) {
  return json{{"mean_suite_unsafe_ratio", s.mean_suite_unsafe_ratio},
              {"std_suite_unsafe_ratio", s.std_suite_unsafe_ratio},
              {"mean_drawn", s.mean_drawn},
              {"std_drawn", s.std_drawn},
              {"mean_executed", s.mean_executed},
              {"std_executed", s.std_executed},
              {"mean_time_safe_s", s.mean_time_safe_s},
              {"mean_time_unsafe_s", s.mean_time_unsafe_s},
              {"cum_tp", s.cum_tp},
              {"cum_fp", s.cum_fp},
              {"cum_tn", s.cum_tn},
              {"cum_fn", s.cum_fn}};
}

const char* kSelectionCsvHeader =
    "experiment,strategy,pool,repetition,drawn,executed,skipped,executed_unsafe,"
    "executed_safe,suite_unsafe_ratio,tp,fp,tn,fn,time_safe_s,time_unsafe_s,"
    "pool_exhausted\n";

void selection_csv_rows(std::ostringstream& os, const std::string& experiment,
                        const std::string& pool, const StrategyBlock& block) {
  char buf[64];
  for (std::size_t r = 0; r < block.summary.runs.size(); ++r) {
    const auto& run = block.summary.runs[r];
    os << experiment << ',' << to_string(block.strategy) << ',' << pool << ',' << r << ','
       << run.drawn << ',' << run.executed << ',' << run.skipped << ','
       << run.executed_unsafe << ',' << run.executed_safe << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", run.suite_unsafe_ratio());
    os << buf << ',' << run.tp << ',' << run.fp << ',' << run.tn << ',' << run.fn << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", run.time_safe_s);
    os << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", run.time_unsafe_s);
    os << buf << ',' << (run.pool_exhausted ? 1 : 0) << '\n';
  }
  const auto& s = block.summary;
  char b1[64], b2[64], b3[64], b4[64];
  std::snprintf(b1, sizeof(b1), "%.17g", s.mean_suite_unsafe_ratio);
  std::snprintf(b2, sizeof(b2), "%.17g", s.mean_time_safe_s);
  std::snprintf(b3, sizeof(b3), "%.17g", s.mean_time_unsafe_s);
  std::snprintf(b4, sizeof(b4), "%.17g", s.mean_drawn);
  os << experiment << ',' << to_string(block.strategy) << ',' << pool << ",summary," << b4
     << ',' << s.mean_executed << ",,,," << b1 << ',' << s.cum_tp << ',' << s.cum_fp << ','
     << s.cum_tn << ',' << s.cum_fn << ',' << b2 << ',' << b3 << ",\n";
}

}  // namespace

std::string pool_name(const PoolComposition& comp) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "(%.2f/%.2f)", comp.safe_fraction, comp.unsafe_fraction);
  return buf;
}

std::string selection_report_json(const std::string& experiment,
                                  const std::string& pool_name_str, std::size_t target,
                                  const std::vector<StrategyBlock>& blocks) {
  json j;
  j["experiment"] = experiment;
  j["pool"] = pool_name_str;
  j["target"] = target;
  json strategies = json::array();
  for (const auto& block : blocks) {
    json rows = json::array();
    for (std::size_t r = 0; r < block.summary.runs.size(); ++r) {
      rows.push_back(rep_row(block.summary.runs[r], r));
    }
    strategies.push_back(json{{"strategy", to_string(block.strategy)},
                              {"summary", summary_obj(block.summary)},
                              {"repetitions", std::move(rows)}});
  }
  j["strategies"] = std::move(strategies);
  return j.dump(2) + "\n";
}

std::string selection_report_csv(const std::string& experiment,
                                 const std::string& pool_name_str,
                                 const std::vector<StrategyBlock>& blocks) {
  std::ostringstream os;
  os << kSelectionCsvHeader;
  for (const auto& block : blocks) selection_csv_rows(os, experiment, pool_name_str, block);
  return os.str();
}

std::string realtime_report_json(const std::vector<RealTimeRun>& runs) {
  json j;
  j["experiment"] = "realtime";
  json modes = json::array();
  for (const auto& run : runs) {
    modes.push_back(json{
        {"mode", to_string(run.mode)},
        {"budget_s", run.budget_s},
        {"ledger",
         json{{"generation_s", run.ledger.generation_s},
              {"prediction_s", run.ledger.prediction_s},
              {"execution_safe_s", run.ledger.execution_safe_s},
              {"execution_unsafe_s", run.ledger.execution_unsafe_s},
              {"retraining_s", run.ledger.retraining_s}}},
        {"counts", json{{"generated", run.counts.generated},
                        {"predicted", run.counts.predicted},
                        {"executed_safe", run.counts.executed_safe},
                        {"executed_unsafe", run.counts.executed_unsafe},
                        {"rejected", run.counts.rejected},
                        {"tp", run.counts.tp},
                        {"tn", run.counts.tn},
                        {"fp", run.counts.fp},
                        {"fn", run.counts.fn}}},
        {"retrain_events", run.retrain_events}});
  }
  j["modes"] = std::move(modes);
  return j.dump(2) + "\n";
}

std::string realtime_report_csv(const std::vector<RealTimeRun>& runs) {
  std::ostringstream os;
  os << "experiment,strategy,pool,repetition,generated,predicted,executed_safe,"
        "executed_unsafe,rejected,tp,tn,fp,fn,generation_s,prediction_s,"
        "execution_safe_s,execution_unsafe_s,retraining_s,retrain_events\n";
  char buf[64];
  for (const auto& run : runs) {
    os << "realtime," << to_string(run.mode) << ",,0," << run.counts.generated << ','
       << run.counts.predicted << ',' << run.counts.executed_safe << ','
       << run.counts.executed_unsafe << ',' << run.counts.rejected << ',' << run.counts.tp
       << ',' << run.counts.tn << ',' << run.counts.fp << ',' << run.counts.fn;
    for (double v : {run.ledger.generation_s, run.ledger.prediction_s,
                     run.ledger.execution_safe_s, run.ledger.execution_unsafe_s,
                     run.ledger.retraining_s}) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      os << ',' << buf;
    }
    os << ',' << run.retrain_events << '\n';
  }
  return os.str();
}

MergedReport merge_reports(const std::vector<std::string>& report_json_texts) {
  json merged;
  merged["sections"] = json::array();
  // (experiment, strategy, pool, repetition) -> row, for the flat CSV
  std::map<std::tuple<std::string, std::string, std::string, std::string>, json> rows;

  for (const auto& text : report_json_texts) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw SchemaMismatch(std::string("report is not valid JSON: ") + e.what());
    }
    if (!j.contains("experiment")) throw SchemaMismatch("report lacks an experiment field");
    const auto experiment = j["experiment"].get<std::string>();
    if (experiment == "fix" || experiment == "reach") {
      const auto pool = j.at("pool").get<std::string>();
      for (const auto& strat : j.at("strategies")) {
        const auto name = strat.at("strategy").get<std::string>();
        json section;
        section["experiment"] = experiment;
        section["pool"] = pool;
        section["strategy"] = name;
        section["summary"] = strat.at("summary");
        section["repetitions"] = strat.at("repetitions");
        merged["sections"].push_back(section);
        for (const auto& row : strat.at("repetitions")) {
          const auto rep = std::to_string(row.at("repetition").get<std::size_t>());
          rows[{experiment, name, pool, rep}] = row;
        }
        rows[{experiment, name, pool, "summary"}] = strat.at("summary");
      }
    } else if (experiment == "realtime") {
      for (const auto& mode : j.at("modes")) {
        const auto name = mode.at("mode").get<std::string>();
        json section;
        section["experiment"] = experiment;
        section["pool"] = "";
        section["strategy"] = name;
        section["summary"] = mode;
        section["repetitions"] = json::array();
        merged["sections"].push_back(section);
        json flat = mode.at("counts");
        for (auto& [k, v] : mode.at("ledger").items()) flat[k] = v;
        flat["retrain_events"] = mode.at("retrain_events");
        rows[{experiment, name, "", "0"}] = flat;
      }
    } else {
      throw SchemaMismatch("unknown experiment kind in report: " + experiment);
    }
  }

  // Flat CSV over the union of columns.
  std::vector<std::string> columns;
  for (const auto& [key, row] : rows) {
    for (const auto& [k, v] : row.items()) {
      if (k == "repetition") continue;
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) {
        columns.push_back(k);
      }
    }
  }
  std::sort(columns.begin(), columns.end());
  std::ostringstream csv;
  csv << "experiment,strategy,pool,repetition";
  for (const auto& c : columns) csv << ',' << c;
  csv << '\n';
  for (const auto& [key, row] : rows) {
    csv << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
        << std::get<3>(key);
    for (const auto& c : columns) {
      csv << ',';
      if (row.contains(c)) {
        const auto& v = row[c];
        if (v.is_boolean()) {
          csv << (v.get<bool>() ? 1 : 0);
        } else {
          csv << v.dump();
        }
      }
    }
    csv << '\n';
  }

  MergedReport out;
  out.json = merged.dump(2) + "\n";
  out.csv = csv.str();
  return out;
}

}  // namespace scissor
