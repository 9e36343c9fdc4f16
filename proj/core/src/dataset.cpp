#include "scissor/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "scissor/error.hpp"
#include "scissor/rng.hpp"

namespace scissor {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

bool same_columns(const FeatureSchema& a, const FeatureSchema& b) {
  return a.names == b.names;
}

std::size_t Dataset::count(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(),
                    [label](const LabeledVector& r) { return r.label == label; }));
}

Dataset oversample(const Dataset& d, std::uint64_t seed) {
  const std::size_t n_safe = d.count(Label::Safe);
  const std::size_t n_unsafe = d.count(Label::Unsafe);
  if (n_safe == 0 || n_unsafe == 0) {
    throw SingleClass("oversample needs both classes present");
  }
  Dataset out = d;
  if (n_safe == n_unsafe) return out;

  const Label minority = n_safe < n_unsafe ? Label::Safe : Label::Unsafe;
  std::vector<std::size_t> minority_rows;
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    if (d.rows[i].label == minority) minority_rows.push_back(i);
  }
  const std::size_t deficit =
      (n_safe > n_unsafe ? n_safe - n_unsafe : n_unsafe - n_safe);
  Rng rng(derive_seed(seed, 0xa5));
  for (std::size_t i = 0; i < deficit; ++i) {
    out.rows.push_back(d.rows[minority_rows[rng.below(minority_rows.size())]]);
  }
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& d, double train_fraction,
                                  std::uint64_t seed) {
  if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
    throw DomainError("train_fraction must be in (0, 1)");
  }
  std::vector<std::size_t> order(d.rows.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, 0x51));
  rng.shuffle(order);

  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(d.rows.size())));
  Dataset train{d.schema, {}, d.provenance};
  Dataset test{d.schema, {}, d.provenance};
  train.rows.reserve(n_train);
  test.rows.reserve(d.rows.size() - n_train);
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_train ? train : test).rows.push_back(d.rows[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k,
                                                    std::uint64_t seed) {
  if (k < 2) throw DomainError("k-fold needs k >= 2");
  if (n < k) throw TooFewRows("fewer rows than folds");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, 0xf0));
  rng.shuffle(order);

  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t i = 0; i < n; ++i) folds[i % k].push_back(order[i]);
  return folds;
}

std::string dataset_to_csv(const Dataset& d) {
  std::ostringstream os;
  for (const auto& name : d.schema.names) os << name << ',';
  os << "label,test_id,segment_index\n";
  for (const auto& row : d.rows) {
    for (double v : row.values) os << format_double(v) << ',';
    os << to_string(row.label) << ',' << row.test_id << ',' << row.segment_index
       << '\n';
  }
  return os.str();
}

Dataset dataset_from_csv(const std::string& text, const std::string& provenance) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty CSV");
  auto header = split_line(line, ',');
  if (header.size() < 4 || header[header.size() - 3] != "label" ||
      header[header.size() - 2] != "test_id" ||
      header[header.size() - 1] != "segment_index") {
    throw Error("CSV header must end with label,test_id,segment_index");
  }
  const std::size_t n_features = header.size() - 3;

  Dataset d;
  d.provenance = provenance;
  d.schema.names.assign(header.begin(), header.begin() + static_cast<long>(n_features));
  std::vector<bool> binary(n_features, true);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_line(line, ',');
    if (cells.size() != header.size()) throw Error("CSV row width mismatch");
    LabeledVector row;
    row.values.reserve(n_features);
    for (std::size_t i = 0; i < n_features; ++i) {
      const double v = std::strtod(cells[i].c_str(), nullptr);
      if (v != 0.0 && v != 1.0) binary[i] = false;
      row.values.push_back(v);
    }
    const std::string& label = cells[n_features];
    if (label == "safe") {
      row.label = Label::Safe;
    } else if (label == "unsafe") {
      row.label = Label::Unsafe;
    } else {
      throw Error("unknown label in CSV: " + label);
    }
    row.test_id = cells[n_features + 1];
    row.segment_index = std::strtoll(cells[n_features + 2].c_str(), nullptr, 10);
    d.rows.push_back(std::move(row));
  }
  d.schema.kinds.resize(n_features);
  for (std::size_t i = 0; i < n_features; ++i) {
    d.schema.kinds[i] = binary[i] ? FeatureKind::Boolean : FeatureKind::Numeric;
  }
  return d;
}

std::string dataset_to_jsonl(const Dataset& d) {
  std::ostringstream os;
  json schema;
  schema["columns"] = d.schema.names;
  json kinds = json::array();
  for (auto k : d.schema.kinds) kinds.push_back(k == FeatureKind::Boolean ? "bool" : "num");
  schema["kinds"] = std::move(kinds);
  schema["provenance"] = d.provenance;
  os << schema.dump() << '\n';
  for (const auto& row : d.rows) {
    json j;
    j["v"] = row.values;
    j["label"] = to_string(row.label);
    j["test_id"] = row.test_id;
    j["segment_index"] = row.segment_index;
    os << j.dump() << '\n';
  }
  return os.str();
}

Dataset dataset_from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty JSONL dataset");
  json schema = json::parse(line);
  Dataset d;
  d.schema.names = schema.at("columns").get<std::vector<std::string>>();
  for (const auto& k : schema.at("kinds")) {
    d.schema.kinds.push_back(k.get<std::string>() == "bool" ? FeatureKind::Boolean
                                                            : FeatureKind::Numeric);
  }
  d.provenance = schema.at("provenance").get<std::string>();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    LabeledVector row;
    row.values = j.at("v").get<std::vector<double>>();
    if (row.values.size() != d.schema.size()) throw Error("JSONL row width mismatch");
    row.label = j.at("label").get<std::string>() == "unsafe" ? Label::Unsafe : Label::Safe;
    row.test_id = j.at("test_id").get<std::string>();
    row.segment_index = j.at("segment_index").get<std::int64_t>();
    d.rows.push_back(std::move(row));
  }
  return d;
}

}  // namespace scissor
