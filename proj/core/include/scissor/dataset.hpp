#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scissor/road.hpp"

namespace scissor {

enum class FeatureKind { Numeric, Boolean };

struct FeatureSchema {
  std::vector<std::string> names;
  std::vector<FeatureKind> kinds;

  bool operator==(const FeatureSchema& other) const = default;
  std::size_t size() const { return names.size(); }
};

// Returns true when the column names line up; kinds are allowed to differ
// (they only matter at training time).
bool same_columns(const FeatureSchema& a, const FeatureSchema& b);

// One feature row. Booleans are encoded 0/1. segment_index is -1 for
// full-road rows.
struct LabeledVector {
  std::vector<double> values;
  Label label = Label::Safe;
  std::string test_id;
  std::int64_t segment_index = -1;
};

struct Dataset {
  FeatureSchema schema;
  std::vector<LabeledVector> rows;
  std::string provenance;  // which driver configuration produced the labels

  std::size_t count(Label label) const;
  bool has_both_classes() const {
    return count(Label::Safe) > 0 && count(Label::Unsafe) > 0;
  }
};

// Random oversampling: duplicates uniformly drawn minority rows until the
// class counts match. Every original row is retained and every added row is
// an exact copy of an input row. Throws SingleClass when a class is absent.
Dataset oversample(const Dataset& d, std::uint64_t seed);

// Seeded shuffle split into (train, test); disjoint and exhaustive. The
// train side gets round(n * train_fraction) rows.
std::pair<Dataset, Dataset> split(const Dataset& d, double train_fraction,
                                  std::uint64_t seed);

// Deterministic K-fold partition of [0, n): every index lands in exactly one
// fold, fold sizes differ by at most one. Throws TooFewRows when n < k.
std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k,
                                                    std::uint64_t seed);

// CSV with a header row: feature columns, then label,test_id,segment_index.
// Numbers render with 17 significant digits so values round-trip exactly.
std::string dataset_to_csv(const Dataset& d);

// Parses a CSV produced by dataset_to_csv. Feature kinds are inferred:
// a column whose values are all 0 or 1 is boolean.
Dataset dataset_from_csv(const std::string& text, const std::string& provenance = "");

// JSON-lines alternative; first line holds the schema and provenance.
std::string dataset_to_jsonl(const Dataset& d);
Dataset dataset_from_jsonl(const std::string& text);

}  // namespace scissor
