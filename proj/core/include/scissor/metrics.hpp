#pragma once

#include <cstddef>

namespace scissor {

// Confusion counts and derived metrics with Unsafe as the positive class.
// Precision/recall/F1 are reported per class; a metric whose denominator is
// zero is reported as zero.
struct EvalReport {
  std::size_t tp = 0;  // unsafe predicted unsafe
  std::size_t fp = 0;  // safe predicted unsafe
  std::size_t tn = 0;  // safe predicted safe
  std::size_t fn = 0;  // unsafe predicted safe

  double accuracy = 0.0;
  double precision_unsafe = 0.0;
  double recall_unsafe = 0.0;
  double f1_unsafe = 0.0;
  double precision_safe = 0.0;
  double recall_safe = 0.0;
  double f1_safe = 0.0;

  std::size_t total() const { return tp + fp + tn + fn; }
};

EvalReport report_from_counts(std::size_t tp, std::size_t fp, std::size_t tn,
                              std::size_t fn);

}  // namespace scissor
