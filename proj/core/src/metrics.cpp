#include "scissor/metrics.hpp"

namespace scissor {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

}  // namespace

EvalReport report_from_counts(std::size_t tp, std::size_t fp, std::size_t tn,
                              std::size_t fn) {
  EvalReport r;
  r.tp = tp;
  r.fp = fp;
  r.tn = tn;
  r.fn = fn;
  r.accuracy = ratio(tp + tn, tp + tn + fp + fn);
  r.precision_unsafe = ratio(tp, tp + fp);
  r.recall_unsafe = ratio(tp, tp + fn);
  r.f1_unsafe = harmonic(r.precision_unsafe, r.recall_unsafe);
  r.precision_safe = ratio(tn, tn + fn);
  r.recall_safe = ratio(tn, tn + fp);
  r.f1_safe = harmonic(r.precision_safe, r.recall_safe);
  return r;
}

}  // namespace scissor
