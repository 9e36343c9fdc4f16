#include <cmath>
#include <limits>

#include "scissor/classifier.hpp"

namespace scissor::bayes_detail {

// Gaussian likelihoods for numeric features (population variance with a
// 1e-9 floor), Laplace-1 Bernoulli for booleans, Laplace-1 class priors.
BayesModel train_bayes(const std::vector<std::vector<double>>& rows,
                       const std::vector<int>& labels,
                       const std::vector<FeatureKind>& kinds) {
  const std::size_t p = rows.empty() ? 0 : rows[0].size();
  const std::size_t n = rows.size();
  std::size_t n_unsafe = 0;
  for (int y : labels) n_unsafe += static_cast<std::size_t>(y);
  const std::size_t n_safe = n - n_unsafe;

  BayesModel m;
  m.log_prior_safe = std::log((static_cast<double>(n_safe) + 1.0) /
                              (static_cast<double>(n) + 2.0));
  m.log_prior_unsafe = std::log((static_cast<double>(n_unsafe) + 1.0) /
                                (static_cast<double>(n) + 2.0));
  m.mean_safe.assign(p, 0.0);
  m.var_safe.assign(p, 0.0);
  m.mean_unsafe.assign(p, 0.0);
  m.var_unsafe.assign(p, 0.0);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  m.p_true_safe.assign(p, nan);
  m.p_true_unsafe.assign(p, nan);

  constexpr double kVarFloor = 1e-9;
  for (std::size_t j = 0; j < p; ++j) {
    if (kinds[j] == FeatureKind::Boolean) {
      double true_safe = 0.0, true_unsafe = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (rows[i][j] != 0.0) (labels[i] ? true_unsafe : true_safe) += 1.0;
      }
      m.p_true_safe[j] = (true_safe + 1.0) / (static_cast<double>(n_safe) + 2.0);
      m.p_true_unsafe[j] = (true_unsafe + 1.0) / (static_cast<double>(n_unsafe) + 2.0);
      continue;
    }
    double sum_s = 0.0, sum_u = 0.0;
    for (std::size_t i = 0; i < n; ++i) (labels[i] ? sum_u : sum_s) += rows[i][j];
    m.mean_safe[j] = n_safe ? sum_s / static_cast<double>(n_safe) : 0.0;
    m.mean_unsafe[j] = n_unsafe ? sum_u / static_cast<double>(n_unsafe) : 0.0;
    double sq_s = 0.0, sq_u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = rows[i][j] - (labels[i] ? m.mean_unsafe[j] : m.mean_safe[j]);
      (labels[i] ? sq_u : sq_s) += d * d;
    }
    m.var_safe[j] = std::max(kVarFloor, n_safe ? sq_s / static_cast<double>(n_safe) : kVarFloor);
    m.var_unsafe[j] =
        std::max(kVarFloor, n_unsafe ? sq_u / static_cast<double>(n_unsafe) : kVarFloor);
  }
  return m;
}

double bayes_p_unsafe(const BayesModel& m, const std::vector<FeatureKind>& kinds,
                      const std::vector<double>& values) {
  double log_safe = m.log_prior_safe;
  double log_unsafe = m.log_prior_unsafe;
  constexpr double kLog2Pi = 1.8378770664093453;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (kinds[j] == FeatureKind::Boolean) {
      const bool t = values[j] != 0.0;
      log_safe += std::log(t ? m.p_true_safe[j] : 1.0 - m.p_true_safe[j]);
      log_unsafe += std::log(t ? m.p_true_unsafe[j] : 1.0 - m.p_true_unsafe[j]);
    } else {
      const double ds = values[j] - m.mean_safe[j];
      const double du = values[j] - m.mean_unsafe[j];
      log_safe += -0.5 * (kLog2Pi + std::log(m.var_safe[j]) + ds * ds / m.var_safe[j]);
      log_unsafe +=
          -0.5 * (kLog2Pi + std::log(m.var_unsafe[j]) + du * du / m.var_unsafe[j]);
    }
  }
  // p(unsafe | x) = 1 / (1 + exp(log_safe - log_unsafe))
  const double d = log_safe - log_unsafe;
  if (d > 700.0) return 0.0;
  if (d < -700.0) return 1.0;
  return 1.0 / (1.0 + std::exp(d));
}

}  // namespace scissor::bayes_detail
