#include <cmath>
#include <cstddef>

#include "scissor/classifier.hpp"

namespace scissor {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

double logistic_loss(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                     const std::vector<double>& weights, double bias, double l2) {
  const auto n = static_cast<double>(x.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = bias;
    for (std::size_t j = 0; j < weights.size(); ++j) z += weights[j] * x[i][j];
    // Numerically stable cross-entropy: log(1 + e^-|z|) + max(z,0) - y*z.
    loss += std::log1p(std::exp(-std::abs(z))) + std::max(z, 0.0) - y[i] * z;
  }
  loss /= n;
  double reg = 0.0;
  for (double w : weights) reg += w * w;
  return loss + 0.5 * l2 * reg;
}

void logistic_gradient(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                       const std::vector<double>& weights, double bias,
                       double l2, std::vector<double>& grad_w, double& grad_b) {
  const auto n = static_cast<double>(x.size());
  grad_w.assign(weights.size(), 0.0);
  grad_b = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = bias;
    for (std::size_t j = 0; j < weights.size(); ++j) z += weights[j] * x[i][j];
    const double err = sigmoid(z) - y[i];
    for (std::size_t j = 0; j < weights.size(); ++j) grad_w[j] += err * x[i][j];
    grad_b += err;
  }
  for (std::size_t j = 0; j < weights.size(); ++j) {
    grad_w[j] = grad_w[j] / n + l2 * weights[j];
  }
  grad_b /= n;
}

LogisticModel train_logistic(const std::vector<std::vector<double>>& rows,
                             const std::vector<int>& labels, const Hyperparams& hyper,
                             std::vector<double>* loss_trace) {
  const std::size_t n = rows.size();
  const std::size_t p = rows.empty() ? 0 : rows[0].size();

  LogisticModel m;
  m.feature_mean.assign(p, 0.0);
  m.feature_scale.assign(p, 1.0);
  for (std::size_t j = 0; j < p; ++j) {
    double sum = 0.0;
    for (const auto& r : rows) sum += r[j];
    m.feature_mean[j] = sum / static_cast<double>(n);
    double sq = 0.0;
    for (const auto& r : rows) {
      const double d = r[j] - m.feature_mean[j];
      sq += d * d;
    }
    const double sd = std::sqrt(sq / static_cast<double>(n));
    m.feature_scale[j] = sd > 0.0 ? sd : 1.0;
  }

  std::vector<std::vector<double>> x(n, std::vector<double>(p));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      x[i][j] = (rows[i][j] - m.feature_mean[j]) / m.feature_scale[j];
    }
  }

  // Fixed step 1/L with L an upper bound on the loss Hessian norm for
  // standardized columns ((p+1)/4 from the trace, plus the ridge term);
  // guarantees a monotone loss without a line search.
  const double lipschitz = (static_cast<double>(p) + 1.0) / 4.0 + hyper.l2;
  const double step = 1.0 / lipschitz;

  m.weights.assign(p, 0.0);
  m.bias = 0.0;
  std::vector<double> grad_w(p, 0.0);
  double grad_b = 0.0;
  if (loss_trace) loss_trace->push_back(logistic_loss(x, labels, m.weights, m.bias, hyper.l2));
  int iter = 0;
  for (; iter < hyper.max_iterations; ++iter) {
    logistic_gradient(x, labels, m.weights, m.bias, hyper.l2, grad_w, grad_b);
    double inf_norm = std::abs(grad_b);
    for (double g : grad_w) inf_norm = std::max(inf_norm, std::abs(g));
    if (inf_norm < hyper.grad_tolerance) break;
    for (std::size_t j = 0; j < p; ++j) m.weights[j] -= step * grad_w[j];
    m.bias -= step * grad_b;
    if (loss_trace) {
      loss_trace->push_back(logistic_loss(x, labels, m.weights, m.bias, hyper.l2));
    }
  }
  m.iterations = iter;
  m.final_loss = logistic_loss(x, labels, m.weights, m.bias, hyper.l2);
  return m;
}

}  // namespace scissor
