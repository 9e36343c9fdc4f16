#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "scissor/dataset.hpp"
#include "scissor/metrics.hpp"

namespace scissor {

enum class ClassifierKind { Logistic, DecisionTree, RandomForest, NaiveBayes };

const char* to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from(const std::string& name);

// Frozen training hyperparameters; the defaults are part of the contract so
// results reproduce across runs.
struct Hyperparams {
  // logistic
  double l2 = 1e-3;
  int max_iterations = 10000;
  double grad_tolerance = 1e-6;
  // decision tree
  int min_leaf = 5;
  // random forest
  int n_trees = 100;
};

struct Prediction {
  Label label = Label::Safe;
  double p_unsafe = 0.0;
};

// --- model parameter blocks -------------------------------------------------

struct LogisticModel {
  // Weights act on standardized active features; bias is unregularized.
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> feature_mean;
  std::vector<double> feature_scale;
  int iterations = 0;
  double final_loss = 0.0;
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double p_unsafe = 0.0;
  std::uint32_t rows = 0;
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct ForestModel {
  std::vector<TreeModel> trees;
  std::vector<std::uint64_t> bag_seeds;
};

struct BayesModel {
  double log_prior_safe = 0.0;
  double log_prior_unsafe = 0.0;
  // Per active feature: Gaussian per class for numerics, Bernoulli per class
  // for booleans.
  std::vector<double> mean_safe, var_safe, mean_unsafe, var_unsafe;
  std::vector<double> p_true_safe, p_true_unsafe;  // NaN for numeric features
};

// A trained model plus everything needed to apply it to raw rows: the
// training schema and the indices of features that survived the
// constant-column drop.
class Classifier {
 public:
  ClassifierKind kind = ClassifierKind::Logistic;
  FeatureSchema schema;
  std::vector<std::size_t> active_features;
  std::variant<LogisticModel, TreeModel, ForestModel, BayesModel> model;
  Hyperparams hyper;
  std::uint64_t seed = 0;
  std::string provenance;  // provenance tag of the training data

  Prediction predict_row(const std::vector<double>& values) const;
};

// Trains one model. Deterministic given seed. Constant feature columns are
// dropped with a warning; throws DegenerateData when every column is
// constant, SingleClass when a class is missing, TooFewRows below 2 rows.
Classifier train(ClassifierKind kind, const Dataset& train_data, const Hyperparams& hyper,
                 std::uint64_t seed);

// Applies the model to one row. Throws SchemaMismatch when the width differs
// from the training schema.
Prediction predict(const Classifier& c, const LabeledVector& row);

// Confusion over a test set. Throws SchemaMismatch when column names differ.
EvalReport evaluate(const Classifier& c, const Dataset& test_data);

// Cross-provenance evaluation: plain evaluate plus both provenance tags.
struct CrossEvalReport {
  std::string model_provenance;
  std::string data_provenance;
  EvalReport report;
};
CrossEvalReport cross_evaluate(const Classifier& c, const Dataset& foreign);

// K-fold cross-validation; every row serves as test data exactly once and
// fold metrics are macro-averaged.
struct KFoldReport {
  std::vector<EvalReport> folds;
  double mean_accuracy = 0.0;
  double mean_precision_unsafe = 0.0;
  double mean_recall_unsafe = 0.0;
  double mean_f1_unsafe = 0.0;
  double mean_precision_safe = 0.0;
  double mean_recall_safe = 0.0;
  double mean_f1_safe = 0.0;
};
KFoldReport kfold(ClassifierKind kind, const Dataset& d, std::size_t k,
                  const Hyperparams& hyper, std::uint64_t seed);

// JSON round-trip (schema_version field included).
std::string classifier_to_json(const Classifier& c);
Classifier classifier_from_json(const std::string& json_text);

// --- training internals, exposed for oracle-style verification --------------

// Logistic loss (mean cross-entropy + 0.5*l2*|w|^2) and its gradient at the
// given parameters over standardized features; used by training and by the
// finite-difference gradient check.
double logistic_loss(const std::vector<std::vector<double>>& x,
                     const std::vector<int>& y, const std::vector<double>& weights,
                     double bias, double l2);
void logistic_gradient(const std::vector<std::vector<double>>& x,
                       const std::vector<int>& y, const std::vector<double>& weights,
                       double bias, double l2, std::vector<double>& grad_w,
                       double& grad_b);

LogisticModel train_logistic(const std::vector<std::vector<double>>& rows,
                             const std::vector<int>& labels, const Hyperparams& hyper,
                             std::vector<double>* loss_trace = nullptr);

// Binary entropy of a two-class count split, in bits.
double entropy(std::size_t n_safe, std::size_t n_unsafe);

// Best threshold for one feature: candidates are midpoints of consecutive
// distinct sorted values; child-size floor via min_leaf.
struct SplitSearch {
  bool valid = false;
  double threshold = 0.0;
  double info_gain = 0.0;
  double gain_ratio = 0.0;
};
SplitSearch best_split_for_feature(const std::vector<double>& values,
                                   const std::vector<int>& labels, std::size_t min_leaf);

TreeModel train_tree(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels, const Hyperparams& hyper);

}  // namespace scissor
