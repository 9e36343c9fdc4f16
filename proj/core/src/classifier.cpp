#include "scissor/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bayes_internal.hpp"
#include "forest_internal.hpp"
#include "json.hpp"
#include "scissor/error.hpp"
#include "scissor/log.hpp"
#include "scissor/rng.hpp"
#include "tree_internal.hpp"

namespace scissor {

namespace {

using nlohmann::json;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<FeatureKind> active_kinds(const Classifier& c) {
  std::vector<FeatureKind> kinds;
  kinds.reserve(c.active_features.size());
  for (auto j : c.active_features) kinds.push_back(c.schema.kinds[j]);
  return kinds;
}

json tree_to_json(const TreeModel& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    nodes.push_back(json{{"f", n.feature},
                         {"t", n.threshold},
                         {"l", n.left},
                         {"r", n.right},
                         {"p", n.p_unsafe},
                         {"n", n.rows}});
  }
  return json{{"nodes", std::move(nodes)}};
}

TreeModel tree_from_json(const json& j) {
  TreeModel tree;
  for (const auto& n : j.at("nodes")) {
    TreeNode node;
    node.feature = n.at("f").get<std::int32_t>();
    node.threshold = n.at("t").get<double>();
    node.left = n.at("l").get<std::int32_t>();
    node.right = n.at("r").get<std::int32_t>();
    node.p_unsafe = n.at("p").get<double>();
    node.rows = n.at("n").get<std::uint32_t>();
    tree.nodes.push_back(node);
  }
  return tree;
}

}  // namespace

const char* to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::Logistic: return "logistic";
    case ClassifierKind::DecisionTree: return "decision_tree";
    case ClassifierKind::RandomForest: return "random_forest";
    case ClassifierKind::NaiveBayes: return "naive_bayes";
  }
  return "?";
}

ClassifierKind classifier_kind_from(const std::string& name) {
  if (name == "logistic") return ClassifierKind::Logistic;
  if (name == "decision_tree") return ClassifierKind::DecisionTree;
  if (name == "random_forest") return ClassifierKind::RandomForest;
  if (name == "naive_bayes") return ClassifierKind::NaiveBayes;
  throw Error("unknown classifier kind: " + name);
}

Classifier train(ClassifierKind kind, const Dataset& train_data, const Hyperparams& hyper,
                 std::uint64_t seed) {
  if (train_data.rows.size() < 2) throw TooFewRows("training needs at least 2 rows");
  if (!train_data.has_both_classes()) {
    throw SingleClass("training needs both classes present");
  }

  const std::size_t p = train_data.schema.size();
  Classifier c;
  c.kind = kind;
  c.schema = train_data.schema;
  c.hyper = hyper;
  c.seed = seed;
  c.provenance = train_data.provenance;

  for (std::size_t j = 0; j < p; ++j) {
    const double first = train_data.rows.front().values[j];
    bool constant = true;
    for (const auto& row : train_data.rows) {
      if (row.values[j] != first) {
        constant = false;
        break;
      }
    }
    if (constant) {
      log_warn("dropping constant feature '", train_data.schema.names[j], "'");
    } else {
      c.active_features.push_back(j);
    }
  }
  if (c.active_features.empty()) {
    throw DegenerateData("every feature column is constant");
  }

  std::vector<std::vector<double>> rows(train_data.rows.size());
  std::vector<int> labels(train_data.rows.size());
  for (std::size_t i = 0; i < train_data.rows.size(); ++i) {
    rows[i].reserve(c.active_features.size());
    for (auto j : c.active_features) rows[i].push_back(train_data.rows[i].values[j]);
    labels[i] = train_data.rows[i].label == Label::Unsafe ? 1 : 0;
  }

  switch (kind) {
    case ClassifierKind::Logistic:
      c.model = train_logistic(rows, labels, hyper);
      break;
    case ClassifierKind::DecisionTree:
      c.model = train_tree(rows, labels, hyper);
      break;
    case ClassifierKind::RandomForest:
      c.model = forest_detail::train_forest(rows, labels, hyper, seed);
      break;
    case ClassifierKind::NaiveBayes:
      c.model = bayes_detail::train_bayes(rows, labels, active_kinds(c));
      break;
  }
  return c;
}

Prediction Classifier::predict_row(const std::vector<double>& values) const {
  if (values.size() != schema.size()) {
    throw SchemaMismatch("row width does not match the training schema");
  }
  std::vector<double> x;
  x.reserve(active_features.size());
  for (auto j : active_features) x.push_back(values[j]);

  double p = 0.0;
  if (const auto* lm = std::get_if<LogisticModel>(&model)) {
    double z = lm->bias;
    for (std::size_t j = 0; j < x.size(); ++j) {
      z += lm->weights[j] * (x[j] - lm->feature_mean[j]) / lm->feature_scale[j];
    }
    p = sigmoid(z);
  } else if (const auto* tm = std::get_if<TreeModel>(&model)) {
    p = tree_detail::tree_p_unsafe(*tm, x);
  } else if (const auto* fm = std::get_if<ForestModel>(&model)) {
    p = forest_detail::forest_p_unsafe(*fm, x);
  } else if (const auto* bm = std::get_if<BayesModel>(&model)) {
    std::vector<FeatureKind> kinds;
    kinds.reserve(active_features.size());
    for (auto j : active_features) kinds.push_back(schema.kinds[j]);
    p = bayes_detail::bayes_p_unsafe(*bm, kinds, x);
  }
  // Ties classify unsafe: a false alarm costs execution time, a miss hides
  // a fault.
  return Prediction{p >= 0.5 ? Label::Unsafe : Label::Safe, p};
}

Prediction predict(const Classifier& c, const LabeledVector& row) {
  return c.predict_row(row.values);
}

EvalReport evaluate(const Classifier& c, const Dataset& test_data) {
  if (!same_columns(c.schema, test_data.schema)) {
    throw SchemaMismatch("evaluation data columns differ from model schema");
  }
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (const auto& row : test_data.rows) {
    const Prediction pred = c.predict_row(row.values);
    if (row.label == Label::Unsafe) {
      (pred.label == Label::Unsafe ? tp : fn) += 1;
    } else {
      (pred.label == Label::Unsafe ? fp : tn) += 1;
    }
  }
  return report_from_counts(tp, fp, tn, fn);
}

CrossEvalReport cross_evaluate(const Classifier& c, const Dataset& foreign) {
  return CrossEvalReport{c.provenance, foreign.provenance, evaluate(c, foreign)};
}

KFoldReport kfold(ClassifierKind kind, const Dataset& d, std::size_t k,
                  const Hyperparams& hyper, std::uint64_t seed) {
  const auto folds = kfold_indices(d.rows.size(), k, seed);
  KFoldReport report;
  report.folds.reserve(k);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<bool> in_test(d.rows.size(), false);
    for (auto i : folds[f]) in_test[i] = true;
    Dataset train_part{d.schema, {}, d.provenance};
    Dataset test_part{d.schema, {}, d.provenance};
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
      (in_test[i] ? test_part : train_part).rows.push_back(d.rows[i]);
    }
    const Classifier c = train(kind, train_part, hyper, derive_seed(seed, f));
    report.folds.push_back(evaluate(c, test_part));
  }
  const auto n = static_cast<double>(report.folds.size());
  for (const auto& r : report.folds) {
    report.mean_accuracy += r.accuracy / n;
    report.mean_precision_unsafe += r.precision_unsafe / n;
    report.mean_recall_unsafe += r.recall_unsafe / n;
    report.mean_f1_unsafe += r.f1_unsafe / n;
    report.mean_precision_safe += r.precision_safe / n;
    report.mean_recall_safe += r.recall_safe / n;
    report.mean_f1_safe += r.f1_safe / n;
  }
  return report;
}

std::string classifier_to_json(const Classifier& c) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = to_string(c.kind);
  j["feature_names"] = c.schema.names;
  json kinds = json::array();
  for (auto kf : c.schema.kinds) kinds.push_back(kf == FeatureKind::Boolean ? "bool" : "num");
  j["feature_kinds"] = std::move(kinds);
  j["active_features"] = c.active_features;
  j["hyper"] = json{{"l2", c.hyper.l2},
                    {"max_iterations", c.hyper.max_iterations},
                    {"grad_tolerance", c.hyper.grad_tolerance},
                    {"min_leaf", c.hyper.min_leaf},
                    {"n_trees", c.hyper.n_trees}};
  j["seed"] = c.seed;
  j["provenance"] = c.provenance;

  if (const auto* lm = std::get_if<LogisticModel>(&c.model)) {
    j["model"] = json{{"weights", lm->weights},
                      {"bias", lm->bias},
                      {"feature_mean", lm->feature_mean},
                      {"feature_scale", lm->feature_scale},
                      {"iterations", lm->iterations},
                      {"final_loss", lm->final_loss}};
  } else if (const auto* tm = std::get_if<TreeModel>(&c.model)) {
    j["model"] = tree_to_json(*tm);
  } else if (const auto* fm = std::get_if<ForestModel>(&c.model)) {
    json trees = json::array();
    for (const auto& t : fm->trees) trees.push_back(tree_to_json(t));
    j["model"] = json{{"trees", std::move(trees)}, {"bag_seeds", fm->bag_seeds}};
  } else if (const auto* bm = std::get_if<BayesModel>(&c.model)) {
    auto clean = [](const std::vector<double>& v) {
      // NaN is not valid JSON; boolean slots use null instead.
      json arr = json::array();
      for (double d : v) {
        if (std::isnan(d)) {
          arr.push_back(nullptr);
        } else {
          arr.push_back(d);
        }
      }
      return arr;
    };
    j["model"] = json{{"log_prior_safe", bm->log_prior_safe},
                      {"log_prior_unsafe", bm->log_prior_unsafe},
                      {"mean_safe", bm->mean_safe},
                      {"var_safe", bm->var_safe},
                      {"mean_unsafe", bm->mean_unsafe},
                      {"var_unsafe", bm->var_unsafe},
                      {"p_true_safe", clean(bm->p_true_safe)},
                      {"p_true_unsafe", clean(bm->p_true_unsafe)}};
  }
  return j.dump(2) + "\n";
}

Classifier classifier_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  if (j.at("schema_version").get<int>() != 1) {
    throw Error("unsupported model schema_version");
  }
  Classifier c;
  c.kind = classifier_kind_from(j.at("kind").get<std::string>());
  c.schema.names = j.at("feature_names").get<std::vector<std::string>>();
  for (const auto& k : j.at("feature_kinds")) {
    c.schema.kinds.push_back(k.get<std::string>() == "bool" ? FeatureKind::Boolean
                                                            : FeatureKind::Numeric);
  }
  c.active_features = j.at("active_features").get<std::vector<std::size_t>>();
  const auto& h = j.at("hyper");
  c.hyper.l2 = h.at("l2").get<double>();
  c.hyper.max_iterations = h.at("max_iterations").get<int>();
  c.hyper.grad_tolerance = h.at("grad_tolerance").get<double>();
  c.hyper.min_leaf = h.at("min_leaf").get<int>();
  c.hyper.n_trees = h.at("n_trees").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.provenance = j.at("provenance").get<std::string>();

  const auto& m = j.at("model");
  switch (c.kind) {
    case ClassifierKind::Logistic: {
      LogisticModel lm;
      lm.weights = m.at("weights").get<std::vector<double>>();
      lm.bias = m.at("bias").get<double>();
      lm.feature_mean = m.at("feature_mean").get<std::vector<double>>();
      lm.feature_scale = m.at("feature_scale").get<std::vector<double>>();
      lm.iterations = m.at("iterations").get<int>();
      lm.final_loss = m.at("final_loss").get<double>();
      c.model = std::move(lm);
      break;
    }
    case ClassifierKind::DecisionTree:
      c.model = tree_from_json(m);
      break;
    case ClassifierKind::RandomForest: {
      ForestModel fm;
      for (const auto& t : m.at("trees")) fm.trees.push_back(tree_from_json(t));
      fm.bag_seeds = m.at("bag_seeds").get<std::vector<std::uint64_t>>();
      c.model = std::move(fm);
      break;
    }
    case ClassifierKind::NaiveBayes: {
      BayesModel bm;
      bm.log_prior_safe = m.at("log_prior_safe").get<double>();
      bm.log_prior_unsafe = m.at("log_prior_unsafe").get<double>();
      bm.mean_safe = m.at("mean_safe").get<std::vector<double>>();
      bm.var_safe = m.at("var_safe").get<std::vector<double>>();
      bm.mean_unsafe = m.at("mean_unsafe").get<std::vector<double>>();
      bm.var_unsafe = m.at("var_unsafe").get<std::vector<double>>();
      auto undo = [](const json& arr) {
        std::vector<double> v;
        for (const auto& x : arr) {
          v.push_back(x.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                  : x.get<double>());
        }
        return v;
      };
      bm.p_true_safe = undo(m.at("p_true_safe"));
      bm.p_true_unsafe = undo(m.at("p_true_unsafe"));
      c.model = std::move(bm);
      break;
    }
  }
  return c;
}

}  // namespace scissor
