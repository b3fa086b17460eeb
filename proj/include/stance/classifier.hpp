#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stance/corpus.hpp"
#include "stance/features.hpp"
#include "stance/sparse.hpp"

namespace stance {

struct TrainConfig {
  double C = 1.0;
  int max_epochs = 1000;
  // Stop once the projected-gradient spread over active variables is below
  // this value.
  double tolerance = 0.1;
  std::uint64_t seed = 1;
  std::vector<double> C_grid = {0.001, 0.01, 0.1, 1, 10, 100};
  int folds = 5;
  bool shrinking = true;

  void validate() const;
};

struct BinaryModel {
  std::vector<double> weights;
  double bias = 0;
  std::vector<double> alpha;
  // Dual objective sum(alpha) - |w|^2/2 (bias included) after each epoch.
  std::vector<double> dual_objective;
  int epochs = 0;
  bool converged = false;

  double decision(const SparseVector& x) const { return x.dot(weights) + bias; }
};

// L2-regularized hinge-loss SVM, dual coordinate descent. The bias is the
// weight of an implicit constant-1 feature and is regularized with the rest.
// Throws DataError when vectors disagree on dimension.
BinaryModel train_binary(std::span<const SparseVector> X, std::span<const int> y, double C,
                         const TrainConfig& config);

// Primal objective |w|^2/2 + C sum hinge, bias included in the norm.
double primal_objective(const BinaryModel& m, std::span<const SparseVector> X,
                        std::span<const int> y, double C);
// Dual objective for an arbitrary alpha.
double dual_objective(std::span<const SparseVector> X, std::span<const int> y,
                      std::span<const double> alpha);

struct LinearModel {
  std::vector<std::string> classes;
  std::vector<std::vector<double>> weights;  // one per class, feature-space length
  std::vector<double> bias;
  std::vector<double> priors;  // training frequency per class
  std::size_t dim = 0;

  std::vector<double> decision_values(const SparseVector& x) const;
  // Largest decision value; ties go to the higher prior, then the earlier
  // class.
  std::size_t predict_index(const SparseVector& x) const;
  const std::string& predict(const SparseVector& x) const {
    return classes[predict_index(x)];
  }
  std::vector<std::string> predict_all(std::span<const SparseVector> X) const;
};

// One-vs-rest. `classes` defaults to the sorted distinct labels; classes with
// no training examples still get a (never-positive) model.
LinearModel train_multiclass(std::span<const SparseVector> X,
                             std::span<const std::string> labels, double C,
                             const TrainConfig& config, std::vector<std::string> classes = {});

// Per-class seeded shuffles dealt round-robin, so every fold keeps the class
// proportions. Returns fold membership lists of example indices.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const std::string> labels,
                                                       int folds, std::uint64_t seed);

using Metric = std::function<double(const std::vector<std::string>& gold,
                                    const std::vector<std::string>& pred)>;

struct CvResult {
  double best_C = 0;
  // (C, mean held-out metric) in grid order.
  std::vector<std::pair<double, double>> scores;
};

// Picks the grid value with the highest mean held-out metric; ties go to the
// smaller C. Throws DataError with fewer examples than folds.
CvResult cross_validate(std::span<const SparseVector> X, std::span<const std::string> labels,
                        const std::vector<std::string>& classes, const TrainConfig& config,
                        const Metric& metric);

enum class Task { Stance, Sentiment };
std::string_view to_string(Task t);
Task parse_task(std::string_view s);

struct TargetModel {
  Task task = Task::Stance;
  std::string scope;  // target name, or "*" for the pooled sentiment model
  FeatureConfig features;
  FeatureSpace space;
  LinearModel model;
  double C = 0;
  std::optional<CvResult> cv;
};

using StanceModelSet = std::map<std::string, TargetModel>;

// C is config.C for an empty grid, the grid value for a one-entry grid, and
// cross-validated otherwise.
TargetModel train_model(Task task, std::string scope, const Dataset& train,
                        const FeatureConfig& features, const FeatureResources& resources,
                        const TrainConfig& config);

// One model per target of `targets` (all targets in the data when empty).
// Throws DataError naming a requested target with no training instances.
StanceModelSet train_stance(const Dataset& train, const FeatureConfig& features,
                            const FeatureResources& resources, const TrainConfig& config,
                            const std::vector<std::string>& targets = {});
// Single model over all targets.
TargetModel train_sentiment(const Dataset& train, const FeatureConfig& features,
                            const FeatureResources& resources, const TrainConfig& config);

std::vector<std::string> predict(const TargetModel& m, const Dataset& data,
                                 const FeatureResources& resources);

// Flat text; format in README. load_model(save_model(m)) reproduces m.
void save_model(std::ostream& out, const TargetModel& m);
TargetModel load_model(std::istream& in);

}  // namespace stance
