#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nbdyn/pipeline.hpp"

namespace nbdyn {

struct Dataset {
  std::vector<std::vector<double>> features;
  std::vector<Label> labels;

  std::size_t size() const { return labels.size(); }
  std::size_t width() const { return features.empty() ? 0 : features.front().size(); }

  // Sorted distinct labels.
  std::vector<Label> classes() const;

  Dataset subset(std::span<const std::size_t> rows) const;

  // Throws ValidationError on ragged rows, a label count mismatch, or a
  // non-finite entry.
  void validate() const;

  static Dataset from_matrices(std::span<const FeatureMatrix> matrices);
};

// Per-feature z-scoring with training statistics. A constant feature gets
// scale 1, so it maps to 0.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const Dataset& ds);
  std::vector<double> apply(std::span<const double> row) const;
};

struct SvmOptions {
  double c = 1.0;
  std::optional<double> gamma;  // nothing means "scale"
  double tolerance = 1e-3;
  std::size_t max_iterations = 1'000'000;
  unsigned threads = 1;
};

// One soft-margin RBF machine separating `positive` (decision > 0) from
// `negative`.
struct BinaryMachine {
  Label positive = 0;
  Label negative = 0;
  std::vector<std::vector<double>> support;  // standardized support vectors
  std::vector<double> coef;                  // alpha_i * y_i
  std::vector<std::size_t> support_rows;     // row indices in the training set
  double bias = 0.0;                         // decision = sum coef K - bias
  std::size_t iterations = 0;
};

struct TrainedModel {
  std::vector<Label> classes;
  Standardizer scaler;
  double gamma = 1.0;
  double c = 1.0;
  std::vector<BinaryMachine> machines;  // pairs (i, j), i < j, in class order

  double decision(const BinaryMachine& machine, std::span<const double> standardized) const;
  // Majority vote over all pairwise machines; ties go to the lowest class id.
  Label predict(std::span<const double> row) const;
  std::vector<Label> predict(const Dataset& ds) const;
};

// 1 / (F * variance of all standardized training entries), or 1 when that
// variance is zero.
double scale_gamma(const Dataset& standardized);

// One-vs-one RBF SVM. Throws ValidationError with fewer than two classes and
// NumericError when a pairwise problem hits the iteration cap.
TrainedModel train_svm(const Dataset& train, const SvmOptions& options = {});

struct AccuracyReport {
  double accuracy = 0.0;
  std::vector<Label> classes;
  std::vector<double> per_class;                    // recall per class
  std::vector<std::size_t> support;                 // test rows per class
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
};

AccuracyReport accuracy_report(std::span<const Label> truth, std::span<const Label> predicted);

// Throws ValidationError on an empty test set or a width mismatch.
AccuracyReport evaluate(const TrainedModel& model, const Dataset& test);

inline constexpr double kDefaultTrainFraction = 0.6;

// Stratified seeded split; returns (train, test).
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, std::uint64_t seed);

// Fold index of every row; stratified so each class is spread evenly.
std::vector<std::size_t> stratified_folds(const Dataset& ds, std::size_t folds,
                                          std::uint64_t seed);

struct CrossValidation {
  std::vector<double> folds;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

inline constexpr std::size_t kDefaultFolds = 5;

CrossValidation cross_validate(const Dataset& ds, std::size_t folds, std::uint64_t seed,
                               const SvmOptions& options = {});

// Nearest class centroid in standardized space; ties go to the lowest id.
AccuracyReport nearest_centroid(const Dataset& train, const Dataset& test);

}  // namespace nbdyn
