#include "nbdyn/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "nbdyn/errors.hpp"
#include "nbdyn/parallel.hpp"

namespace nbdyn {
namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

std::vector<std::vector<std::size_t>> rows_by_class(const Dataset& ds,
                                                    std::span<const Label> classes) {
  std::vector<std::vector<std::size_t>> rows(classes.size());
  for (std::size_t r = 0; r < ds.size(); ++r) {
    const auto it = std::lower_bound(classes.begin(), classes.end(), ds.labels[r]);
    rows[static_cast<std::size_t>(it - classes.begin())].push_back(r);
  }
  return rows;
}

// Soft-margin dual solved by SMO with second-order working-set selection.
struct SmoResult {
  std::vector<double> alpha;
  double rho = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

SmoResult solve_smo(const std::vector<double>& kernel, const std::vector<int>& y, double c,
                    double eps, std::size_t max_iterations) {
  const std::size_t n = y.size();
  auto k = [&](std::size_t i, std::size_t j) { return kernel[i * n + j]; };
  SmoResult r;
  r.alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);
  auto& alpha = r.alpha;
  auto upper = [&](std::size_t t) { return alpha[t] >= c; };
  auto lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  while (r.iterations < max_iterations) {
    double gmax = -kInf;
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 1) {
        if (!upper(t) && -grad[t] >= gmax) {
          gmax = -grad[t];
          i = t;
        }
      } else if (!lower(t) && grad[t] >= gmax) {
        gmax = grad[t];
        i = t;
      }
    }
    double gmax2 = -kInf;
    double best = kInf;
    std::size_t j = n;
    if (i < n) {
      for (std::size_t t = 0; t < n; ++t) {
        double diff = 0.0;
        if (y[t] == 1) {
          if (lower(t)) continue;
          diff = gmax + grad[t];
          gmax2 = std::max(gmax2, grad[t]);
        } else {
          if (upper(t)) continue;
          diff = gmax - grad[t];
          gmax2 = std::max(gmax2, -grad[t]);
        }
        if (diff > 0.0) {
          double quad = k(i, i) + k(t, t) - 2.0 * k(i, t);
          if (quad <= 0.0) quad = kTau;
          const double obj = -(diff * diff) / quad;
          if (obj <= best) {
            best = obj;
            j = t;
          }
        }
      }
    }
    if (i == n || j == n || gmax + gmax2 < eps) {
      r.converged = true;
      break;
    }
    ++r.iterations;

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    const double qij = static_cast<double>(y[i] * y[j]) * k(i, j);
    if (y[i] != y[j]) {
      double quad = k(i, i) + k(j, j) + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = k(i, i) + k(j, j) - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += static_cast<double>(y[t]) *
                 (static_cast<double>(y[i]) * k(i, t) * di + static_cast<double>(y[j]) * k(j, t) * dj);
    }
  }

  double ub = kInf, lb = -kInf, sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = static_cast<double>(y[t]) * grad[t];
    if (upper(t)) {
      if (y[t] == -1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (lower(t)) {
      if (y[t] == 1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  r.rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
  return r;
}

Label vote(std::span<const Label> classes, std::span<const std::size_t> votes) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < votes.size(); ++c) {
    if (votes[c] > votes[best]) best = c;
  }
  return classes[best];
}

void require_two_classes(const Dataset& ds) {
  if (ds.classes().size() < 2) throw ValidationError("training needs at least two classes");
}

}  // namespace

std::vector<Label> Dataset::classes() const {
  std::vector<Label> out(labels);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out;
  out.features.reserve(rows.size());
  out.labels.reserve(rows.size());
  for (std::size_t r : rows) {
    out.features.push_back(features.at(r));
    out.labels.push_back(labels.at(r));
  }
  return out;
}

void Dataset::validate() const {
  if (features.size() != labels.size()) throw ValidationError("feature and label counts differ");
  const std::size_t f = width();
  for (std::size_t r = 0; r < features.size(); ++r) {
    if (features[r].size() != f) {
      throw ValidationError("row " + std::to_string(r) + " has " +
                            std::to_string(features[r].size()) + " features, expected " +
                            std::to_string(f));
    }
    for (double x : features[r]) {
      if (!std::isfinite(x)) throw ValidationError("row " + std::to_string(r) + " is not finite");
    }
  }
}

Dataset Dataset::from_matrices(std::span<const FeatureMatrix> matrices) {
  Dataset ds;
  ds.features.reserve(matrices.size());
  for (const FeatureMatrix& m : matrices) {
    ds.features.push_back(m.flattened());
    ds.labels.push_back(m.label);
  }
  ds.validate();
  return ds;
}

Standardizer Standardizer::fit(const Dataset& ds) {
  const std::size_t f = ds.width();
  Standardizer s;
  s.mean.assign(f, 0.0);
  s.scale.assign(f, 1.0);
  if (ds.size() == 0) return s;
  const double n = static_cast<double>(ds.size());
  for (const auto& row : ds.features) {
    for (std::size_t i = 0; i < f; ++i) s.mean[i] += row[i];
  }
  for (double& m : s.mean) m /= n;
  std::vector<double> var(f, 0.0);
  for (const auto& row : ds.features) {
    for (std::size_t i = 0; i < f; ++i) {
      const double d = row[i] - s.mean[i];
      var[i] += d * d;
    }
  }
  for (std::size_t i = 0; i < f; ++i) {
    const double sd = std::sqrt(var[i] / n);
    s.scale[i] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
  if (row.size() != mean.size()) {
    throw ValidationError("row has " + std::to_string(row.size()) + " features, model expects " +
                          std::to_string(mean.size()));
  }
  std::vector<double> out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = (row[i] - mean[i]) / scale[i];
  return out;
}

double scale_gamma(const Dataset& standardized) {
  const std::size_t f = standardized.width();
  const std::size_t count = standardized.size() * f;
  if (count == 0) return 1.0;
  double mean = 0.0;
  for (const auto& row : standardized.features) {
    for (double x : row) mean += x;
  }
  mean /= static_cast<double>(count);
  double var = 0.0;
  for (const auto& row : standardized.features) {
    for (double x : row) var += (x - mean) * (x - mean);
  }
  var /= static_cast<double>(count);
  return var > 0.0 ? 1.0 / (static_cast<double>(f) * var) : 1.0;
}

double TrainedModel::decision(const BinaryMachine& machine,
                              std::span<const double> standardized) const {
  double sum = 0.0;
  for (std::size_t s = 0; s < machine.support.size(); ++s) {
    sum += machine.coef[s] * std::exp(-gamma * squared_distance(machine.support[s], standardized));
  }
  return sum - machine.bias;
}

Label TrainedModel::predict(std::span<const double> row) const {
  const auto x = scaler.apply(row);
  std::vector<std::size_t> votes(classes.size(), 0);
  for (const BinaryMachine& m : machines) {
    const Label winner = decision(m, x) > 0.0 ? m.positive : m.negative;
    const auto it = std::lower_bound(classes.begin(), classes.end(), winner);
    ++votes[static_cast<std::size_t>(it - classes.begin())];
  }
  return vote(classes, votes);
}

std::vector<Label> TrainedModel::predict(const Dataset& ds) const {
  std::vector<Label> out;
  out.reserve(ds.size());
  for (const auto& row : ds.features) out.push_back(predict(row));
  return out;
}

TrainedModel train_svm(const Dataset& train, const SvmOptions& options) {
  train.validate();
  require_two_classes(train);
  if (!(options.c > 0.0)) throw ValidationError("SVM regularisation C must be positive");
  if (options.gamma && !(*options.gamma > 0.0)) throw ValidationError("SVM gamma must be positive");

  TrainedModel model;
  model.classes = train.classes();
  model.c = options.c;
  model.scaler = Standardizer::fit(train);
  Dataset z;
  z.labels = train.labels;
  z.features.reserve(train.size());
  for (const auto& row : train.features) z.features.push_back(model.scaler.apply(row));
  model.gamma = options.gamma ? *options.gamma : scale_gamma(z);

  const auto by_class = rows_by_class(train, model.classes);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) pairs.emplace_back(a, b);
  }
  model.machines.resize(pairs.size());

  parallel_for(pairs.size(), options.threads, [&](std::size_t p) {
    const auto [a, b] = pairs[p];
    std::vector<std::size_t> rows = by_class[a];
    rows.insert(rows.end(), by_class[b].begin(), by_class[b].end());
    std::sort(rows.begin(), rows.end());
    const std::size_t n = rows.size();
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = train.labels[rows[i]] == model.classes[a] ? 1 : -1;
    std::vector<double> kernel(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      kernel[i * n + i] = 1.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v =
            std::exp(-model.gamma * squared_distance(z.features[rows[i]], z.features[rows[j]]));
        kernel[i * n + j] = v;
        kernel[j * n + i] = v;
      }
    }
    const SmoResult r = solve_smo(kernel, y, options.c, options.tolerance, options.max_iterations);
    if (!r.converged) {
      throw NumericError("SMO did not converge for class pair (" +
                         std::to_string(model.classes[a]) + ", " +
                         std::to_string(model.classes[b]) + ") after " +
                         std::to_string(options.max_iterations) + " iterations");
    }
    BinaryMachine& m = model.machines[p];
    m.positive = model.classes[a];
    m.negative = model.classes[b];
    m.bias = r.rho;
    m.iterations = r.iterations;
    for (std::size_t i = 0; i < n; ++i) {
      if (r.alpha[i] <= 0.0) continue;
      m.support.push_back(z.features[rows[i]]);
      m.coef.push_back(r.alpha[i] * static_cast<double>(y[i]));
      m.support_rows.push_back(rows[i]);
    }
  });
  return model;
}

AccuracyReport accuracy_report(std::span<const Label> truth, std::span<const Label> predicted) {
  if (truth.size() != predicted.size()) throw ContractError("label vectors differ in length");
  if (truth.empty()) throw ValidationError("cannot score an empty test set");
  AccuracyReport rep;
  rep.classes.assign(truth.begin(), truth.end());
  rep.classes.insert(rep.classes.end(), predicted.begin(), predicted.end());
  std::sort(rep.classes.begin(), rep.classes.end());
  rep.classes.erase(std::unique(rep.classes.begin(), rep.classes.end()), rep.classes.end());
  const std::size_t l = rep.classes.size();
  auto index = [&](Label x) {
    return static_cast<std::size_t>(std::lower_bound(rep.classes.begin(), rep.classes.end(), x) -
                                    rep.classes.begin());
  };
  rep.confusion.assign(l, std::vector<std::size_t>(l, 0));
  rep.support.assign(l, 0);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const std::size_t t = index(truth[i]);
    ++rep.confusion[t][index(predicted[i])];
    ++rep.support[t];
    if (truth[i] == predicted[i]) ++correct;
  }
  rep.per_class.assign(l, 0.0);
  for (std::size_t c = 0; c < l; ++c) {
    if (rep.support[c] > 0) {
      rep.per_class[c] =
          static_cast<double>(rep.confusion[c][c]) / static_cast<double>(rep.support[c]);
    }
  }
  rep.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  return rep;
}

AccuracyReport evaluate(const TrainedModel& model, const Dataset& test) {
  test.validate();
  if (test.size() == 0) throw ValidationError("cannot score an empty test set");
  if (test.width() != model.scaler.mean.size()) {
    throw ValidationError("test set has " + std::to_string(test.width()) +
                          " features, model expects " + std::to_string(model.scaler.mean.size()));
  }
  const auto predicted = model.predict(test);
  return accuracy_report(test.labels, predicted);
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  ds.validate();
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ValidationError("train fraction must lie strictly between 0 and 1");
  }
  const auto classes = ds.classes();
  auto by_class = rows_by_class(ds, classes);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (by_class[c].size() < 2) {
      throw ValidationError("class " + std::to_string(classes[c]) + " has fewer than 2 rows");
    }
  }

  // Largest-remainder allocation of the overall train count across classes.
  const auto total = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(ds.size())));
  std::vector<std::size_t> take(classes.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const double exact = train_fraction * static_cast<double>(by_class[c].size());
    take[c] = static_cast<std::size_t>(std::floor(exact));
    assigned += take[c];
    remainders.emplace_back(exact - std::floor(exact), c);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < total && i < remainders.size(); ++i, ++assigned) {
    ++take[remainders[i].second];
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    take[c] = std::clamp<std::size_t>(take[c], 1, by_class[c].size() - 1);
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> train_rows, test_rows;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto& rows = by_class[c];
    std::shuffle(rows.begin(), rows.end(), rng);
    train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take[c]));
    test_rows.insert(test_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(take[c]), rows.end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {ds.subset(train_rows), ds.subset(test_rows)};
}

std::vector<std::size_t> stratified_folds(const Dataset& ds, std::size_t folds,
                                          std::uint64_t seed) {
  if (folds < 2) throw ValidationError("cross-validation needs at least 2 folds");
  const auto classes = ds.classes();
  auto by_class = rows_by_class(ds, classes);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (by_class[c].size() < folds) {
      throw ValidationError("class " + std::to_string(classes[c]) + " has fewer rows than folds");
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> fold_of(ds.size(), 0);
  std::size_t offset = 0;
  for (auto& rows : by_class) {
    std::shuffle(rows.begin(), rows.end(), rng);
    for (std::size_t i = 0; i < rows.size(); ++i) fold_of[rows[i]] = (offset + i) % folds;
    offset += rows.size();
  }
  return fold_of;
}

CrossValidation cross_validate(const Dataset& ds, std::size_t folds, std::uint64_t seed,
                               const SvmOptions& options) {
  ds.validate();
  const auto fold_of = stratified_folds(ds, folds, seed);
  CrossValidation cv;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t r = 0; r < ds.size(); ++r) (fold_of[r] == f ? test_rows : train_rows).push_back(r);
    const TrainedModel model = train_svm(ds.subset(train_rows), options);
    cv.folds.push_back(evaluate(model, ds.subset(test_rows)).accuracy);
  }
  cv.mean = std::accumulate(cv.folds.begin(), cv.folds.end(), 0.0) / static_cast<double>(folds);
  cv.min = *std::min_element(cv.folds.begin(), cv.folds.end());
  cv.max = *std::max_element(cv.folds.begin(), cv.folds.end());
  return cv;
}

AccuracyReport nearest_centroid(const Dataset& train, const Dataset& test) {
  train.validate();
  test.validate();
  if (train.size() == 0) throw ValidationError("empty training set");
  if (test.size() == 0) throw ValidationError("cannot score an empty test set");
  if (test.width() != train.width()) throw ValidationError("train and test widths differ");

  const auto classes = train.classes();
  const Standardizer scaler = Standardizer::fit(train);
  const std::size_t f = train.width();
  std::vector<std::vector<double>> centroid(classes.size(), std::vector<double>(f, 0.0));
  std::vector<std::size_t> count(classes.size(), 0);
  for (std::size_t r = 0; r < train.size(); ++r) {
    const auto c = static_cast<std::size_t>(
        std::lower_bound(classes.begin(), classes.end(), train.labels[r]) - classes.begin());
    const auto z = scaler.apply(train.features[r]);
    for (std::size_t i = 0; i < f; ++i) centroid[c][i] += z[i];
    ++count[c];
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (double& x : centroid[c]) x /= static_cast<double>(count[c]);
  }

  std::vector<Label> predicted;
  predicted.reserve(test.size());
  for (const auto& row : test.features) {
    const auto z = scaler.apply(row);
    std::size_t best = 0;
    double best_d = squared_distance(centroid[0], z);
    for (std::size_t c = 1; c < classes.size(); ++c) {
      const double d = squared_distance(centroid[c], z);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    predicted.push_back(classes[best]);
  }
  return accuracy_report(test.labels, predicted);
}

}  // namespace nbdyn
