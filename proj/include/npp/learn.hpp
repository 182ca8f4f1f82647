#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "npp/types.hpp"

namespace npp {

/// Row-major design matrix with binary labels (1 = important).
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<double> x;  // rows() * cols()
  std::vector<int> y;

  std::size_t rows() const { return y.size(); }
  std::size_t cols() const { return feature_names.size(); }
  std::span<const double> row(std::size_t i) const { return {x.data() + i * cols(), cols()}; }
  std::size_t positives() const;

  /// Throws Error on shape mismatch, non-finite values or labels outside {0,1}.
  void validate() const;
  Dataset subset(std::span<const std::size_t> rows) const;
  /// Keep only the named columns, in the given order.
  Dataset select(std::span<const std::string> names) const;
};

/// Per-feature affine map to zero mean and unit (population) variance.
/// Features with zero variance map to 0.
struct Standardization {
  std::vector<double> mean;
  std::vector<double> scale;  // population stddev; 0 marks a constant feature

  void apply(std::span<const double> raw, std::span<double> out) const;
};

Standardization fit_standardization(const Dataset& d);
Dataset apply_standardization(const Dataset& d, const Standardization& st);
/// Requires at least two rows.
std::pair<Dataset, Standardization> standardize(const Dataset& d);

struct TrainOptions {
  double lambda = 1e-3;
  double tol = 1e-8;
  int max_iter = 20000;
  bool record_trace = false;  // keep the loss after every accepted step
};

struct TrainDiagnostics {
  int iterations = 0;
  double final_loss = 0.0;
  double grad_inf_norm = 0.0;
  bool converged = false;
  std::vector<double> loss_trace;
};

struct LogisticModel {
  std::vector<std::string> feature_names;
  std::vector<double> weights;  // in standardized space
  double intercept = 0.0;
  double lambda = 0.0;
  Standardization standardization;
  TrainDiagnostics diagnostics;

  /// P(y = 1 | raw feature row in model order).
  double predict(std::span<const double> raw) const;
};

/// Mean logistic loss plus (lambda/2)|w|^2 on already-standardized data. When
/// `grad` is non-null it receives d/dw (cols entries) followed by d/db.
double regularized_loss(const Dataset& standardized, std::span<const double> weights, double intercept,
                        double lambda, std::vector<double>* grad = nullptr);

/// Standardizes internally, then runs full-batch gradient descent with
/// backtracking line search until |grad|_inf < tol. Throws Error when only one
/// class is present.
LogisticModel train_logistic(const Dataset& d, const TrainOptions& opts = {});

struct BaggingOptions {
  int bags = 25;
  std::uint64_t seed = 1;
  bool bootstrap = true;
  int max_retries = 100;  // redraws for single-class resamples
  TrainOptions train;
};

struct BaggedModel {
  std::vector<std::string> feature_names;
  std::vector<LogisticModel> members;
  std::uint64_t seed = 0;
  bool bootstrap = true;

  std::size_t bags() const { return members.size(); }
  /// Mean member probability for a raw row in model feature order.
  double predict(std::span<const double> raw) const;
};

BaggedModel bagging_train(const Dataset& d, const BaggingOptions& opts = {});

/// Named-feature scoring: reorders `values` to the model schema. Throws Error
/// naming missing or extra features.
double predict_proba(const BaggedModel& m, std::span<const std::string> names, std::span<const double> values);
/// Scores every row; `d` must carry exactly the model's feature names.
std::vector<double> predict_proba(const BaggedModel& m, const Dataset& d);

struct WaldEntry {
  std::string feature;
  double weight = 0.0;
  std::optional<double> z;
  std::optional<double> p_value;
  std::string stars;
};

struct WaldReport {
  std::string mode;  // "joint" or "univariate"
  double lambda = 0.0;
  std::vector<WaldEntry> entries;
  std::string diagnostic;  // set when the information matrix is singular
};

/// "*" p<0.1, "**" p<0.05, "***" p<0.01, "****" p<0.001.
std::string significance_stars(double p);

/// Standard errors from the inverse observed Fisher information of the
/// unregularized log-likelihood at the model's fitted weights.
WaldReport wald_test(const LogisticModel& m, const Dataset& d);
/// One single-feature model per column.
WaldReport wald_test_univariate(const Dataset& d, const TrainOptions& opts = {});

}  // namespace npp
