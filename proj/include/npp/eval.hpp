#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "npp/learn.hpp"

namespace npp {

/// Area under the ROC curve as the Mann-Whitney statistic; tied scores count
/// half. Empty when either class is absent.
std::optional<double> auroc(std::span<const double> scores, std::span<const int> labels);

/// Average precision. Equal scores are processed as one block and every
/// positive in the block takes the block-end precision. Empty without positives.
std::optional<double> aupr(std::span<const double> scores, std::span<const int> labels);

struct CurvePoint {
  double threshold;
  double fpr, tpr;           // ROC
  double recall, precision;  // PR
};

/// One point per distinct score (descending), for external plotting.
std::vector<CurvePoint> curve_points(std::span<const double> scores, std::span<const int> labels);

struct MetricPair {
  std::optional<double> auroc;
  std::optional<double> aupr;
};

MetricPair evaluate(std::span<const double> scores, std::span<const int> labels);

/// metric(train, test) for every ordered pair plus relative loss
/// 1 - metric(train, test) / metric(test, test).
struct TransferMatrix {
  std::vector<std::string> datasets;
  std::vector<std::vector<MetricPair>> raw;  // [train][test]
  std::vector<std::vector<std::optional<double>>> auroc_loss;
  std::vector<std::vector<std::optional<double>>> aupr_loss;
  std::vector<std::size_t> test_sizes;
};

/// Relative loss; empty if either input is empty or the reference is 0.
std::optional<double> transfer_loss(std::optional<double> metric, std::optional<double> reference);

/// `models` and `tests` share keys. Each model scores every test set through
/// its own standardization. Throws Error on feature schema mismatch.
TransferMatrix transfer_matrix(const std::map<std::string, BaggedModel>& models,
                               const std::map<std::string, Dataset>& tests);

}  // namespace npp
