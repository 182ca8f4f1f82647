#include "npp/eval.hpp"

#include <algorithm>
#include <numeric>

namespace npp {

namespace {

void check_lengths(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw Error("scores and labels differ in length");
}

// Indices sorted by descending score; ties keep input order.
std::vector<std::size_t> descending(std::span<const double> scores) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return idx;
}

}  // namespace

std::optional<double> auroc(std::span<const double> scores, std::span<const int> labels) {
  check_lengths(scores, labels);
  const auto idx = descending(scores);
  double pos_total = 0, neg_total = 0;
  for (int l : labels) (l ? pos_total : neg_total) += 1;
  if (pos_total == 0 || neg_total == 0) return std::nullopt;

  // Walk blocks from the top: a positive beats every negative below its block
  // and ties with negatives inside it.
  double concordant = 0, neg_seen = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    double pos = 0, neg = 0;
    for (; j < idx.size() && scores[idx[j]] == scores[idx[i]]; ++j) (labels[idx[j]] ? pos : neg) += 1;
    const double neg_below = neg_total - neg_seen - neg;
    concordant += pos * neg_below + 0.5 * pos * neg;
    neg_seen += neg;
    i = j;
  }
  return concordant / (pos_total * neg_total);
}

std::optional<double> aupr(std::span<const double> scores, std::span<const int> labels) {
  check_lengths(scores, labels);
  const auto idx = descending(scores);
  const double pos_total = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
  if (pos_total == 0) return std::nullopt;
  double tp = 0, fp = 0, ap = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    double pos = 0;
    for (; j < idx.size() && scores[idx[j]] == scores[idx[i]]; ++j) {
      if (labels[idx[j]])
        pos += 1;
      else
        fp += 1;
    }
    tp += pos;
    if (pos > 0) ap += pos * (tp / (tp + fp));
    i = j;
  }
  return ap / pos_total;
}

std::vector<CurvePoint> curve_points(std::span<const double> scores, std::span<const int> labels) {
  check_lengths(scores, labels);
  const auto idx = descending(scores);
  const double p = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
  const double n = static_cast<double>(labels.size()) - p;
  std::vector<CurvePoint> out;
  double tp = 0, fp = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    for (; j < idx.size() && scores[idx[j]] == scores[idx[i]]; ++j) (labels[idx[j]] ? tp : fp) += 1;
    out.push_back({scores[idx[i]], n > 0 ? fp / n : 0.0, p > 0 ? tp / p : 0.0, p > 0 ? tp / p : 0.0,
                   tp / (tp + fp)});
    i = j;
  }
  return out;
}

MetricPair evaluate(std::span<const double> scores, std::span<const int> labels) {
  return {auroc(scores, labels), aupr(scores, labels)};
}

std::optional<double> transfer_loss(std::optional<double> metric, std::optional<double> reference) {
  if (!metric || !reference || *reference == 0.0) return std::nullopt;
  return 1.0 - *metric / *reference;
}

TransferMatrix transfer_matrix(const std::map<std::string, BaggedModel>& models,
                               const std::map<std::string, Dataset>& tests) {
  TransferMatrix tm;
  for (const auto& [name, _] : models) {
    if (!tests.contains(name)) throw Error("no test set for dataset '" + name + "'");
    tm.datasets.push_back(name);
  }
  if (tests.size() != models.size()) throw Error("every test set needs a trained model");
  const std::size_t k = tm.datasets.size();
  tm.raw.assign(k, std::vector<MetricPair>(k));
  tm.auroc_loss.assign(k, std::vector<std::optional<double>>(k));
  tm.aupr_loss.assign(k, std::vector<std::optional<double>>(k));
  for (const auto& name : tm.datasets) tm.test_sizes.push_back(tests.at(name).rows());

  for (std::size_t i = 0; i < k; ++i) {
    const auto& model = models.at(tm.datasets[i]);
    for (std::size_t j = 0; j < k; ++j) {
      const auto& test = tests.at(tm.datasets[j]);
      if (test.feature_names != model.feature_names) {
        std::string msg = "feature schema mismatch between '" + tm.datasets[i] + "' and '" + tm.datasets[j] + "':";
        for (const auto& f : model.feature_names)
          if (std::find(test.feature_names.begin(), test.feature_names.end(), f) == test.feature_names.end())
            msg += " " + f;
        for (const auto& f : test.feature_names)
          if (std::find(model.feature_names.begin(), model.feature_names.end(), f) == model.feature_names.end())
            msg += " " + f;
        throw Error(msg);
      }
      const auto scores = predict_proba(model, test);
      tm.raw[i][j] = evaluate(scores, test.y);
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) {
        // Exactly zero by definition whenever the diagonal metric exists.
        tm.auroc_loss[i][j] = tm.raw[j][j].auroc ? std::optional<double>(0.0) : std::nullopt;
        tm.aupr_loss[i][j] = tm.raw[j][j].aupr ? std::optional<double>(0.0) : std::nullopt;
        continue;
      }
      tm.auroc_loss[i][j] = transfer_loss(tm.raw[i][j].auroc, tm.raw[j][j].auroc);
      tm.aupr_loss[i][j] = transfer_loss(tm.raw[i][j].aupr, tm.raw[j][j].aupr);
    }
  return tm;
}

}  // namespace npp
