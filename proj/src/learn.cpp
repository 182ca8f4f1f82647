#include "npp/learn.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>

namespace npp {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double inf_norm(std::span<const double> v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dataset

std::size_t Dataset::positives() const { return static_cast<std::size_t>(std::count(y.begin(), y.end(), 1)); }

void Dataset::validate() const {
  if (x.size() != rows() * cols())
    throw Error("dataset has " + std::to_string(x.size()) + " values for " + std::to_string(rows()) + "x" +
                std::to_string(cols()));
  for (double v : x)
    if (!std::isfinite(v)) throw Error("dataset contains a non-finite value");
  for (int label : y)
    if (label != 0 && label != 1) throw Error("labels must be 0 or 1");
}

Dataset Dataset::subset(std::span<const std::size_t> idx) const {
  Dataset out{feature_names, {}, {}};
  out.x.reserve(idx.size() * cols());
  out.y.reserve(idx.size());
  for (auto i : idx) {
    auto r = row(i);
    out.x.insert(out.x.end(), r.begin(), r.end());
    out.y.push_back(y[i]);
  }
  return out;
}

Dataset Dataset::select(std::span<const std::string> names) const {
  std::vector<std::size_t> cols_idx;
  for (const auto& name : names) {
    auto it = std::find(feature_names.begin(), feature_names.end(), name);
    if (it == feature_names.end()) throw Error("dataset lacks feature '" + name + "'");
    cols_idx.push_back(static_cast<std::size_t>(it - feature_names.begin()));
  }
  Dataset out{std::vector<std::string>(names.begin(), names.end()), {}, y};
  out.x.reserve(rows() * names.size());
  for (std::size_t i = 0; i < rows(); ++i)
    for (auto c : cols_idx) out.x.push_back(x[i * cols() + c]);
  return out;
}

// ---------------------------------------------------------------------------
// Standardization

void Standardization::apply(std::span<const double> raw, std::span<double> out) const {
  for (std::size_t j = 0; j < mean.size(); ++j) out[j] = scale[j] > 0 ? (raw[j] - mean[j]) / scale[j] : 0.0;
}

Standardization fit_standardization(const Dataset& d) {
  const std::size_t p = d.cols(), n = d.rows();
  Standardization st{std::vector<double>(p, 0.0), std::vector<double>(p, 0.0)};
  if (n == 0) return st;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) st.mean[j] += d.x[i * p + j];
  for (auto& m : st.mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const double c = d.x[i * p + j] - st.mean[j];
      st.scale[j] += c * c;
    }
  for (std::size_t j = 0; j < p; ++j) {
    st.scale[j] = std::sqrt(st.scale[j] / static_cast<double>(n));
    // Relative cutoff so columns that are constant up to rounding count as constant.
    if (st.scale[j] <= 1e-12 * std::max(1.0, std::abs(st.mean[j]))) st.scale[j] = 0.0;
  }
  return st;
}

Dataset apply_standardization(const Dataset& d, const Standardization& st) {
  Dataset out{d.feature_names, std::vector<double>(d.x.size()), d.y};
  for (std::size_t i = 0; i < d.rows(); ++i)
    st.apply(d.row(i), std::span<double>(out.x.data() + i * d.cols(), d.cols()));
  return out;
}

std::pair<Dataset, Standardization> standardize(const Dataset& d) {
  d.validate();
  if (d.rows() < 2) throw Error("standardization needs at least 2 examples");
  auto st = fit_standardization(d);
  return {apply_standardization(d, st), st};
}

// ---------------------------------------------------------------------------
// Logistic regression

double LogisticModel::predict(std::span<const double> raw) const {
  std::vector<double> z(weights.size());
  standardization.apply(raw, z);
  double s = intercept;
  for (std::size_t j = 0; j < z.size(); ++j) s += weights[j] * z[j];
  return sigmoid(s);
}

double regularized_loss(const Dataset& d, std::span<const double> w, double b, double lambda,
                        std::vector<double>* grad) {
  const std::size_t n = d.rows(), p = d.cols();
  if (grad) grad->assign(p + 1, 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = d.x.data() + i * p;
    double z = b;
    for (std::size_t j = 0; j < p; ++j) z += w[j] * xi[j];
    loss += softplus(z) - d.y[i] * z;
    if (grad) {
      const double r = sigmoid(z) - d.y[i];
      for (std::size_t j = 0; j < p; ++j) (*grad)[j] += r * xi[j];
      (*grad)[p] += r;
    }
  }
  const double inv_n = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
  loss *= inv_n;
  double sq = 0.0;
  for (double wj : w) sq += wj * wj;
  loss += 0.5 * lambda * sq;
  if (grad) {
    for (auto& g : *grad) g *= inv_n;
    for (std::size_t j = 0; j < p; ++j) (*grad)[j] += lambda * w[j];
  }
  return loss;
}

namespace {

// Gradient descent over theta = (w, b). Trial steps follow the Barzilai-Borwein
// rule and are halved until the Armijo condition holds, so accepted steps
// never increase the loss.
TrainDiagnostics descend(const Dataset& z, double lambda, const TrainOptions& opts, std::vector<double>& theta) {
  const std::size_t p = z.cols();
  auto eval = [&](const std::vector<double>& th, std::vector<double>* g) {
    return regularized_loss(z, std::span<const double>(th.data(), p), th[p], lambda, g);
  };
  TrainDiagnostics diag;
  std::vector<double> grad, trial(theta.size()), trial_grad;
  double loss = eval(theta, &grad);
  if (opts.record_trace) diag.loss_trace.push_back(loss);
  double step = 1.0;
  std::vector<double> prev_theta, prev_grad;
  for (int it = 0; it < opts.max_iter; ++it) {
    const double gnorm = inf_norm(grad);
    if (gnorm < opts.tol) {
      diag.converged = true;
      break;
    }
    if (!prev_theta.empty()) {
      double ss = 0, sy = 0;
      for (std::size_t k = 0; k < theta.size(); ++k) {
        const double s = theta[k] - prev_theta[k], y = grad[k] - prev_grad[k];
        ss += s * s;
        sy += s * y;
      }
      if (sy > 0) step = std::clamp(ss / sy, 1e-10, 1e10);
    }
    double g2 = 0;
    for (double g : grad) g2 += g * g;
    bool accepted = false;
    double trial_loss = loss;
    for (int ls = 0; ls < 80; ++ls) {
      for (std::size_t k = 0; k < theta.size(); ++k) trial[k] = theta[k] - step * grad[k];
      trial_loss = eval(trial, &trial_grad);
      if (trial_loss <= loss - 1e-4 * step * g2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no representable decrease left
    prev_theta = theta;
    prev_grad = grad;
    theta.swap(trial);
    grad.swap(trial_grad);
    loss = trial_loss;
    if (opts.record_trace) diag.loss_trace.push_back(loss);
    diag.iterations = it + 1;
  }
  diag.final_loss = loss;
  diag.grad_inf_norm = inf_norm(grad);
  diag.converged = diag.converged || diag.grad_inf_norm < opts.tol;
  return diag;
}

}  // namespace

LogisticModel train_logistic(const Dataset& d, const TrainOptions& opts) {
  d.validate();
  if (opts.lambda < 0) throw Error("lambda must be non-negative");
  const std::size_t pos = d.positives();
  if (pos == 0 || pos == d.rows())
    throw Error("training data contains a single class; adjust the labeling threshold or horizon");
  LogisticModel m;
  m.feature_names = d.feature_names;
  m.lambda = opts.lambda;
  m.standardization = fit_standardization(d);
  const Dataset z = apply_standardization(d, m.standardization);

  std::vector<double> theta(d.cols() + 1, 0.0);
  theta.back() = std::log(static_cast<double>(pos) / static_cast<double>(d.rows() - pos));
  m.diagnostics = descend(z, opts.lambda, opts, theta);
  m.weights.assign(theta.begin(), theta.end() - 1);
  m.intercept = theta.back();
  return m;
}

// ---------------------------------------------------------------------------
// Bagging

double BaggedModel::predict(std::span<const double> raw) const {
  double s = 0.0;
  for (const auto& member : members) s += member.predict(raw);
  return s / static_cast<double>(members.size());
}

BaggedModel bagging_train(const Dataset& d, const BaggingOptions& opts) {
  if (opts.bags < 1) throw Error("bag count must be at least 1");
  d.validate();
  BaggedModel out;
  out.feature_names = d.feature_names;
  out.seed = opts.seed;
  out.bootstrap = opts.bootstrap;
  out.members.resize(static_cast<std::size_t>(opts.bags));
  std::exception_ptr failure;
  const std::int64_t bags = opts.bags;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < bags; ++b) {
    try {
      auto& slot = out.members[static_cast<std::size_t>(b)];
      if (!opts.bootstrap) {
        slot = train_logistic(d, opts.train);
        continue;
      }
      // Each bag draws from its own stream so results do not depend on scheduling.
      std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                        static_cast<std::uint32_t>(b)};
      std::mt19937_64 rng(seq);
      std::uniform_int_distribution<std::size_t> pick(0, d.rows() - 1);
      std::vector<std::size_t> idx(d.rows());
      bool trained = false;
      for (int attempt = 0; attempt <= opts.max_retries && !trained; ++attempt) {
        std::size_t pos = 0;
        for (auto& i : idx) {
          i = pick(rng);
          pos += static_cast<std::size_t>(d.y[i]);
        }
        if (pos == 0 || pos == idx.size()) continue;
        slot = train_logistic(d.subset(idx), opts.train);
        trained = true;
      }
      if (!trained)
        throw Error("bootstrap resample " + std::to_string(b) + " stayed single-class after " +
                    std::to_string(opts.max_retries) + " retries");
    } catch (...) {
#pragma omp critical(npp_bagging_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

double predict_proba(const BaggedModel& m, std::span<const std::string> names, std::span<const double> values) {
  if (names.size() != values.size()) throw Error("feature names and values differ in length");
  std::vector<double> row(m.feature_names.size());
  std::vector<bool> seen(m.feature_names.size(), false);
  for (std::size_t k = 0; k < names.size(); ++k) {
    auto it = std::find(m.feature_names.begin(), m.feature_names.end(), names[k]);
    if (it == m.feature_names.end()) throw Error("unexpected feature '" + names[k] + "'");
    auto j = static_cast<std::size_t>(it - m.feature_names.begin());
    row[j] = values[k];
    seen[j] = true;
  }
  for (std::size_t j = 0; j < seen.size(); ++j)
    if (!seen[j]) throw Error("missing feature '" + m.feature_names[j] + "'");
  return m.predict(row);
}

std::vector<double> predict_proba(const BaggedModel& m, const Dataset& d) {
  if (d.feature_names != m.feature_names) {
    std::string msg = "feature schema mismatch:";
    for (const auto& f : m.feature_names)
      if (std::find(d.feature_names.begin(), d.feature_names.end(), f) == d.feature_names.end())
        msg += " missing '" + f + "'";
    for (const auto& f : d.feature_names)
      if (std::find(m.feature_names.begin(), m.feature_names.end(), f) == m.feature_names.end())
        msg += " extra '" + f + "'";
    if (msg.back() == ':') msg += " column order differs";
    throw Error(msg);
  }
  std::vector<double> out(d.rows());
  for (std::size_t i = 0; i < d.rows(); ++i) out[i] = m.predict(d.row(i));
  return out;
}

// ---------------------------------------------------------------------------
// Wald test

std::string significance_stars(double p) {
  if (p < 0.001) return "****";
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

WaldReport wald_test(const LogisticModel& m, const Dataset& d) {
  if (d.feature_names != m.feature_names) throw Error("wald test: dataset schema differs from model");
  d.validate();
  const std::size_t p = d.cols(), n = d.rows();
  const Dataset z = apply_standardization(d, m.standardization);

  // Constant columns carry no information; they are reported as undefined.
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < p; ++j)
    if (m.standardization.scale[j] > 0) active.push_back(j);
  const auto q = static_cast<Eigen::Index>(active.size() + 1);

  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(q, q);
  Eigen::VectorXd xi(q);
  for (std::size_t i = 0; i < n; ++i) {
    double s = m.intercept;
    for (std::size_t j = 0; j < p; ++j) s += m.weights[j] * z.x[i * p + j];
    xi[0] = 1.0;
    for (std::size_t k = 0; k < active.size(); ++k) xi[static_cast<Eigen::Index>(k + 1)] = z.x[i * p + active[k]];
    const double pr = sigmoid(s);
    info.noalias() += pr * (1.0 - pr) * xi * xi.transpose();
  }

  WaldReport rep{"joint", m.lambda, {}, {}};
  Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
  lu.setThreshold(1e-12);
  const bool singular = !lu.isInvertible();
  Eigen::MatrixXd cov;
  if (singular) {
    rep.diagnostic = "information matrix is singular (rank " + std::to_string(lu.rank()) + " of " +
                     std::to_string(q) + ")";
  } else {
    cov = lu.inverse();
  }
  for (std::size_t j = 0; j < p; ++j) {
    WaldEntry e{m.feature_names[j], m.weights[j], std::nullopt, std::nullopt, ""};
    auto pos = std::find(active.begin(), active.end(), j);
    if (!singular && pos != active.end()) {
      const auto k = static_cast<Eigen::Index>(pos - active.begin() + 1);
      const double var = cov(k, k);
      if (var > 0 && std::isfinite(var)) {
        e.z = m.weights[j] / std::sqrt(var);
        e.p_value = std::erfc(std::abs(*e.z) / std::sqrt(2.0));
        e.stars = significance_stars(*e.p_value);
      }
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

WaldReport wald_test_univariate(const Dataset& d, const TrainOptions& opts) {
  WaldReport rep{"univariate", opts.lambda, {}, {}};
  for (const auto& name : d.feature_names) {
    const std::string one[] = {name};
    Dataset col = d.select(one);
    auto m = train_logistic(col, opts);
    auto r = wald_test(m, col);
    rep.entries.push_back(r.entries.front());
    if (!r.diagnostic.empty()) rep.diagnostic += name + ": " + r.diagnostic + "; ";
  }
  return rep;
}

}  // namespace npp
