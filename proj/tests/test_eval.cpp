#include <doctest.h>

#include <cmath>
#include <random>

#include "npp/eval.hpp"
#include "oracles.hpp"

using namespace npp;

TEST_CASE("AUROC examples") {
  std::vector<double> s{0.9, 0.6, 0.4, 0.1};
  std::vector<int> y{1, 1, 0, 0};
  CHECK(auroc(s, y) == 1.0);
  CHECK(auroc(std::vector<double>{0.3, 0.7}, std::vector<int>{1, 0}) == 0.0);
  CHECK(auroc(std::vector<double>{0.5, 0.5}, std::vector<int>{1, 0}) == 0.5);
  CHECK_FALSE(auroc(std::vector<double>{0.5, 0.2}, std::vector<int>{1, 1}).has_value());
}

TEST_CASE("AUPR examples") {
  CHECK(aupr(std::vector<double>{2, 1}, std::vector<int>{1, 0}) == 1.0);
  CHECK(aupr(std::vector<double>{2, 1}, std::vector<int>{0, 1}) == 0.5);
  CHECK(aupr(std::vector<double>{4, 3, 2, 1}, std::vector<int>{1, 0, 1, 0}) == doctest::Approx(5.0 / 6).epsilon(1e-15));
  CHECK_FALSE(aupr(std::vector<double>{1, 2}, std::vector<int>{0, 0}).has_value());
}

TEST_CASE("metrics agree with the threshold-sweep oracle on random tie patterns") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + trial % 30;
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = std::uniform_int_distribution<int>(0, 4)(rng);
      y[i] = std::bernoulli_distribution(0.4)(rng);
    }
    auto a = auroc(s, y), ra = oracle::auroc(s, y);
    REQUIRE(a.has_value() == ra.has_value());
    if (a) CHECK(*a == doctest::Approx(*ra).epsilon(1e-12));
    auto p = aupr(s, y), rp = oracle::aupr(s, y);
    REQUIRE(p.has_value() == rp.has_value());
    if (p) CHECK(*p == doctest::Approx(*rp).epsilon(1e-12));
  }
}

TEST_CASE("AUROC is invariant under increasing transforms") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  std::vector<double> s(100), t(100);
  std::vector<int> y(100);
  for (int i = 0; i < 100; ++i) {
    s[i] = std::round(z(rng) * 3);
    t[i] = std::exp(s[i]) + 7;
    y[i] = i % 3 == 0;
  }
  CHECK(auroc(s, y) == auroc(t, y));
}

TEST_CASE("random rankings") {
  std::mt19937_64 rng(11);
  double mean_roc = 0, mean_pr = 0;
  const int seeds = 100, n = 200;
  int pos_total = 0;
  for (int s = 0; s < seeds; ++s) {
    std::vector<double> sc(n);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
      sc[i] = std::uniform_real_distribution<double>()(rng);
      y[i] = i < 60;
      pos_total += y[i];
    }
    std::shuffle(y.begin(), y.end(), rng);
    mean_roc += *auroc(sc, y) / seeds;
    mean_pr += *aupr(sc, y) / seeds;
  }
  CHECK(std::abs(mean_roc - 0.5) < 0.05);
  CHECK(std::abs(mean_pr - 0.3) < 0.1);
}

TEST_CASE("curve points end at full recall") {
  std::vector<double> s{0.9, 0.9, 0.4, 0.1};
  std::vector<int> y{1, 0, 1, 0};
  auto pts = curve_points(s, y);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].precision == 0.5);
  CHECK(pts.back().recall == 1.0);
  CHECK(pts.back().fpr == 1.0);
}

TEST_CASE("transfer loss") {
  CHECK(transfer_loss(0.4, 0.5) == doctest::Approx(0.2));
  CHECK(transfer_loss(0.5, 0.5) == 0.0);
  CHECK_FALSE(transfer_loss(std::nullopt, 0.5).has_value());
  CHECK_FALSE(transfer_loss(0.3, 0.0).has_value());
}

TEST_CASE("transfer matrix") {
  auto dataset = [](std::uint64_t seed, std::vector<std::string> names) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    Dataset d;
    d.feature_names = std::move(names);
    for (int i = 0; i < 200; ++i) {
      const double a = z(rng), b = z(rng);
      d.x.insert(d.x.end(), {a, b});
      d.y.push_back(a + 0.5 * z(rng) > 0.8);
    }
    return d;
  };
  std::map<std::string, BaggedModel> models;
  std::map<std::string, Dataset> tests;
  for (std::string k : {"a", "b", "c", "d"}) {
    BaggingOptions o;
    o.bags = 5;
    auto d = dataset(k[0], {"x", "y"});
    models.emplace(k, bagging_train(d, o));
    tests.emplace(k, dataset(k[0] + 50, {"x", "y"}));
  }
  auto tm = transfer_matrix(models, tests);
  REQUIRE(tm.datasets.size() == 4);
  int off = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) {
        CHECK(tm.aupr_loss[i][j] == 0.0);
        CHECK(tm.auroc_loss[i][j] == 0.0);
      } else {
        ++off;
        CHECK(std::isfinite(*tm.aupr_loss[i][j]));
      }
    }
  CHECK(off == 12);

  tests["b"].feature_names = {"x", "q"};
  CHECK_THROWS_WITH(transfer_matrix(models, tests), doctest::Contains("q"));
}
