#include "qcs/conditional.hpp"

#include "qcs/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcs {

namespace {

// Floor with a small upward snap so that n*p lands on the intended rank
// when the product sits a few ulps below an integer.
Index rank_floor(double x) { return static_cast<Index>(std::floor(x + 1e-9)); }

// Moments over the given rows, accumulated in the order provided.
// Two-pass: means first, then centered products, divisor = row count.
ConditionalEstimates moments_over_rows(const Mat& X, const Vec& y,
                                       const std::vector<Index>& rows,
                                       const QuantileWindow& window) {
  const Index d = X.cols();
  const Index m = static_cast<Index>(rows.size());

  ConditionalEstimates est{window, Vec::Zero(d), Vec::Zero(d), Mat::Zero(d, d),
                           Vec::Zero(d), 0.0, 0.0, m};

  for (const Index r : rows) {
    est.mean += X.row(r).transpose();
    est.benchmark_mean += y[r];
  }
  est.mean /= static_cast<double>(m);
  est.benchmark_mean /= static_cast<double>(m);

  Vec xc(d);
  for (const Index r : rows) {
    xc = X.row(r).transpose() - est.mean;
    const double yc = y[r] - est.benchmark_mean;
    est.cov.selfadjointView<Eigen::Lower>().rankUpdate(xc, 1.0);
    est.cov_with_benchmark += xc * yc;
    est.benchmark_variance += yc * yc;
  }
  for (Index j = 0; j < d; ++j)
    for (Index i = j + 1; i < d; ++i) est.cov(j, i) = est.cov(i, j);
  est.cov /= static_cast<double>(m);
  est.cov_with_benchmark /= static_cast<double>(m);
  est.benchmark_variance /= static_cast<double>(m);
  est.variance = est.cov.diagonal();
  return est;
}

std::vector<Index> sorted_positions(const std::vector<Index>& ranks) {
  std::vector<Index> rows = ranks;
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

ConditioningIndexSet conditioning_indices(const Vec& benchmark, const QuantileWindow& window) {
  const Index n = benchmark.size();
  if (n < 5) throw domain_error("conditioning requires a sample of at least 5 observations");

  const Index np = rank_floor(static_cast<double>(n) * window.p);
  const Index nq = rank_floor(static_cast<double>(n) * window.q);
  if (nq - np < 2)
    throw domain_error("window (" + std::to_string(window.p) + ", " + std::to_string(window.q) +
                       ") selects fewer than 2 of " + std::to_string(n) + " observations");

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return benchmark[a] < benchmark[b]; });

  ConditioningIndexSet set;
  set.lower_rank = np + 1;
  set.upper_rank = nq;
  set.indices.assign(order.begin() + np, order.begin() + nq);
  return set;
}

ConditioningIndexSet conditioning_indices(const BenchmarkSeries& bench,
                                          const QuantileWindow& window) {
  return conditioning_indices(bench.values, window);
}

ConditionalEstimates conditional_estimates(const Mat& X, const Vec& y,
                                           const QuantileWindow& window) {
  if (X.rows() != y.size())
    throw domain_error("panel and benchmark lengths differ (" + std::to_string(X.rows()) +
                       " vs " + std::to_string(y.size()) + ")");
  const ConditioningIndexSet set = conditioning_indices(y, window);
  // Accumulate in original row order so that the full window reproduces
  // the unconditional estimators bitwise.
  return moments_over_rows(X, y, sorted_positions(set.indices), window);
}

ConditionalEstimates conditional_estimates(const ReturnPanel& panel,
                                           const BenchmarkSeries& bench,
                                           const QuantileWindow& window) {
  return conditional_estimates(panel.returns, bench.values, window);
}

ReconstructedCovariance reconstruct_covariance(const ConditionalEstimates& est) {
  est.window.require_interior();
  if (!(est.benchmark_variance > 0.0))
    throw numeric_error("degenerate benchmark: conditional variance is zero");

  const double s = s_factor(est.window.p, est.window.q);
  const Vec beta = est.cov_with_benchmark / est.benchmark_variance;
  const double factor = (1.0 - 1.0 / s) * est.benchmark_variance;

  ReconstructedCovariance rec{est.window, Mat(), 0.0, s};
  rec.sigma_bar = est.cov - factor * (beta * beta.transpose());
  rec.benchmark_sigma_bar = est.benchmark_variance / s;
  return rec;
}

ThreeWayEstimates three_way_conditional_cov(const Mat& X, const Vec& y) {
  if (y.size() < 100)
    throw domain_error("three-way split requires n >= 100, got " + std::to_string(y.size()));
  const double qt = rule_split_quantile();
  return ThreeWayEstimates{
      conditional_estimates(X, y, QuantileWindow(0.0, qt)),
      conditional_estimates(X, y, QuantileWindow(qt, 1.0 - qt)),
      conditional_estimates(X, y, QuantileWindow(1.0 - qt, 1.0)),
  };
}

ThreeWayEstimates three_way_conditional_cov(const ReturnPanel& panel,
                                            const BenchmarkSeries& bench) {
  return three_way_conditional_cov(panel.returns, bench.values);
}

Moments sample_moments(const Mat& X) {
  if (X.rows() < 1) throw domain_error("sample_moments requires at least one row");
  std::vector<Index> rows(static_cast<std::size_t>(X.rows()));
  std::iota(rows.begin(), rows.end(), Index{0});
  const Vec y = Vec::Zero(X.rows());
  const auto est = moments_over_rows(X, y, rows, QuantileWindow(0.0, 1.0));
  return Moments{est.mean, est.cov};
}

double sample_variance(const Vec& y) {
  const Index n = y.size();
  if (n < 1) throw domain_error("sample_variance requires n >= 1");
  double mean = 0.0;
  for (Index i = 0; i < n; ++i) mean += y[i];
  mean /= static_cast<double>(n);
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double c = y[i] - mean;
    acc += c * c;
  }
  return acc / static_cast<double>(n);
}

}  // namespace qcs
