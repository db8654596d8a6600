#pragma once

#include "qcs/data.hpp"
#include "qcs/types.hpp"

#include <vector>

namespace qcs {

/// Sample positions whose benchmark values have ranks [np]+1 .. [nq]
/// under a stable ascending sort (ties broken by original position).
/// Ranks are 1-based; stored positions are 0-based.
struct ConditioningIndexSet {
  std::vector<Index> indices;  // ordered by benchmark rank
  Index lower_rank = 0;        // [np]+1
  Index upper_rank = 0;        // [nq]

  Index count() const noexcept { return static_cast<Index>(indices.size()); }
};

/// Conditional moment estimates over one quantile window. All divisors
/// equal the number of selected observations, never count-1.
struct ConditionalEstimates {
  QuantileWindow window{0.0, 1.0};
  Vec mean;                // mu_B per asset
  Vec variance;            // sigma^2_B per asset
  Mat cov;                 // cov_B, d x d
  Vec cov_with_benchmark;  // cov_B(X_i, Y)
  double benchmark_mean = 0.0;
  double benchmark_variance = 0.0;  // sigma^2_B(Y), computed from the values
  Index count = 0;
};

/// Unconditional variance/covariance recovered from a central window.
struct ReconstructedCovariance {
  QuantileWindow window{0.0, 1.0};
  Mat sigma_bar;                    // d x d
  double benchmark_sigma_bar = 0.0; // sigma^2_B(Y) / s(p,q)
  double s_value = 0.0;
};

ConditioningIndexSet conditioning_indices(const Vec& benchmark, const QuantileWindow& window);
ConditioningIndexSet conditioning_indices(const BenchmarkSeries& bench,
                                          const QuantileWindow& window);

/// Matrix-level core: X is n x d, y the benchmark values (length n).
ConditionalEstimates conditional_estimates(const Mat& X, const Vec& y,
                                           const QuantileWindow& window);
ConditionalEstimates conditional_estimates(const ReturnPanel& panel,
                                           const BenchmarkSeries& bench,
                                           const QuantileWindow& window);

/// cov_bar_ij = cov_B(i,j) - (1 - 1/s) * var_B(Y) * beta_i * beta_j with
/// beta = cov_B(X,Y) / var_B(Y). Requires an interior window and a
/// nondegenerate benchmark.
ReconstructedCovariance reconstruct_covariance(const ConditionalEstimates& est);

struct ThreeWayEstimates {
  ConditionalEstimates lower;    // (0, q~]
  ConditionalEstimates central;  // (q~, 1-q~]
  ConditionalEstimates upper;    // (1-q~, 1)
};

/// Conditional estimates over the 20/60/20 partition. Requires n >= 100.
ThreeWayEstimates three_way_conditional_cov(const ReturnPanel& panel,
                                            const BenchmarkSeries& bench);
ThreeWayEstimates three_way_conditional_cov(const Mat& X, const Vec& y);

/// Unconditional mean/covariance with divisor n, accumulated in row order.
struct Moments {
  Vec mean;
  Mat cov;
};
Moments sample_moments(const Mat& X);
double sample_variance(const Vec& y);  // divisor n

}  // namespace qcs
