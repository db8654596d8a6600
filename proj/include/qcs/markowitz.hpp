#pragma once

#include "qcs/conditional.hpp"
#include "qcs/linalg.hpp"
#include "qcs/types.hpp"

#include <string>
#include <vector>

namespace qcs {

/// Mean-variance problem: minimize w' Sigma w subject to mu' w >= c and
/// e' w = 1. Short positions are permitted.
struct PortfolioProblem {
  Vec mu;
  SpdMatrix sigma;
  double c = 0.0;
};

enum class WeightKind { min_variance, market, blended };

struct PortfolioWeights {
  Vec w;  // sums to 1
  WeightKind kind = WeightKind::min_variance;
};

/// Sigma^-1 e / (e' Sigma^-1 e).
PortfolioWeights min_variance_weights(const SpdMatrix& sigma);

/// Sigma^-1 mu / (e' Sigma^-1 mu). Throws when the normalizer is
/// numerically zero (degenerate tangency).
PortfolioWeights market_weights(const SpdMatrix& sigma, const Vec& mu);

/// Two-fund solution: the min-variance portfolio when it already meets the
/// target, otherwise the blend (1-alpha) w_minvar + alpha w_mk with
/// alpha = (c - mu'w_minvar) / (mu'(w_mk - w_minvar)).
PortfolioWeights optimal_weights(const PortfolioProblem& problem);

/// Plug-in weights from unconditional estimators over a window of returns
/// (rows = days). Requires rows >= cols + 2.
PortfolioWeights classical_weights(const Mat& window_returns, double c,
                                   const std::vector<std::string>& tickers = {});

/// Plug-in weights from the conditional mean and the reconstructed
/// covariance over the central window of the benchmark.
PortfolioWeights conditional_weights(const Mat& window_returns, const Vec& benchmark_window,
                                     const QuantileWindow& window, double c,
                                     const std::vector<std::string>& tickers = {});

}  // namespace qcs
