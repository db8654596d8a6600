#include "qcs/markowitz.hpp"

#include <cmath>

namespace qcs {

namespace {

std::string asset_name(const std::vector<std::string>& tickers, Index j) {
  return j < static_cast<Index>(tickers.size()) ? tickers[static_cast<std::size_t>(j)]
                                                : "column " + std::to_string(j);
}

// On a failed factorization, point at zero-variance or collinear assets.
[[noreturn]] void rethrow_singular(const Mat& cov, const std::vector<std::string>& tickers,
                                   const numeric_error& err) {
  const Index d = cov.rows();
  for (Index j = 0; j < d; ++j)
    if (!(cov(j, j) > 0.0))
      throw numeric_error("covariance is singular: asset " + asset_name(tickers, j) +
                          " has zero variance");
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      const double rho = cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
      if (std::abs(rho) >= 1.0 - 1e-8)
        throw numeric_error("covariance is singular: assets " + asset_name(tickers, i) +
                            " and " + asset_name(tickers, j) + " are collinear");
    }
  throw numeric_error(std::string("covariance is singular: ") + err.what());
}

PortfolioWeights optimal_from_estimates(const Vec& mu, const Mat& cov, double c,
                                        const std::vector<std::string>& tickers) {
  SpdMatrix sigma(cov);
  try {
    (void)spd_solve(sigma, Vec::Ones(sigma.dim()));
  } catch (const numeric_error& e) {
    rethrow_singular(cov, tickers, e);
  }
  return optimal_weights(PortfolioProblem{mu, std::move(sigma), c});
}

}  // namespace

PortfolioWeights min_variance_weights(const SpdMatrix& sigma) {
  const Vec ones = Vec::Ones(sigma.dim());
  const Vec x = spd_solve(sigma, ones);
  return PortfolioWeights{x / x.sum(), WeightKind::min_variance};
}

PortfolioWeights market_weights(const SpdMatrix& sigma, const Vec& mu) {
  if (mu.size() != sigma.dim()) throw domain_error("mu/sigma dimension mismatch");
  const Vec x = spd_solve(sigma, mu);
  const double normalizer = x.sum();
  if (std::abs(normalizer) <= 1e-12 * x.cwiseAbs().sum())
    throw numeric_error("degenerate tangency: e' Sigma^-1 mu is numerically zero");
  return PortfolioWeights{x / normalizer, WeightKind::market};
}

PortfolioWeights optimal_weights(const PortfolioProblem& problem) {
  if (problem.mu.size() != problem.sigma.dim())
    throw domain_error("mu/sigma dimension mismatch");

  // One asset: the budget constraint pins the whole portfolio.
  if (problem.sigma.dim() == 1)
    return PortfolioWeights{Vec::Ones(1), WeightKind::min_variance};

  PortfolioWeights minvar = min_variance_weights(problem.sigma);
  const double r_minvar = problem.mu.dot(minvar.w);
  if (r_minvar >= problem.c) return minvar;

  const PortfolioWeights market = market_weights(problem.sigma, problem.mu);
  const double denom = problem.mu.dot(market.w - minvar.w);
  if (std::abs(denom) <= 1e-12)
    throw numeric_error("infeasible target return: blend denominator is zero and the "
                        "minimum-variance portfolio does not reach c");
  const double alpha = (problem.c - r_minvar) / denom;
  return PortfolioWeights{(1.0 - alpha) * minvar.w + alpha * market.w, WeightKind::blended};
}

PortfolioWeights classical_weights(const Mat& window_returns, double c,
                                   const std::vector<std::string>& tickers) {
  const Index rows = window_returns.rows();
  const Index d = window_returns.cols();
  if (rows < d + 2)
    throw domain_error("estimation window has " + std::to_string(rows) + " rows, need >= " +
                       std::to_string(d + 2));
  const Moments m = sample_moments(window_returns);
  return optimal_from_estimates(m.mean, m.cov, c, tickers);
}

PortfolioWeights conditional_weights(const Mat& window_returns, const Vec& benchmark_window,
                                     const QuantileWindow& window, double c,
                                     const std::vector<std::string>& tickers) {
  const Index rows = window_returns.rows();
  const Index d = window_returns.cols();
  if (rows < d + 2)
    throw domain_error("estimation window has " + std::to_string(rows) + " rows, need >= " +
                       std::to_string(d + 2));
  window.require_interior();
  const ConditionalEstimates est = conditional_estimates(window_returns, benchmark_window, window);
  const ReconstructedCovariance rec = reconstruct_covariance(est);
  return optimal_from_estimates(est.mean, rec.sigma_bar, c, tickers);
}

}  // namespace qcs
