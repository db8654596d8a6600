#include "qcs/tail.hpp"

#include "qcs/conditional.hpp"
#include "qcs/normal.hpp"
#include "qcs/random.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace qcs {

namespace {

const double kQuantileProbs[] = {0.005, 0.01, 0.025, 0.05, 0.1,   0.25, 0.5,
                                 0.75,  0.9,  0.95,  0.975, 0.99, 0.995};

double interpolated_quantile(const std::vector<double>& sorted, double prob) {
  const std::size_t m = sorted.size();
  const double h = prob * static_cast<double>(m - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= m) return sorted.back();
  const double w = h - static_cast<double>(lo);
  return sorted[lo] * (1.0 - w) + sorted[lo + 1] * w;
}

}  // namespace

TailStatResult tail_statistic(const Vec& values, const QuantileWindow& window) {
  const Index n = values.size();
  if (n < 30) throw domain_error("tail statistic requires n >= 30, got " + std::to_string(n));
  window.require_interior();

  const double sigma_hat2 = sample_variance(values);
  // The series is its own benchmark: condition on its own central window.
  const Mat as_matrix = values;
  const ConditionalEstimates est = conditional_estimates(as_matrix, values, window);
  if (!(est.benchmark_variance > 0.0))
    throw numeric_error("degenerate central window: all selected values are equal");

  const double s = s_factor(window.p, window.q);
  const double sigma_bar2 = est.benchmark_variance / s;
  TailStatResult result{0.0, n, window, sigma_hat2, sigma_bar2};
  result.s_n = std::sqrt(static_cast<double>(n)) * (sigma_hat2 / sigma_bar2 - 1.0);
  return result;
}

NullTable mc_null_table(NullDistribution dist, double df, Index n, Index reps,
                        const QuantileWindow& window, std::uint64_t seed, int threads) {
  if (reps < 100) throw domain_error("null table requires reps >= 100");
  if (n < 30) throw domain_error("null table requires n >= 30");
  if (dist == NullDistribution::student_t && !(df > 0.0))
    throw domain_error("student-t null table requires df > 0");
  window.require_interior();

  std::vector<double> stats(static_cast<std::size_t>(reps));
  auto run_range = [&](Index begin, Index end) {
    for (Index r = begin; r < end; ++r) {
      const StreamKey key{seed, static_cast<std::uint64_t>(r)};
      const Vec sample = dist == NullDistribution::normal
                             ? sample_standard_normal(key, n)
                             : sample_student_t(key, df, n);
      stats[static_cast<std::size_t>(r)] = tail_statistic(sample, window).s_n;
    }
  };

  if (threads <= 1) {
    run_range(0, reps);
  } else {
    // Replications are keyed by stream index, so any partition of the
    // range produces identical tables.
    std::vector<std::thread> pool;
    const Index chunk = (reps + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const Index begin = static_cast<Index>(t) * chunk;
      const Index end = std::min(reps, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  NullTable table{dist, dist == NullDistribution::student_t ? df : 0.0,
                  n, reps, window, 0.0, 0.0, {}, seed};
  double mean = 0.0;
  for (const double v : stats) mean += v;
  mean /= static_cast<double>(reps);
  double var = 0.0;
  for (const double v : stats) var += (v - mean) * (v - mean);
  var /= static_cast<double>(reps);
  table.mean = mean;
  table.sd = std::sqrt(var);

  std::vector<double> sorted = stats;
  std::sort(sorted.begin(), sorted.end());
  for (const double prob : kQuantileProbs)
    table.quantiles.emplace_back(prob, interpolated_quantile(sorted, prob));
  return table;
}

NullComparison compare_to_null(const TailStatResult& result, const NullTable& table) {
  if (result.n != table.n)
    throw domain_error("null table was built for n=" + std::to_string(table.n) +
                       ", result has n=" + std::to_string(result.n));
  if (!(result.window == table.window))
    throw domain_error("null table window does not match the result window");
  if (!(table.sd > 0.0)) throw numeric_error("null table has zero spread");

  NullComparison cmp;
  cmp.z_score = (result.s_n - table.mean) / table.sd;

  // Piecewise-linear empirical CDF through the stored quantiles, clamped
  // to the outermost stored probabilities.
  const auto& qs = table.quantiles;
  const double x = result.s_n;
  if (x <= qs.front().second) {
    cmp.percentile = qs.front().first;
  } else if (x >= qs.back().second) {
    cmp.percentile = qs.back().first;
  } else {
    for (std::size_t i = 1; i < qs.size(); ++i) {
      if (x <= qs[i].second) {
        const double x0 = qs[i - 1].second, x1 = qs[i].second;
        const double p0 = qs[i - 1].first, p1 = qs[i].first;
        cmp.percentile = x1 > x0 ? p0 + (p1 - p0) * (x - x0) / (x1 - x0) : p1;
        break;
      }
    }
  }
  return cmp;
}

}  // namespace qcs
