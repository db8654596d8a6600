#pragma once

#include "qcs/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qcs {

/// S_n = sqrt(n) * (sigma_hat2 / sigma_bar2 - 1): positive values indicate
/// tails heavier than a normal sample would produce.
struct TailStatResult {
  double s_n = 0.0;
  Index n = 0;
  QuantileWindow window{0.0, 1.0};
  double sigma_hat2 = 0.0;  // unconditional variance, divisor n
  double sigma_bar2 = 0.0;  // central-window variance rescaled by 1/s(p,q)
};

enum class NullDistribution { normal, student_t };

/// Monte Carlo summary of S_n under a reference distribution.
struct NullTable {
  NullDistribution distribution = NullDistribution::normal;
  double df = 0.0;  // degrees of freedom when student_t
  Index n = 0;
  Index reps = 0;
  QuantileWindow window{0.0, 1.0};
  double mean = 0.0;
  double sd = 0.0;
  std::vector<std::pair<double, double>> quantiles;  // (prob, value), prob ascending
  std::uint64_t seed = 0;
};

struct NullComparison {
  double z_score = 0.0;
  double percentile = 0.0;
};

/// Tail statistic of a scalar sample; the series is its own benchmark.
/// Requires n >= 30 and an interior window.
TailStatResult tail_statistic(const Vec& values, const QuantileWindow& window);

/// Simulates `reps` independent samples (stream_index = replication number)
/// and summarizes their S_n values. Deterministic in (seed, reps, n);
/// results do not depend on the worker count.
NullTable mc_null_table(NullDistribution dist, double df, Index n, Index reps,
                        const QuantileWindow& window, std::uint64_t seed,
                        int threads = 1);

/// z-score and interpolated percentile of a result against a null table.
/// The table must have been built for the same n and window.
NullComparison compare_to_null(const TailStatResult& result, const NullTable& table);

}  // namespace qcs
