#pragma once

#include "qcs/data.hpp"
#include "qcs/normal.hpp"
#include "qcs/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcs {

struct BacktestConfig {
  Index learn_days = 120;  // estimation window t
  Index hold_days = 60;    // evaluation period l
  QuantileWindow window{rule_split_quantile(), 1.0 - rule_split_quantile()};
  bool run_classical = true;    // method M
  bool run_conditional = true;  // method CM
  double threshold_floor = 0.0005;
  double threshold_multiplier = 3.0;
};

/// Target return c_i = max(multiplier * mu_y, floor).
double threshold(double mu_y, const BacktestConfig& config);

struct Rebalance {
  Date date;  // first day of the hold block
  Vec weights;
  double c = 0.0;
};

struct SkippedBlock {
  Date date;
  std::string reason;
};

struct StrategyResult {
  std::string method;  // "M" or "CM"
  std::vector<Rebalance> rebalances;
  Vec returns;  // one entry per evaluated day; zeros on skipped blocks
  std::optional<double> sharpe;
  Vec cumulative;
  std::vector<SkippedBlock> skipped;
};

struct BacktestReport {
  std::vector<Date> dates;  // evaluated days, shared across strategies
  std::vector<StrategyResult> strategies;
  Index learn_days = 0;
  Index hold_days = 0;
  QuantileWindow window{0.0, 1.0};
};

/// Rolling-window backtest: I = floor((n - t) / l) iterations, each
/// estimating weights over the t days before the hold block and applying
/// them, fixed, for l days. Estimation failures skip the block with zero
/// exposure and a recorded reason. Inputs must be date-aligned.
BacktestReport run_backtest(const ReturnPanel& panel, const BenchmarkSeries& index,
                            const BacktestConfig& config);

/// Annualized mean-to-volatility ratio (mean/sd) * sqrt(250), divisor-n sd.
double sharpe_ratio(const Vec& returns);

/// Compounded cumulative returns: prod_{s<=t} (1 + R_s) - 1.
Vec cumulative_curve(const Vec& returns);

}  // namespace qcs
