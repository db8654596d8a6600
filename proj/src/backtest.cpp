#include "qcs/backtest.hpp"

#include "qcs/conditional.hpp"
#include "qcs/markowitz.hpp"

#include <cmath>

namespace qcs {

double threshold(double mu_y, const BacktestConfig& config) {
  return std::max(config.threshold_multiplier * mu_y, config.threshold_floor);
}

double sharpe_ratio(const Vec& returns) {
  if (returns.size() < 2) throw domain_error("Sharpe ratio requires at least 2 returns");
  const double mean = returns.mean();
  const double sd = std::sqrt(sample_variance(returns));
  if (!(sd > 0.0)) throw numeric_error("Sharpe ratio undefined: zero return volatility");
  return mean / sd * std::sqrt(250.0);
}

Vec cumulative_curve(const Vec& returns) {
  Vec curve(returns.size());
  double acc = 1.0;
  for (Index t = 0; t < returns.size(); ++t) {
    if (!(returns[t] > -1.0))
      throw numeric_error("cumulative curve undefined: return <= -1 at position " +
                          std::to_string(t));
    acc *= 1.0 + returns[t];
    curve[t] = acc - 1.0;
  }
  return curve;
}

BacktestReport run_backtest(const ReturnPanel& panel, const BenchmarkSeries& index,
                            const BacktestConfig& config) {
  if (panel.dates != index.dates)
    throw domain_error("panel and index must be aligned to the same dates");
  if (!config.run_classical && !config.run_conditional)
    throw domain_error("no methods selected");
  if (config.hold_days < 1) throw domain_error("hold period must be >= 1 day");
  if (config.threshold_floor < 0.0) throw domain_error("threshold floor must be >= 0");
  if (config.learn_days < panel.d() + 2)
    throw domain_error("learning period " + std::to_string(config.learn_days) +
                       " is too short for " + std::to_string(panel.d()) + " assets");

  const Index n = panel.n();
  const Index t = config.learn_days;
  const Index l = config.hold_days;
  if (n < t + l)
    throw domain_error("need at least learn+hold = " + std::to_string(t + l) +
                       " observations, got " + std::to_string(n));
  if (config.run_conditional) {
    config.window.require_interior();
    // Conditioning must select >= 2 of the learning rows.
    const auto lo = static_cast<Index>(std::floor(static_cast<double>(t) * config.window.p));
    const auto hi = static_cast<Index>(std::floor(static_cast<double>(t) * config.window.q));
    if (hi - lo < 2)
      throw domain_error("window too narrow for a " + std::to_string(t) + "-day learning period");
  }

  const Index iterations = (n - t) / l;
  const Index eval_days = iterations * l;

  BacktestReport report;
  report.dates.assign(panel.dates.begin() + t, panel.dates.begin() + t + eval_days);
  report.learn_days = t;
  report.hold_days = l;
  report.window = config.window;

  struct MethodSlot {
    std::string name;
    bool conditional;
  };
  std::vector<MethodSlot> slots;
  if (config.run_classical) slots.push_back({"M", false});
  if (config.run_conditional) slots.push_back({"CM", true});

  for (const auto& slot : slots) {
    StrategyResult result;
    result.method = slot.name;
    result.returns = Vec::Zero(eval_days);

    for (Index i = 0; i < iterations; ++i) {
      const Index learn_start = i * l;
      const Index hold_start = learn_start + t;
      const Mat learn = panel.returns.middleRows(learn_start, t);
      const Vec bench_learn = index.values.segment(learn_start, t);
      const double c = threshold(bench_learn.mean(), config);
      const Date block_date = panel.dates[static_cast<std::size_t>(hold_start)];

      Vec w;
      try {
        w = slot.conditional
                ? conditional_weights(learn, bench_learn, config.window, c, panel.tickers).w
                : classical_weights(learn, c, panel.tickers).w;
      } catch (const numeric_error& e) {
        result.skipped.push_back({block_date, e.what()});
        continue;  // zero exposure for this block
      }
      result.rebalances.push_back({block_date, w, c});
      for (Index s = 0; s < l; ++s)
        result.returns[hold_start - t + s] = panel.returns.row(hold_start + s).dot(w);
    }

    if (result.returns.size() >= 2) {
      try {
        result.sharpe = sharpe_ratio(result.returns);
      } catch (const numeric_error&) {
        result.sharpe.reset();  // all blocks skipped or constant returns
      }
    }
    result.cumulative = cumulative_curve(result.returns);
    report.strategies.push_back(std::move(result));
  }
  return report;
}

}  // namespace qcs
