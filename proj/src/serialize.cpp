#include "qcs/serialize.hpp"

#include <fstream>
#include <ostream>

namespace qcs {

namespace {
constexpr int kNullTableFormatVersion = 1;
}

json to_json(const QuantileWindow& window) { return json{{"p", window.p}, {"q", window.q}}; }

QuantileWindow window_from_json(const json& j) {
  return QuantileWindow(j.at("p").get<double>(), j.at("q").get<double>());
}

json to_json(const Vec& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json to_json(const Mat& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json estimates_to_json(const ConditionalEstimates& est, const ReconstructedCovariance* rec) {
  json j{{"window", to_json(est.window)},
         {"mean", to_json(est.mean)},
         {"variance", to_json(est.variance)},
         {"cov", to_json(est.cov)},
         {"cov_with_benchmark", to_json(est.cov_with_benchmark)},
         {"benchmark_mean", est.benchmark_mean},
         {"benchmark_variance", est.benchmark_variance},
         {"count", est.count}};
  if (rec != nullptr) {
    j["s_value"] = rec->s_value;
    j["sigma_bar"] = to_json(rec->sigma_bar);
    j["benchmark_sigma_bar"] = rec->benchmark_sigma_bar;
  }
  return j;
}

json null_table_to_json(const NullTable& table) {
  json quantiles = json::array();
  for (const auto& [prob, value] : table.quantiles)
    quantiles.push_back(json{{"prob", prob}, {"value", value}});
  json j{{"format_version", kNullTableFormatVersion},
         {"distribution",
          table.distribution == NullDistribution::normal ? "normal" : "student-t"},
         {"n", table.n},
         {"reps", table.reps},
         {"window", to_json(table.window)},
         {"mean", table.mean},
         {"sd", table.sd},
         {"quantiles", std::move(quantiles)},
         {"seed", table.seed}};
  if (table.distribution == NullDistribution::student_t) j["df"] = table.df;
  return j;
}

NullTable null_table_from_json(const json& j) {
  if (j.at("format_version").get<int>() != kNullTableFormatVersion)
    throw data_error("unsupported null-table format version");
  NullTable table{NullDistribution::normal, 0.0,
                  j.at("n").get<Index>(), j.at("reps").get<Index>(),
                  window_from_json(j.at("window")),
                  j.at("mean").get<double>(), j.at("sd").get<double>(),
                  {}, j.at("seed").get<std::uint64_t>()};
  const std::string dist = j.at("distribution").get<std::string>();
  if (dist == "student-t") {
    table.distribution = NullDistribution::student_t;
    table.df = j.at("df").get<double>();
  } else if (dist != "normal") {
    throw data_error("unknown null-table distribution '" + dist + "'");
  }
  for (const auto& q : j.at("quantiles"))
    table.quantiles.emplace_back(q.at("prob").get<double>(), q.at("value").get<double>());
  return table;
}

NullTable load_null_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open null table: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw data_error("invalid null-table JSON in " + path + ": " + e.what());
  }
  try {
    return null_table_from_json(j);
  } catch (const json::exception& e) {
    throw data_error("malformed null table " + path + ": " + e.what());
  }
}

json weights_to_json(const std::vector<std::string>& tickers, const PortfolioWeights& weights,
                     const std::string& method, const QuantileWindow* window, double c) {
  json j{{"tickers", tickers},
         {"weights", to_json(weights.w)},
         {"method", method},
         {"c", c}};
  if (window != nullptr) j["window"] = to_json(*window);
  return j;
}

json qq_metadata_json(const QqDataset& data) {
  return json{{"n", data.n},
              {"level", data.level},
              {"window", to_json(data.window)},
              {"standardized", data.standardized},
              {"band_method", "pointwise"}};
}

json report_to_json(const BacktestReport& report) {
  json strategies = json::array();
  for (const auto& s : report.strategies) {
    json rebalances = json::array();
    for (const auto& r : s.rebalances)
      rebalances.push_back(json{{"date", r.date.iso()}, {"weights", to_json(r.weights)},
                                {"c", r.c}});
    json returns = json::array();
    for (Index i = 0; i < s.returns.size(); ++i)
      returns.push_back(json{{"date", report.dates[static_cast<std::size_t>(i)].iso()},
                             {"value", s.returns[i]}});
    json skipped = json::array();
    for (const auto& sk : s.skipped)
      skipped.push_back(json{{"date", sk.date.iso()}, {"reason", sk.reason}});
    json entry{{"method", s.method},
               {"rebalances", std::move(rebalances)},
               {"returns", std::move(returns)},
               {"sharpe", s.sharpe ? json(*s.sharpe) : json()},
               {"cumulative", to_json(s.cumulative)},
               {"skipped", std::move(skipped)}};
    strategies.push_back(std::move(entry));
  }
  return json{{"learn", report.learn_days},
              {"hold", report.hold_days},
              {"window", to_json(report.window)},
              {"strategies", std::move(strategies)}};
}

void write_cumulative_csv(std::ostream& out, const BacktestReport& report) {
  out << "date";
  for (const auto& s : report.strategies) out << ',' << s.method;
  out << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < report.dates.size(); ++i) {
    out << report.dates[i].iso();
    for (const auto& s : report.strategies) out << ',' << s.cumulative[static_cast<Index>(i)];
    out << '\n';
  }
}

}  // namespace qcs
