#pragma once

#include "qcs/backtest.hpp"
#include "qcs/conditional.hpp"
#include "qcs/markowitz.hpp"
#include "qcs/qq.hpp"
#include "qcs/tail.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace qcs {

using json = nlohmann::json;

json to_json(const QuantileWindow& window);
QuantileWindow window_from_json(const json& j);

json to_json(const Vec& v);
json to_json(const Mat& m);  // row-major nested arrays

/// Conditional estimates as a JSON object; `s_value` and the
/// reconstructed matrices are attached when a reconstruction is supplied.
json estimates_to_json(const ConditionalEstimates& est,
                       const ReconstructedCovariance* rec = nullptr);

json null_table_to_json(const NullTable& table);
NullTable null_table_from_json(const json& j);
NullTable load_null_table(const std::string& path);

json weights_to_json(const std::vector<std::string>& tickers, const PortfolioWeights& weights,
                     const std::string& method, const QuantileWindow* window, double c);

json qq_metadata_json(const QqDataset& data);

json report_to_json(const BacktestReport& report);
void write_cumulative_csv(std::ostream& out, const BacktestReport& report);

}  // namespace qcs
