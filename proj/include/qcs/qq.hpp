#pragma once

#include "qcs/types.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace qcs {

struct QqPoint {
  double theoretical = 0.0;
  double sample = 0.0;
};

struct QqBandPoint {
  double theoretical = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Plot-ready Q-Q data: ordered sample vs normal quantiles at plotting
/// positions (k-0.5)/n, a pointwise confidence band, and the two window
/// marker abscissae.
struct QqDataset {
  std::vector<QqPoint> points;
  std::vector<QqBandPoint> band;
  std::array<double, 2> markers{};
  Index n = 0;
  bool standardized = false;
  double level = 0.95;
  QuantileWindow window{0.0, 1.0};
};

/// Sample coordinate = k-th order statistic (optionally standardized by
/// sample mean and divisor-n sd), theoretical = Phi^-1((k-0.5)/n).
std::vector<QqPoint> qq_points(const Vec& values, bool standardize);

/// Pointwise order-statistic band around the normal quantile function at
/// the given confidence level (0.5 < level < 1).
std::vector<QqBandPoint> qq_band(Index n, double level);

/// Theoretical-axis positions of the window's quantile lines.
std::array<double, 2> split_markers(const QuantileWindow& window);

QqDataset qq_dataset(const Vec& values, bool standardize, double level,
                     const QuantileWindow& window);

/// CSV with columns kind,theoretical,value,lower,upper; n point rows,
/// n band rows and two marker rows.
void write_qq_csv(std::ostream& out, const QqDataset& data);

}  // namespace qcs
