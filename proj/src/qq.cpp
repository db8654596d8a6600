#include "qcs/qq.hpp"

#include "qcs/conditional.hpp"
#include "qcs/normal.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace qcs {

std::vector<QqPoint> qq_points(const Vec& values, bool standardize) {
  const Index n = values.size();
  if (n < 2) throw domain_error("qq_points requires at least 2 observations");

  std::vector<double> sorted(values.data(), values.data() + n);
  std::sort(sorted.begin(), sorted.end());

  double shift = 0.0, scale = 1.0;
  if (standardize) {
    const Eigen::Map<const Vec> view(sorted.data(), n);
    const double sd = std::sqrt(sample_variance(view));
    if (!(sd > 0.0)) throw numeric_error("cannot standardize a constant sample");
    shift = view.mean();
    scale = sd;
  }

  std::vector<QqPoint> points(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    points[static_cast<std::size_t>(k)] = {normal_quantile(u),
                                           (sorted[static_cast<std::size_t>(k)] - shift) / scale};
  }
  return points;
}

std::vector<QqBandPoint> qq_band(Index n, double level) {
  if (n < 2) throw domain_error("qq_band requires n >= 2");
  if (!(level > 0.5 && level < 1.0))
    throw domain_error("band level must lie in (0.5, 1), got " + std::to_string(level));

  const double z = normal_quantile(0.5 * (1.0 + level));
  std::vector<QqBandPoint> band(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    const double x = normal_quantile(u);
    const double half = z * std::sqrt(u * (1.0 - u) / static_cast<double>(n)) / normal_pdf(x);
    band[static_cast<std::size_t>(k)] = {x, x - half, x + half};
  }
  return band;
}

std::array<double, 2> split_markers(const QuantileWindow& window) {
  window.require_interior();
  return {normal_quantile(window.p), normal_quantile(window.q)};
}

QqDataset qq_dataset(const Vec& values, bool standardize, double level,
                     const QuantileWindow& window) {
  QqDataset data{qq_points(values, standardize), qq_band(values.size(), level),
                 split_markers(window), values.size(), standardize, level, window};
  return data;
}

void write_qq_csv(std::ostream& out, const QqDataset& data) {
  out << "kind,theoretical,value,lower,upper\n";
  out.precision(17);
  for (const auto& p : data.points)
    out << "point," << p.theoretical << ',' << p.sample << ",,\n";
  for (const auto& b : data.band)
    out << "band," << b.theoretical << ",," << b.lower << ',' << b.upper << '\n';
  for (const double m : data.markers) out << "marker," << m << ",,,\n";
}

}  // namespace qcs
