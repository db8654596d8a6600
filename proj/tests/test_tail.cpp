#include "qcs/tail.hpp"

#include "qcs/conditional.hpp"
#include "qcs/normal.hpp"
#include "qcs/random.hpp"
#include "qcs/serialize.hpp"

#include <doctest.h>

#include <cmath>

using namespace qcs;

namespace {
const QuantileWindow kDefaultWindow{rule_split_quantile(), 1.0 - rule_split_quantile()};
}

TEST_CASE("scale and location invariance of S_n") {
  const Vec x = sample_student_t(StreamKey{101, 0}, 5.0, 500);
  const auto base = tail_statistic(x, kDefaultWindow);

  const Vec scaled = 3.7 * x;
  const auto s1 = tail_statistic(scaled, kDefaultWindow);
  CHECK(std::abs(s1.s_n - base.s_n) <= 1e-10 * std::max(1.0, std::abs(base.s_n)));

  const Vec shifted = (x.array() * 0.4 - 2.5).matrix();
  const auto s2 = tail_statistic(shifted, kDefaultWindow);
  CHECK(std::abs(s2.s_n - base.s_n) <= 1e-10 * std::max(1.0, std::abs(base.s_n)));
}

TEST_CASE("S_n field identity") {
  const Vec x = sample_standard_normal(StreamKey{103, 0}, 400);
  const auto r = tail_statistic(x, QuantileWindow(0.2, 0.8));
  CHECK(r.n == 400);
  CHECK(r.s_n ==
        doctest::Approx(std::sqrt(400.0) * (r.sigma_hat2 / r.sigma_bar2 - 1.0)).epsilon(1e-14));
  CHECK(r.sigma_bar2 > 0.0);
}

TEST_CASE("a sample rescaled to the fixed point has S_n = 0") {
  // Rescale the tail points about the central mean until the full variance
  // equals the extrapolated central variance; S_n vanishes by construction.
  Vec x = sample_standard_normal(StreamKey{107, 0}, 300);
  const QuantileWindow window(0.2, 0.8);

  const auto set = conditioning_indices(x, window);
  std::vector<bool> central(static_cast<std::size_t>(x.size()), false);
  for (const Index i : set.indices) central[static_cast<std::size_t>(i)] = true;
  double center = 0.0;
  for (const Index i : set.indices) center += x[i];
  center /= static_cast<double>(set.indices.size());

  auto with_tail_scale = [&](double k) {
    Vec y = x;
    for (Index i = 0; i < y.size(); ++i)
      if (!central[static_cast<std::size_t>(i)]) y[i] = center + k * (x[i] - center);
    return y;
  };

  // S_n(k) is increasing in the tail-scale factor near the root; bisect it.
  double lo = 0.9, hi = 1.5;
  REQUIRE(tail_statistic(with_tail_scale(lo), window).s_n < 0.0);
  REQUIRE(tail_statistic(with_tail_scale(hi), window).s_n > 0.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail_statistic(with_tail_scale(mid), window).s_n < 0.0 ? lo : hi) = mid;
  }
  const auto result = tail_statistic(with_tail_scale(0.5 * (lo + hi)), window);
  CHECK(std::abs(result.s_n) <= 1e-5);
}

TEST_CASE("tail statistic input validation") {
  const Vec small = sample_standard_normal(StreamKey{109, 0}, 29);
  CHECK_THROWS_AS((void)tail_statistic(small, kDefaultWindow), domain_error);

  const Vec constant = Vec::Ones(100);
  CHECK_THROWS_AS((void)tail_statistic(constant, kDefaultWindow), numeric_error);

  const Vec x = sample_standard_normal(StreamKey{109, 1}, 100);
  CHECK_THROWS_AS((void)tail_statistic(x, QuantileWindow(0.0, 0.8)), domain_error);
}

TEST_CASE("null tables are deterministic and order-independent") {
  const NullTable a = mc_null_table(NullDistribution::normal, 0.0, 60, 150, kDefaultWindow, 9);
  const NullTable b = mc_null_table(NullDistribution::normal, 0.0, 60, 150, kDefaultWindow, 9);
  CHECK(null_table_to_json(a).dump() == null_table_to_json(b).dump());

  const NullTable threaded =
      mc_null_table(NullDistribution::normal, 0.0, 60, 150, kDefaultWindow, 9, /*threads=*/3);
  CHECK(null_table_to_json(a).dump() == null_table_to_json(threaded).dump());

  const NullTable other = mc_null_table(NullDistribution::normal, 0.0, 60, 150, kDefaultWindow, 10);
  CHECK(a.mean != other.mean);
}

TEST_CASE("null table quantiles are monotone and bracket the mean") {
  const NullTable t = mc_null_table(NullDistribution::student_t, 5.0, 100, 300, kDefaultWindow, 3);
  for (std::size_t i = 1; i < t.quantiles.size(); ++i) {
    CHECK(t.quantiles[i].first > t.quantiles[i - 1].first);
    CHECK(t.quantiles[i].second >= t.quantiles[i - 1].second);
  }
  CHECK(t.sd > 0.0);
  CHECK(t.quantiles.front().second <= t.mean);
  CHECK(t.quantiles.back().second >= t.mean);
}

TEST_CASE("null table argument validation") {
  CHECK_THROWS_AS((void)mc_null_table(NullDistribution::normal, 0.0, 60, 99, kDefaultWindow, 1),
                  domain_error);
  CHECK_THROWS_AS((void)mc_null_table(NullDistribution::normal, 0.0, 29, 200, kDefaultWindow, 1),
                  domain_error);
  CHECK_THROWS_AS((void)mc_null_table(NullDistribution::student_t, 0.0, 60, 200, kDefaultWindow, 1),
                  domain_error);
}

TEST_CASE("null table JSON round-trip") {
  const NullTable t = mc_null_table(NullDistribution::student_t, 3.0, 60, 120, kDefaultWindow, 17);
  const NullTable back = null_table_from_json(null_table_to_json(t));
  CHECK(back.distribution == NullDistribution::student_t);
  CHECK(back.df == t.df);
  CHECK(back.n == t.n);
  CHECK(back.reps == t.reps);
  CHECK(back.mean == t.mean);
  CHECK(back.sd == t.sd);
  CHECK(back.seed == t.seed);
  CHECK(back.quantiles == t.quantiles);
  CHECK(back.window == t.window);
}

TEST_CASE("compare_to_null z-scores") {
  const NullTable table = mc_null_table(NullDistribution::normal, 0.0, 80, 200, kDefaultWindow, 5);

  TailStatResult r;
  r.n = 80;
  r.window = table.window;
  r.s_n = table.mean;
  CHECK(compare_to_null(r, table).z_score == doctest::Approx(0.0));

  r.s_n = table.mean + table.sd;
  CHECK(compare_to_null(r, table).z_score == doctest::Approx(1.0));

  r.n = 81;
  CHECK_THROWS_AS((void)compare_to_null(r, table), domain_error);
  r.n = 80;
  r.window = QuantileWindow(0.3, 0.7);
  CHECK_THROWS_AS((void)compare_to_null(r, table), domain_error);
}

TEST_CASE("percentile interpolation is monotone and clamped") {
  const NullTable table = mc_null_table(NullDistribution::normal, 0.0, 80, 300, kDefaultWindow, 6);
  TailStatResult r;
  r.n = 80;
  r.window = table.window;

  r.s_n = table.quantiles.front().second - 10.0;
  CHECK(compare_to_null(r, table).percentile == doctest::Approx(table.quantiles.front().first));
  r.s_n = table.quantiles.back().second + 10.0;
  CHECK(compare_to_null(r, table).percentile == doctest::Approx(table.quantiles.back().first));

  double prev = 0.0;
  for (double x = -4.0; x <= 4.0; x += 0.25) {
    r.s_n = x;
    const double pct = compare_to_null(r, table).percentile;
    CHECK(pct >= prev);
    prev = pct;
  }
  r.s_n = table.quantiles[6].second;  // the stored median
  CHECK(compare_to_null(r, table).percentile == doctest::Approx(0.5));
}

TEST_CASE("normal samples stay within three table sd in at least 99% of runs") {
  const Index n = 250;
  const NullTable table = mc_null_table(NullDistribution::normal, 0.0, n, 2000, kDefaultWindow, 21);
  const int runs = 1000;
  int within = 0;
  for (int r = 0; r < runs; ++r) {
    const Vec x = sample_standard_normal(StreamKey{5150, static_cast<std::uint64_t>(r)}, n);
    const auto stat = tail_statistic(x, kDefaultWindow);
    if (std::abs(compare_to_null(stat, table).z_score) <= 3.0) ++within;
  }
  CHECK(within >= static_cast<int>(0.99 * runs));
}

TEST_CASE("table means order by tail weight at moderate scale") {
  const Index n = 500;
  const Index reps = 400;
  const auto normal = mc_null_table(NullDistribution::normal, 0.0, n, reps, kDefaultWindow, 77);
  const auto t3 = mc_null_table(NullDistribution::student_t, 3.0, n, reps, kDefaultWindow, 77);
  const auto t5 = mc_null_table(NullDistribution::student_t, 5.0, n, reps, kDefaultWindow, 77);
  const auto t10 = mc_null_table(NullDistribution::student_t, 10.0, n, reps, kDefaultWindow, 77);
  const auto t30 = mc_null_table(NullDistribution::student_t, 30.0, n, reps, kDefaultWindow, 77);
  CHECK(t3.mean > t5.mean);
  CHECK(t5.mean > t10.mean);
  CHECK(t10.mean > t30.mean);
  CHECK(t30.mean > normal.mean);
}

TEST_CASE("normal table means contract toward zero as n grows") {
  // |mean| at n = 10^4 below |mean| at n = 250, in median over 10 seeds
  int smaller = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto coarse =
        mc_null_table(NullDistribution::normal, 0.0, 250, 400, kDefaultWindow, 1000 + seed);
    const auto fine =
        mc_null_table(NullDistribution::normal, 0.0, 10000, 400, kDefaultWindow, 2000 + seed);
    if (std::abs(fine.mean) < std::abs(coarse.mean)) ++smaller;
  }
  CHECK(smaller >= 6);
}
