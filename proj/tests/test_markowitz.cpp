#include "qcs/markowitz.hpp"

#include "qcs/normal.hpp"
#include "qcs/random.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace qcs;

TEST_CASE("min variance weights") {
  const auto w2 = min_variance_weights(SpdMatrix::identity(2));
  CHECK(w2.w[0] == doctest::Approx(0.5));
  CHECK(w2.w[1] == doctest::Approx(0.5));

  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 4.0;
  const auto wd = min_variance_weights(SpdMatrix(diag));
  CHECK(wd.w[0] == doctest::Approx(0.8));
  CHECK(wd.w[1] == doctest::Approx(0.2));

  for (Index d : {3, 5, 9}) {
    const auto w = min_variance_weights(SpdMatrix::identity(d));
    for (Index i = 0; i < d; ++i) CHECK(w.w[i] == doctest::Approx(1.0 / static_cast<double>(d)));
  }
}

TEST_CASE("min variance is scale equivariant") {
  unsigned long state = 5;
  const Mat sigma = test::random_spd(4, state);
  const Vec a = min_variance_weights(SpdMatrix(sigma)).w;
  const Vec b = min_variance_weights(SpdMatrix(Mat(7.3 * sigma))).w;
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("market weights") {
  Vec mu(2);
  mu << 0.1, 0.2;
  const auto w = market_weights(SpdMatrix::identity(2), mu);
  CHECK(w.w[0] == doctest::Approx(1.0 / 3.0));
  CHECK(w.w[1] == doctest::Approx(2.0 / 3.0));

  // mu proportional to e collapses to the min-variance portfolio
  unsigned long state = 8;
  const Mat sigma = test::random_spd(3, state);
  const Vec flat = Vec::Constant(3, 0.07);
  const Vec wm = market_weights(SpdMatrix(sigma), flat).w;
  const Vec wv = min_variance_weights(SpdMatrix(sigma)).w;
  CHECK((wm - wv).cwiseAbs().maxCoeff() <= 1e-10);

  // e' Sigma^-1 mu = 0 is degenerate
  Vec balanced(2);
  balanced << 1.0, -1.0;
  CHECK_THROWS_AS((void)market_weights(SpdMatrix::identity(2), balanced), numeric_error);
}

TEST_CASE("optimal weights hand case with binding target") {
  Vec mu(2);
  mu << 0.1, 0.2;
  const auto w = optimal_weights({mu, SpdMatrix::identity(2), 0.18});
  CHECK(w.kind == WeightKind::blended);
  CHECK(w.w[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(w.w[1] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(mu.dot(w.w) == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(w.w.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("optimal weights fall back to min variance when it meets the target") {
  Vec mu(2);
  mu << 0.1, 0.2;
  const auto w = optimal_weights({mu, SpdMatrix::identity(2), 0.10});
  CHECK(w.kind == WeightKind::min_variance);
  CHECK(w.w[0] == doctest::Approx(0.5));
  CHECK(w.w[1] == doctest::Approx(0.5));
}

TEST_CASE("one asset always gets the full budget") {
  Vec mu(1);
  mu << -5.0;
  const auto w = optimal_weights({mu, SpdMatrix::identity(1), 100.0});
  CHECK(w.w.size() == 1);
  CHECK(w.w[0] == doctest::Approx(1.0));
}

TEST_CASE("unreachable target with identical funds is infeasible") {
  // mu proportional to e: market equals min-variance, the blend cannot move
  Vec mu(2);
  mu << 0.05, 0.05;
  CHECK_THROWS_AS((void)optimal_weights({mu, SpdMatrix::identity(2), 0.5}), numeric_error);
}

TEST_CASE("budget and target constraints across random problems") {
  unsigned long state = 99;
  for (int rep = 0; rep < 40; ++rep) {
    const int d = 2 + rep % 4;
    const Mat sigma = test::random_spd(d, state);
    Vec mu(d);
    for (int i = 0; i < d; ++i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      mu[i] = 0.02 + 0.2 * static_cast<double>((state >> 11) & 0xFFFF) / 65536.0;
    }
    const double c = 0.01 + 0.1 * static_cast<double>(rep) / 40.0;
    const auto w = optimal_weights({mu, SpdMatrix(sigma), c});
    CHECK(std::abs(w.w.sum() - 1.0) <= 1e-10);
    CHECK(mu.dot(w.w) >= c - 1e-10);
    if (w.kind == WeightKind::blended) CHECK(mu.dot(w.w) == doctest::Approx(c).epsilon(1e-10));
  }
}

TEST_CASE("solver variance matches the projected-gradient oracle") {
  unsigned long state = 314159;
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + rep % 4;
    const Mat sigma = test::random_spd(d, state);
    Vec mu(d);
    for (int i = 0; i < d; ++i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      mu[i] = 0.05 + 0.3 * static_cast<double>((state >> 11) & 0xFFFF) / 65536.0;
    }
    const double c = mu.mean() * 1.05;
    const auto w = optimal_weights({mu, SpdMatrix(sigma), c});
    const double solver_var = w.w.dot(sigma * w.w);
    const double oracle_var = test::projected_gradient_min_variance(sigma, mu, c, 150000);
    CHECK(solver_var <= oracle_var + 1e-6);
  }
}

TEST_CASE("classical weights converge to the population solution") {
  Mat sigma(3, 3);
  sigma << 1.0, 0.3, 0.1, 0.3, 1.5, 0.2, 0.1, 0.2, 0.8;
  Vec mu(3);
  mu << 0.05, 0.09, 0.07;
  const double c = 0.08;
  const Vec population = optimal_weights({mu, SpdMatrix(sigma), c}).w;

  const Mat X = sample_mv_normal(StreamKey{55, 0}, mu, SpdMatrix(sigma), 400000);
  const Vec estimated = classical_weights(X, c).w;
  CHECK((estimated - population).norm() <= 0.02);
}

TEST_CASE("classical weights input validation") {
  Mat X(4, 3);
  X.setRandom();
  CHECK_THROWS_AS((void)classical_weights(X, 0.0), domain_error);  // rows < d + 2

  // perfectly collinear assets are reported by name
  Mat C(30, 2);
  for (Index i = 0; i < 30; ++i) {
    C(i, 0) = std::sin(static_cast<double>(i));
    C(i, 1) = 2.0 * C(i, 0);
  }
  CHECK_THROWS_WITH_AS((void)classical_weights(C, 0.0, {"AAA", "BBB"}),
                       doctest::Contains("AAA"), numeric_error);
  CHECK_THROWS_WITH_AS((void)classical_weights(C, 0.0, {"AAA", "BBB"}),
                       doctest::Contains("collinear"), numeric_error);

  // zero-variance asset
  Mat Z(30, 2);
  for (Index i = 0; i < 30; ++i) {
    Z(i, 0) = std::cos(static_cast<double>(i));
    Z(i, 1) = 1.0;
  }
  CHECK_THROWS_WITH_AS((void)classical_weights(Z, 0.0, {"AAA", "BBB"}),
                       doctest::Contains("zero variance"), numeric_error);
}

TEST_CASE("conditional weights reject boundary windows") {
  Mat X(40, 2);
  X.setRandom();
  const Vec y = X.rowwise().sum();
  CHECK_THROWS_AS((void)conditional_weights(X, y, QuantileWindow(0.0, 1.0), 0.0), domain_error);
}

TEST_CASE("conditional weights match a step-by-step evaluation on eight rows") {
  Mat X(8, 2);
  X << 0.01, 0.02,
       -0.03, 0.01,
       0.02, -0.01,
       0.00, 0.03,
       -0.01, -0.02,
       0.04, 0.01,
       -0.02, 0.02,
       0.01, -0.03;
  Vec y(8);
  y << 0.5, -1.0, 0.8, 1.2, -0.7, 2.0, -1.5, 0.3;
  const QuantileWindow window(0.2, 0.8);
  const double c = 0.05;

  // formula-by-formula evaluation through the independent naive oracle
  const auto naive = test::naive_conditional(X, y, window.p, window.q);
  const double s = s_factor(window.p, window.q);
  Mat sigma_bar(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      sigma_bar(i, j) =
          naive.cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
          (1.0 - 1.0 / s) * naive.cov_with_benchmark[static_cast<std::size_t>(i)] *
              naive.cov_with_benchmark[static_cast<std::size_t>(j)] / naive.bench_var;
  Vec mu_B(2);
  mu_B << naive.mean[0], naive.mean[1];

  const Vec expected = optimal_weights({mu_B, SpdMatrix(sigma_bar), c}).w;
  const Vec got = conditional_weights(X, y, window, c).w;
  CHECK((got - expected).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(got.sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("classical and conditional weights approach each other on normal markets") {
  Mat sigma(3, 3);
  sigma << 2.0, 0.5, 0.2, 0.5, 1.0, 0.3, 0.2, 0.3, 1.5;
  Vec mu(3);
  mu << 0.04, 0.10, 0.07;
  const double c = 0.09;

  const Index n = 100000;
  const Mat X = sample_mv_normal(StreamKey{60, 0}, mu, SpdMatrix(sigma), n);
  const Vec y = X * Vec::Constant(3, 1.0 / 3.0);

  const Vec w_m = classical_weights(X, c).w;
  const Vec w_cm = conditional_weights(X, y, QuantileWindow(0.2, 0.8), c).w;
  CHECK((w_m - w_cm).norm() <= 0.05);
}

TEST_CASE("weight difference medians shrink with sample size") {
  // Plug-in convergence at reduced scale; the full 200-rep version runs
  // in the acceptance suite.
  Mat sigma(3, 3);
  sigma << 1.0, 0.3, 0.1, 0.3, 1.2, 0.2, 0.1, 0.2, 0.9;
  Vec mu(3);
  mu << 0.02, 0.10, 0.18;  // tangency well separated from min-variance
  const double c = 0.12;
  const Vec loadings = Vec::Constant(3, 1.0 / 3.0);

  auto median_diff = [&](Index n, std::uint64_t seed_base) {
    std::vector<double> diffs;
    for (int rep = 0; rep < 21; ++rep) {
      const Mat X = sample_mv_normal(StreamKey{seed_base, static_cast<std::uint64_t>(rep)},
                                     mu, SpdMatrix(sigma), n);
      const Vec y = X * loadings;
      const Vec w_m = classical_weights(X, c).w;
      const Vec w_cm = conditional_weights(X, y, QuantileWindow(0.2, 0.8), c).w;
      diffs.push_back((w_m - w_cm).norm());
    }
    std::nth_element(diffs.begin(), diffs.begin() + 10, diffs.end());
    return diffs[10];
  };

  const double at_1k = median_diff(1000, 70);
  const double at_10k = median_diff(10000, 71);
  CHECK(at_10k <= at_1k);
}
