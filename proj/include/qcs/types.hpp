#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcs {

using Scalar = double;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

// Error taxonomy used across the library. The CLI maps domain_error to
// exit code 2 (usage/configuration) and data_error/numeric_error to
// exit code 1 (data or numeric failure).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A probability value, validated to lie in [0,1].
class Probability {
 public:
  Probability(double v) : value_(v) {
    if (!(v >= 0.0 && v <= 1.0))
      throw domain_error("probability outside [0,1]: " + std::to_string(v));
  }
  operator double() const noexcept { return value_; }
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Quantile pair (p,q) with 0 <= p < q <= 1 defining a conditioning window.
struct QuantileWindow {
  double p;
  double q;

  QuantileWindow(double p_, double q_) : p(p_), q(q_) {
    if (!(p_ >= 0.0 && q_ <= 1.0 && p_ < q_))
      throw domain_error("quantile window requires 0 <= p < q <= 1, got p=" +
                         std::to_string(p_) + " q=" + std::to_string(q_));
  }

  bool interior() const noexcept { return p > 0.0 && q < 1.0; }

  void require_interior() const {
    if (!interior())
      throw domain_error("operation requires an interior window 0 < p < q < 1");
  }

  friend bool operator==(const QuantileWindow& a, const QuantileWindow& b) noexcept {
    return a.p == b.p && a.q == b.q;
  }
};

/// Identifies a reproducible random stream. Distinct (seed, stream_index)
/// pairs yield independent sequences; identical pairs yield identical ones.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
};

}  // namespace qcs
