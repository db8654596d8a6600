#pragma once

#include "qcs/linalg.hpp"
#include "qcs/types.hpp"

#include <array>
#include <cstdint>

namespace qcs {

/// Counter-based random stream (Philox4x32-10, Salmon et al. 2011).
/// The seed forms the key and the stream index occupies the upper half
/// of the 128-bit counter, so every (seed, stream_index) pair addresses
/// a disjoint counter range: streams are independent by construction
/// and reproducible regardless of execution order.
class PhiloxStream {
 public:
  explicit PhiloxStream(StreamKey key) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;

  /// Uniform double in the open interval (0,1) with 53-bit resolution.
  double next_uniform() noexcept;

  /// Standard normal via the inverse-CDF transform.
  double next_normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
  double next_gamma(double shape);

  /// Chi-squared with df > 0 degrees of freedom. Integer df up to 64 uses
  /// a sum of squared normals, larger or fractional df goes through the
  /// gamma sampler.
  double next_chi_squared(double df);

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> block_;
  int pos_;
};

/// n i.i.d. standard normal draws, deterministic in the key.
Vec sample_standard_normal(StreamKey key, Index n);

/// n i.i.d. Student-t draws with df > 0, generated as Z / sqrt(V/df).
Vec sample_student_t(StreamKey key, double df, Index n);

/// n rows from N_d(mean, cov), generated as mean + L z with L the
/// Cholesky factor of cov.
Mat sample_mv_normal(StreamKey key, const Vec& mean, const SpdMatrix& cov, Index n);

}  // namespace qcs
