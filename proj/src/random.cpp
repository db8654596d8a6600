#include "qcs/random.hpp"

#include "qcs/normal.hpp"

#include <cmath>

namespace qcs {

namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) noexcept {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) noexcept {
  std::uint32_t hi0, lo0, hi1, lo1;
  mul_hi_lo(kPhiloxM4x32A, ctr[0], hi0, lo0);
  mul_hi_lo(kPhiloxM4x32B, ctr[2], hi1, lo1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

PhiloxStream::PhiloxStream(StreamKey key) noexcept
    : counter_{0, 0, static_cast<std::uint32_t>(key.stream_index),
               static_cast<std::uint32_t>(key.stream_index >> 32)},
      key_{static_cast<std::uint32_t>(key.seed),
           static_cast<std::uint32_t>(key.seed >> 32)},
      pos_(4) {}

void PhiloxStream::refill() noexcept {
  block_ = counter_;
  std::array<std::uint32_t, 2> key = key_;
  philox_round(block_, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kPhiloxW32A;
    key[1] += kPhiloxW32B;
    philox_round(block_, key);
  }
  // 64-bit block counter; words 2..3 stay reserved for the stream index.
  if (++counter_[0] == 0) ++counter_[1];
  pos_ = 0;
}

std::uint32_t PhiloxStream::next_u32() noexcept {
  if (pos_ == 4) refill();
  return block_[pos_++];
}

std::uint64_t PhiloxStream::next_u64() noexcept {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double PhiloxStream::next_uniform() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double PhiloxStream::next_normal() { return normal_quantile(next_uniform()); }

double PhiloxStream::next_gamma(double shape) {
  if (!(shape > 0.0)) throw domain_error("gamma shape must be positive");
  if (shape < 1.0) {
    const double u = next_uniform();
    return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double PhiloxStream::next_chi_squared(double df) {
  if (!(df > 0.0)) throw domain_error("chi-squared df must be positive");
  const bool small_integer = df == std::floor(df) && df <= 64.0;
  if (small_integer) {
    double sum = 0.0;
    const int k = static_cast<int>(df);
    for (int i = 0; i < k; ++i) {
      const double z = next_normal();
      sum += z * z;
    }
    return sum;
  }
  return 2.0 * next_gamma(0.5 * df);
}

Vec sample_standard_normal(StreamKey key, Index n) {
  if (n < 1) throw domain_error("sample size must be >= 1");
  PhiloxStream stream(key);
  Vec out(n);
  for (Index i = 0; i < n; ++i) out[i] = stream.next_normal();
  return out;
}

Vec sample_student_t(StreamKey key, double df, Index n) {
  if (n < 1) throw domain_error("sample size must be >= 1");
  if (!(df > 0.0)) throw domain_error("student-t df must be positive");
  PhiloxStream stream(key);
  Vec out(n);
  for (Index i = 0; i < n; ++i) {
    const double z = stream.next_normal();
    const double v = stream.next_chi_squared(df);
    out[i] = z / std::sqrt(v / df);
  }
  return out;
}

Mat sample_mv_normal(StreamKey key, const Vec& mean, const SpdMatrix& cov, Index n) {
  if (n < 1) throw domain_error("sample size must be >= 1");
  if (mean.size() != cov.dim()) throw domain_error("mean/cov dimension mismatch");
  const Mat L = cholesky(cov);
  const Index d = cov.dim();
  PhiloxStream stream(key);
  Mat out(n, d);
  Vec z(d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) z[j] = stream.next_normal();
    out.row(i) = (mean + L * z).transpose();
  }
  return out;
}

}  // namespace qcs
