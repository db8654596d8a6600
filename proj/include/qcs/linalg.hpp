#pragma once

#include "qcs/types.hpp"

namespace qcs {

/// Symmetric positive definite matrix. Symmetry (within 1e-12 relative)
/// is checked at construction; positive definiteness is verified whenever
/// a factorization is requested.
class SpdMatrix {
 public:
  explicit SpdMatrix(Mat m);

  const Mat& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  static SpdMatrix identity(Index d) { return SpdMatrix(Mat::Identity(d, d)); }

 private:
  Mat m_;
};

/// Lower-triangular L with L * L^T = m. Throws numeric_error if a pivot
/// is not positive.
Mat cholesky(const SpdMatrix& m);

/// Solves m * x = v. Throws numeric_error when the factorization fails or
/// the condition-number estimate exceeds 1e12.
Vec spd_solve(const SpdMatrix& m, const Vec& v);

}  // namespace qcs
