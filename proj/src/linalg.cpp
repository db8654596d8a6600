#include "qcs/linalg.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace qcs {

SpdMatrix::SpdMatrix(Mat m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw domain_error("SpdMatrix requires a square matrix with dim >= 1");
  const double scale = m_.cwiseAbs().maxCoeff();
  const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1e-300))
    throw domain_error("SpdMatrix requires symmetry within 1e-12 relative");
}

Mat cholesky(const SpdMatrix& m) {
  Eigen::LLT<Mat> llt(m.matrix());
  if (llt.info() != Eigen::Success)
    throw numeric_error("matrix is not positive definite");
  return llt.matrixL();
}

Vec spd_solve(const SpdMatrix& m, const Vec& v) {
  if (v.size() != m.dim())
    throw domain_error("spd_solve: dimension mismatch");
  Eigen::LLT<Mat> llt(m.matrix());
  if (llt.info() != Eigen::Success)
    throw numeric_error("matrix is not positive definite");
  if (llt.rcond() < 1e-12)
    throw numeric_error("matrix is singular to working precision (condition estimate > 1e12)");
  return llt.solve(v);
}

}  // namespace qcs
