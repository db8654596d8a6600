#include "qcs/normal.hpp"

#include <cmath>
#include <numbers>

namespace qcs {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr double kSqrt2 = std::numbers::sqrt2;

// Acklam's rational approximation of the inverse normal CDF
// (relative error < 1.15e-9 over (0,1)), refined below by one
// Newton step on the erfc-based CDF.
double acklam_inverse(double u) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double u_low = 0.02425;

  if (u < u_low) {
    const double t = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
           ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  }
  if (u > 1.0 - u_low) {
    const double t = std::sqrt(-2.0 * std::log(1.0 - u));
    return -(((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
           ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  }
  const double r = u - 0.5;
  const double t = r * r;
  return (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * r /
         (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
}

// Root equation for the 20/60/20 split.
double split_equation(double x) {
  return -x * normal_cdf(x) - normal_pdf(x) * (1.0 - 2.0 * normal_cdf(x));
}

}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0))
    throw domain_error("normal_quantile requires 0 < u < 1, got " + std::to_string(u));
  double x = acklam_inverse(u);
  const double err = normal_cdf(x) - u;
  x -= err / normal_pdf(x);
  return x;
}

double s_factor(double p, double q) {
  if (!(p > 0.0 && q < 1.0 && p < q))
    throw domain_error("s_factor requires 0 < p < q < 1, got p=" + std::to_string(p) +
                       " q=" + std::to_string(q));
  const double xp = normal_quantile(p);
  const double xq = normal_quantile(q);
  const double fp = normal_pdf(xp);
  const double fq = normal_pdf(xq);
  const double mass = q - p;
  return (xp * fp - xq * fq) / mass - (fp - fq) * (fp - fq) / (mass * mass) + 1.0;
}

double rule_split_abscissa() {
  // The equation has exactly one root on the negative axis; it lies in
  // [-2, -0.5] (f(-2) < 0 < f(-0.5)).
  static const double root = [] {
    double lo = -2.0, hi = -0.5;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = split_equation(mid);
      if (std::abs(fm) <= 1e-15 || hi - lo < 1e-16) return mid;
      if (fm < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return root;
}

double rule_split_quantile() {
  static const double q = normal_cdf(rule_split_abscissa());
  return q;
}

}  // namespace qcs
