#pragma once

#include "qcs/types.hpp"

namespace qcs {

/// Standard normal density phi(x) = exp(-x^2/2)/sqrt(2*pi).
double normal_pdf(double x);

/// Standard normal CDF Phi(x), accurate to ~1e-15 absolute.
double normal_cdf(double x);

/// Inverse standard normal CDF. Requires 0 < u < 1.
double normal_quantile(double u);

/// Variance of a standard normal variable conditioned on
/// [Phi^-1(p), Phi^-1(q)]. Requires 0 < p < q < 1; the result lies in (0,1).
double s_factor(double p, double q);

/// Negative abscissa x~ solving -x*Phi(x) - phi(x)*(1 - 2*Phi(x)) = 0,
/// located by bracketed bisection to |f(x~)| <= 1e-12.
double rule_split_abscissa();

/// The 20/60/20 split quantile q~ = Phi(x~) ~= 0.19808.
double rule_split_quantile();

}  // namespace qcs
