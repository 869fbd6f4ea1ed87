#pragma once

namespace disparity {

// Natural log of the gamma function for x > 0 (reflection handles x < 0.5
// internally). Lanczos approximation, accurate to ~1e-13 relative.
double log_gamma(double x);

// Regularized upper incomplete gamma function
//
//   Q(s, x) = Gamma(s, x) / Gamma(s),  s > 0, x >= 0
//
// computed by the power series for P(s, x) when x < s + 1 and by the
// continued fraction for Q(s, x) otherwise. Relative error is below 1e-10
// over s <= 50, x <= 500. Throws std::domain_error for s <= 0 or x < 0.
double regularized_upper_gamma(double s, double x);

// log of the binomial coefficient C(n, k), 0 <= k <= n.
double log_choose(double n, double k);

}  // namespace disparity
