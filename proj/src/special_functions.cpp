#include "disparity/special_functions.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace disparity {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;
constexpr int kMaxIterations = 1000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// P(s, x) by the power series. Converges fast for x < s + 1.
double lower_gamma_series(double s, double x) {
  double ap = s;
  double sum = 1.0 / s;
  double del = sum;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * std::exp(-x + s * std::log(x) - log_gamma(s));
}

// Q(s, x) by the Lentz continued fraction. Converges fast for x >= s + 1.
double upper_gamma_continued_fraction(double s, double x) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEpsilon) break;
  }
  return std::exp(-x + s * std::log(x) - log_gamma(s)) * h;
}

}  // namespace

double log_gamma(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(M_PI / std::fabs(std::sin(M_PI * x))) - log_gamma(1.0 - x);
  }
  double z = x - 1.0;
  double acc = kLanczos[0];
  for (std::size_t i = 1; i < 9; ++i) {
    acc += kLanczos[i] / (z + static_cast<double>(i));
  }
  double t = z + 7.5;
  return kLogSqrtTwoPi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double regularized_upper_gamma(double s, double x) {
  if (!(s > 0.0)) throw std::domain_error("regularized_upper_gamma: s must be positive");
  if (!(x >= 0.0)) throw std::domain_error("regularized_upper_gamma: x must be non-negative");
  if (x == 0.0) return 1.0;
  double q;
  if (x < s + 1.0) {
    q = 1.0 - lower_gamma_series(s, x);
  } else {
    q = upper_gamma_continued_fraction(s, x);
  }
  if (q < 0.0) q = 0.0;
  if (q > 1.0) q = 1.0;
  return q;
}

double log_choose(double n, double k) {
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

}  // namespace disparity
