#pragma once

// Saddle-point evaluation of Poisson and binomial point masses (Loader's
// method). Avoids both factorial overflow and the cancellation in
// x*log(x/np) + np - x that plagues the naive log-pmf near the mode.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace sentinel::detail {

// log(n!) - [(n + 1/2) log n - n + log sqrt(2 pi)], for integer n >= 0.
inline double stirling_error(double n) {
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  if (n <= 15.0) {
    const long double ln = n;
    const long double ln_sqrt_2pi = 0.918938533204672741780329736405617639861L;
    if (n == 0.0) return 0.0;
    return static_cast<double>(std::lgammal(ln + 1.0L) - (ln + 0.5L) * std::log(ln) + ln -
                               ln_sqrt_2pi);
  }
  const double nn = n * n;
  if (n > 500.0) return (s0 - s1 / nn) / n;
  if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x / np) + np - x, accurate when x is close to np.
inline double deviance(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

inline double poisson_pmf(double k, double mean) {
  if (k < 0.0) return 0.0;
  if (k == 0.0) return std::exp(-mean);
  return std::exp(-stirling_error(k) - deviance(k, mean)) /
         std::sqrt(2.0 * std::numbers::pi * k);
}

inline double binomial_pmf(double k, double n, double p) {
  if (k < 0.0 || k > n) return 0.0;
  const double q = 1.0 - p;
  if (p == 0.0) return k == 0.0 ? 1.0 : 0.0;
  if (q == 0.0) return k == n ? 1.0 : 0.0;
  if (k == 0.0) {
    if (n == 0.0) return 1.0;
    const double lc = p < 0.1 ? -deviance(n, n * q) - n * p : n * std::log1p(-p);
    return std::exp(lc);
  }
  if (k == n) {
    const double lc = q < 0.1 ? -deviance(n, n * p) - n * q : n * std::log(p);
    return std::exp(lc);
  }
  const double lc = stirling_error(n) - stirling_error(k) - stirling_error(n - k) -
                    deviance(k, n * p) - deviance(n - k, n * q);
  const double lf = std::log(2.0 * std::numbers::pi) + std::log(k) + std::log1p(-k / n);
  return std::exp(lc - 0.5 * lf);
}

}  // namespace sentinel::detail
