#pragma once

// First zero of J0 from its power series, J0(x) = sum (-1)^k (x/2)^(2k) / (k!)^2,
// by bisection on [2, 3].

namespace oracle {

inline long double bessel_j0(long double x) {
  const long double q = -(x * x) / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
  }
  return sum;
}

inline double bessel_j0_zero() {
  long double lo = 2.0L;
  long double hi = 3.0L;
  for (int it = 0; it < 200; ++it) {
    const long double mid = 0.5L * (lo + hi);
    (bessel_j0(mid) > 0.0L ? lo : hi) = mid;
  }
  return static_cast<double>(0.5L * (lo + hi));
}

}  // namespace oracle
