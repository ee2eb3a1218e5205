#pragma once

// Eigenvalues of a small symmetric matrix as roots of its characteristic
// polynomial. Coefficients come from the Faddeev-LeVerrier recursion; roots
// are bracketed between consecutive roots of the derivative (real-rooted
// polynomials have real-rooted derivatives) and refined by bisection.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using Poly = std::vector<long double>;  // p[i] multiplies t^i

inline Poly char_poly(const std::vector<std::vector<double>>& X) {
  const std::size_t n = X.size();
  Poly c(n + 1, 0.0L);
  c[n] = 1.0L;
  std::vector<std::vector<long double>> M(n, std::vector<long double>(n, 0.0L));
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = X M_{k-1} + c_{n-k+1} I
    std::vector<std::vector<long double>> next(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        long double s = 0.0L;
        for (std::size_t l = 0; l < n; ++l) s += X[i][l] * M[l][j];
        next[i][j] = s + (i == j ? c[n - k + 1] : 0.0L);
      }
    }
    M = next;
    long double tr = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) tr += X[i][l] * M[l][i];
    }
    c[n - k] = -tr / static_cast<long double>(k);
  }
  return c;
}

inline long double eval(const Poly& p, long double t) {
  long double v = 0.0L;
  for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
  return v;
}

inline Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(static_cast<long double>(i) * p[i]);
  return d;
}

/// Ascending roots of a polynomial with only real, simple roots.
inline std::vector<double> real_roots(const Poly& p) {
  const std::size_t n = p.size() - 1;
  if (n == 0) return {};
  if (n == 1) return {static_cast<double>(-p[0] / p[1])};
  long double bound = 0.0L;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::fabs(p[i] / p[n]));
  bound += 1.0L;
  std::vector<long double> edges{-bound};
  for (double r : real_roots(derivative(p))) edges.push_back(r);
  edges.push_back(bound);
  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    long double lo = edges[k];
    long double hi = edges[k + 1];
    const bool rising = eval(p, hi) > eval(p, lo);
    for (int it = 0; it < 300 && hi - lo > 0.0L; ++it) {
      const long double mid = 0.5L * (lo + hi);
      if (mid == lo || mid == hi) break;
      ((eval(p, mid) > 0.0L) == rising ? hi : lo) = mid;
    }
    roots.push_back(static_cast<double>(0.5L * (lo + hi)));
  }
  return roots;
}

}  // namespace oracle
