#pragma once

// Torsion function of an ellipse, Laplacian u = -1 with u = 0 on the boundary:
//   u = ax^2 ay^2 / (2 (ax^2 + ay^2)) (1 - x^2/ax^2 - y^2/ay^2),
// and the moving-plane gap computed from it by dense sampling.

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

struct Ellipse {
  double ax = 2.0;
  double ay = 1.0;

  double u(double x, double y) const {
    const double a2 = ax * ax;
    const double b2 = ay * ay;
    return a2 * b2 / (2.0 * (a2 + b2)) * (1.0 - x * x / a2 - y * y / b2);
  }
  bool inside(double x, double y) const { return x * x / (ax * ax) + y * y / (ay * ay) <= 1.0; }
  /// |grad u| on the boundary point (x, y).
  double boundary_slope(double x, double y) const {
    const double a2 = ax * ax;
    const double b2 = ay * ay;
    const double k = a2 * b2 / (a2 + b2);
    return k * std::hypot(x / a2, y / b2);
  }

  /// sup of u(mirror of x) - u(x) over x in the ellipse with x.e > t whose
  /// mirror across {x.e = t} stays in the ellipse.
  double reflection_gap(double ex, double ey, double t, double step = 2e-3) const {
    double best = -std::numeric_limits<double>::infinity();
    for (double x = -ax; x <= ax; x += step) {
      for (double y = -ay; y <= ay; y += step) {
        if (!inside(x, y)) continue;
        const double s = x * ex + y * ey;
        if (s <= t) continue;
        const double mx = x + 2.0 * (t - s) * ex;
        const double my = y + 2.0 * (t - s) * ey;
        if (!inside(mx, my)) continue;
        best = std::max(best, u(mx, my) - u(x, y));
      }
    }
    return best;
  }
};

}  // namespace oracle
