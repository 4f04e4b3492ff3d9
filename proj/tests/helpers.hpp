#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace testutil {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Radius dynamics of a circle under the flow: dr/dt = 1/(2r^3) - r^-1
/// (lambda = 1). Integrated with RK4 at a step small enough for ~1e-10
/// accuracy over the times used in the tests.
inline double radial_ode(double r0, double t, double dt = 1e-5) {
  auto f = [](double r) { return 0.5 / (r * r * r) - 1.0 / r; };
  double r = r0, s = 0.0;
  while (s < t) {
    const double h = std::min(dt, t - s);
    const double k1 = f(r);
    const double k2 = f(r + 0.5 * h * k1);
    const double k3 = f(r + 0.5 * h * k2);
    const double k4 = f(r + h * k3);
    r += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s += h;
  }
  return r;
}

inline double mean_radius(const Eigen::MatrixXd& points) {
  return points.rowwise().norm().mean();
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

/// Energy of a round circle of radius r at lambda = 1: 2*pi*r + pi/r.
inline double circle_energy(double r) {
  return kTwoPi * r + std::numbers::pi / r;
}

}  // namespace testutil
