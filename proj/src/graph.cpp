#include "elastica/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "elastica/fourier.hpp"

namespace elastica {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

/// Periodic cubic spline on non-uniform increasing nodes covering one period.
class PeriodicSpline {
 public:
  PeriodicSpline(std::vector<double> nodes, std::vector<double> values)
      : t_(std::move(nodes)), y_(std::move(values)) {
    const int n = static_cast<int>(t_.size());
    std::vector<double> h(n), rhs(n);
    for (int j = 0; j < n; ++j) {
      const double t1 = (j + 1 < n) ? t_[j + 1] : t_[0] + kTwoPi;
      h[j] = t1 - t_[j];
    }
    auto yv = [&](int j) { return y_[(j % n + n) % n]; };
    std::vector<double> lower(n), diag(n), upper(n);
    for (int j = 0; j < n; ++j) {
      const double hm = h[(j + n - 1) % n];
      lower[j] = hm / 6.0;
      diag[j] = (hm + h[j]) / 3.0;
      upper[j] = h[j] / 6.0;
      rhs[j] = (yv(j + 1) - yv(j)) / h[j] - (yv(j) - yv(j - 1)) / hm;
    }
    m_ = solve_cyclic_tridiag(lower, diag, upper, rhs);
    h_ = std::move(h);
  }

  double eval(double theta) const {
    const int n = static_cast<int>(t_.size());
    double t = wrap_angle(theta - t_[0]) + t_[0];
    // locate interval [t_j, t_j + h_j)
    int j = static_cast<int>(std::upper_bound(t_.begin(), t_.end(), t) - t_.begin()) - 1;
    if (j < 0) j = n - 1;
    const double a = t - t_[j];
    const double b = h_[j] - a;
    const double y1 = y_[(j + 1) % n];
    const double m1 = m_[(j + 1) % n];
    return (m_[j] * b * b * b + m1 * a * a * a) / (6.0 * h_[j]) +
           (y_[j] / h_[j] - m_[j] * h_[j] / 6.0) * b +
           (y1 / h_[j] - m1 * h_[j] / 6.0) * a;
  }

 private:
  // Sherman-Morrison on top of the Thomas algorithm for the periodic corners.
  static std::vector<double> solve_cyclic_tridiag(const std::vector<double>& a,
                                                  const std::vector<double>& b,
                                                  const std::vector<double>& c,
                                                  const std::vector<double>& d) {
    const int n = static_cast<int>(a.size());
    const double alpha = a[0], beta = c[n - 1];
    const double gamma = -b[0];
    std::vector<double> bb = b;
    bb[0] -= gamma;
    bb[n - 1] -= alpha * beta / gamma;
    auto thomas = [&](std::vector<double> rhs) {
      std::vector<double> cp(n), dp(n);
      cp[0] = c[0] / bb[0];
      dp[0] = rhs[0] / bb[0];
      for (int i = 1; i < n; ++i) {
        const double m = bb[i] - a[i] * cp[i - 1];
        cp[i] = c[i] / m;
        dp[i] = (rhs[i] - a[i] * dp[i - 1]) / m;
      }
      for (int i = n - 2; i >= 0; --i) dp[i] -= cp[i] * dp[i + 1];
      return dp;
    };
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = beta;
    const std::vector<double> x = thomas(d);
    const std::vector<double> z = thomas(u);
    const double fact =
        (x[0] + alpha * x[n - 1] / gamma) / (1.0 + z[0] + alpha * z[n - 1] / gamma);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = x[i] - fact * z[i];
    return out;
  }

  std::vector<double> t_, y_, h_, m_;
};

}  // namespace

struct TubularData::Interp {
  std::vector<fourier::TrigSeries> coord;
};

double tubular_radius(const DiscreteCurve& reference, DerivMode mode) {
  const NormalField k = curvature(reference, mode);
  const double kmax = k.values().rowwise().norm().maxCoeff();
  const double curv_bound = kmax > 0.0 ? 1.0 / kmax : 1e300;

  const int n = reference.samples();
  const Eigen::MatrixXd& p = reference.points();
  double self_dist = 1e300;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int m = std::min(j - i, n - (j - i));
      const double chord = (p.row(i) - p.row(j)).norm();
      const double normalized = chord / std::sin(std::numbers::pi * m / n);
      self_dist = std::min(self_dist, normalized);
    }
  }
  return 0.5 * std::min(curv_bound, 0.5 * self_dist);
}

TubularData::TubularData(const DiscreteCurve& reference, DerivMode mode)
    : reference_(reference.points()),
      radius_(tubular_radius(reference, mode)),
      mode_(mode) {
  auto interp = std::make_shared<Interp>();
  interp->coord.reserve(reference_.dim());
  for (int c = 0; c < reference_.dim(); ++c)
    interp->coord.emplace_back(Eigen::VectorXd(reference_.points().col(c)));
  interp_ = std::move(interp);
}

Eigen::RowVectorXd TubularData::point_at(double theta) const {
  Eigen::RowVectorXd out(reference_.dim());
  for (int c = 0; c < reference_.dim(); ++c) out[c] = interp_->coord[c].eval(theta);
  return out;
}

Eigen::RowVectorXd TubularData::deriv_at(double theta) const {
  Eigen::RowVectorXd out(reference_.dim());
  for (int c = 0; c < reference_.dim(); ++c) out[c] = interp_->coord[c].deriv(theta);
  return out;
}

Eigen::RowVectorXd TubularData::deriv2_at(double theta) const {
  Eigen::RowVectorXd out(reference_.dim());
  for (int c = 0; c < reference_.dim(); ++c) out[c] = interp_->coord[c].deriv2(theta);
  return out;
}

Projection project(const TubularData& tub, const Eigen::RowVectorXd& x) {
  const DiscreteCurve& ref = tub.reference();
  const int n = ref.samples();
  if (x.size() != ref.dim()) throw ShapeMismatch("project: point dimension mismatch");

  int seed = 0;
  double best = 1e300;
  for (int i = 0; i < n; ++i) {
    const double d = (x - ref.points().row(i)).norm();
    if (d < best) {
      best = d;
      seed = i;
    }
  }
  const double center = ref.theta(seed);
  const double window = kTwoPi / 8.0;  // +- N/8 samples

  auto g = [&](double theta) {
    return (x - tub.point_at(theta)).dot(tub.deriv_at(theta));
  };

  const double scale = tub.deriv_at(center).squaredNorm();
  double theta = center;
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    const Eigen::RowVectorXd diff = x - tub.point_at(theta);
    const Eigen::RowVectorXd d1 = tub.deriv_at(theta);
    const double val = diff.dot(d1);
    if (std::abs(val) <= 1e-12 * std::max(scale, 1.0)) {
      converged = true;
      break;
    }
    const double slope = -d1.squaredNorm() + diff.dot(tub.deriv2_at(theta));
    if (slope == 0.0) break;
    theta = std::clamp(theta - val / slope, center - window, center + window);
  }
  if (!converged) {
    // Bisection fallback on a sign change of g within the local window.
    const int probes = 128;
    double lo = 0.0, hi = 0.0;
    bool found = false;
    double prev_t = center - window, prev_g = g(prev_t);
    for (int i = 1; i <= probes; ++i) {
      const double t = center - window + 2.0 * window * i / probes;
      const double gt = g(t);
      if (prev_g == 0.0 || prev_g * gt < 0.0) {
        lo = prev_t;
        hi = t;
        found = true;
        if (t >= center) break;  // prefer the bracket nearest the seed
      }
      prev_t = t;
      prev_g = gt;
    }
    if (!found) throw NewtonFailure("project: no root of <x - gamma, gamma'> in window");
    double glo = g(lo);
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double gm = g(mid);
      if (glo * gm <= 0.0)
        hi = mid;
      else {
        lo = mid;
        glo = gm;
      }
    }
    theta = 0.5 * (lo + hi);
  }

  Projection out;
  out.theta = wrap_angle(theta);
  out.foot = tub.point_at(theta);
  out.offset = x - out.foot;
  if (out.offset.norm() >= tub.radius())
    throw OutsideTube("project: point outside the tubular neighborhood");
  return out;
}

NormalField normal_graph(const TubularData& tub, const DiscreteCurve& sigma) {
  const DiscreteCurve& ref = tub.reference();
  if (sigma.dim() != ref.dim())
    throw ShapeMismatch("normal_graph: ambient dimensions differ");
  const int ns = sigma.samples();

  std::vector<double> nodes(ns);
  Eigen::MatrixXd offsets(ns, ref.dim());
  for (int j = 0; j < ns; ++j) {
    const Projection pr = project(tub, sigma.points().row(j));
    nodes[j] = pr.theta;
    offsets.row(j) = pr.offset;
  }

  // The induced reparametrization theta'(theta) must be monotone.
  for (int j = 0; j < ns; ++j) {
    const double d = std::remainder(nodes[(j + 1) % ns] - nodes[j], kTwoPi);
    if (d <= 0.0) throw FoldedGraph("normal_graph: non-monotone foot parameter");
  }

  const int nr = ref.samples();
  Eigen::MatrixXd y(nr, ref.dim());
  for (int c = 0; c < ref.dim(); ++c) {
    std::vector<double> t(ns), v(ns);
    // sort by node angle
    std::vector<int> order(ns);
    for (int j = 0; j < ns; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return nodes[a] < nodes[b]; });
    for (int j = 0; j < ns; ++j) {
      t[j] = nodes[order[j]];
      v[j] = offsets(order[j], c);
    }
    const PeriodicSpline spline(std::move(t), std::move(v));
    for (int i = 0; i < nr; ++i) y(i, c) = spline.eval(ref.theta(i));
  }
  return make_normal(ref, y, tub.mode());
}

DiscreteCurve quotient_translation(const DiscreteCurve& curve, DerivMode mode) {
  return curve.translated(-barycenter(curve, mode));
}

}  // namespace elastica
