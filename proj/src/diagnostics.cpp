#include "elastica/diagnostics.hpp"

#include <cmath>
#include <numbers>

namespace elastica {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

LojaTrace make_loja_trace(const FlowTrace& trace, double e_ref) {
  LojaTrace out;
  out.e_ref = e_ref;
  out.rows.reserve(trace.size());
  double prev_t = -1e300;
  for (const TraceRow& row : trace) {
    if (row.t <= prev_t)
      throw InvalidSpec("loja trace: times must be strictly increasing");
    prev_t = row.t;
    const double gap = row.energy - e_ref;
    if (gap < -1e-12) throw NegativeGap("loja trace: energy below E_ref");
    out.rows.push_back({row.t, gap, row.length / kTwoPi * row.vel_norm_l2dtheta,
                        row.vel_norm_l2dtheta, row.length});
  }
  return out;
}

LojaTrace make_loja_trace(const FlowTrace& trace) {
  if (trace.empty()) throw InsufficientData("loja trace: empty flow trace");
  return make_loja_trace(trace, trace.back().energy);
}

double dual_grad_norm(const DiscreteCurve& curve, const EnergyParams& params,
                      DerivMode mode) {
  const Eigen::MatrixXd g = gradient(curve, params, mode).values();
  const Eigen::VectorXd sp = speed(curve, mode);
  const double sum =
      (g.rowwise().squaredNorm().array() * sp.array().square()).sum();
  return std::sqrt(sum * kTwoPi / curve.samples());
}

LojaFit fit_alpha(const LojaTrace& trace, FitWindow window) {
  std::vector<double> u, v;  // log gap, log dual
  for (const LojaRow& row : trace.rows) {
    if (row.energy_gap >= window.g_min && row.energy_gap <= window.g_max &&
        row.dual_grad_norm > 0.0) {
      u.push_back(std::log(row.energy_gap));
      v.push_back(std::log(row.dual_grad_norm));
    }
  }
  const int n = static_cast<int>(u.size());
  if (n < 10) throw InsufficientData("fit_alpha: fewer than 10 rows in window");

  double mu = 0.0, mv = 0.0;
  for (int i = 0; i < n; ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= n;
  mv /= n;
  double suu = 0.0, svv = 0.0, suv = 0.0;
  for (int i = 0; i < n; ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    svv += (v[i] - mv) * (v[i] - mv);
    suv += (u[i] - mu) * (v[i] - mv);
  }
  // Principal direction of the 2x2 scatter matrix (total least squares).
  const double theta = 0.5 * std::atan2(2.0 * suv, suu - svv);
  double slope = std::tan(theta);
  if (!std::isfinite(slope)) slope = 1e300;

  LojaFit fit;
  fit.alpha = std::clamp(1.0 - slope, 1e-9, 1.0);
  fit.g_min = window.g_min;
  fit.g_max = window.g_max;
  fit.points_used = n;

  double ss = 0.0;
  const double nx = std::sin(theta), ny = -std::cos(theta);  // unit normal
  for (int i = 0; i < n; ++i) {
    const double d = (u[i] - mu) * nx + (v[i] - mv) * ny;
    ss += d * d;
  }
  fit.residual = std::sqrt(ss / n);

  // Envelope constant: smallest c with gap^(1-alpha) <= c * dual row-wise.
  const double exponent = 1.0 - fit.alpha;
  double c = 0.0;
  for (int i = 0; i < n; ++i)
    c = std::max(c, std::exp(exponent * u[i] - v[i]));
  fit.c = c;
  int violations = 0;
  for (int i = 0; i < n; ++i)
    if (std::exp(exponent * u[i]) > 1.05 * c * std::exp(v[i])) ++violations;
  fit.violations = violations;
  return fit;
}

std::vector<std::pair<double, double>> h_function(const LojaTrace& trace,
                                                  double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InvalidSpec("h_function: alpha must lie in (0, 1]");
  std::vector<std::pair<double, double>> out;
  out.reserve(trace.rows.size());
  for (const LojaRow& row : trace.rows) {
    if (row.energy_gap < -1e-12) throw NegativeGap("h_function: negative gap");
    out.emplace_back(row.t, std::pow(std::max(row.energy_gap, 0.0), alpha));
  }
  return out;
}

double l1_velocity(const LojaTrace& trace, double t0) {
  const auto& rows = trace.rows;
  if (rows.size() < 2) throw InsufficientData("l1_velocity: trace too short");
  if (t0 < rows.front().t || t0 > rows.back().t)
    throw InsufficientData("l1_velocity: t0 outside trace range");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double ta = rows[i].t, tb = rows[i + 1].t;
    if (tb <= t0) continue;
    double va = rows[i].vel_l2dtheta;
    double a = ta;
    if (t0 > ta) {
      const double w = (t0 - ta) / (tb - ta);
      va = (1.0 - w) * va + w * rows[i + 1].vel_l2dtheta;
      a = t0;
    }
    total += 0.5 * (va + rows[i + 1].vel_l2dtheta) * (tb - a);
  }
  return total;
}

std::vector<double> cauchy_distances(const std::vector<DiscreteCurve>& snapshots,
                                     const DiscreteCurve& reference) {
  const TubularData tub(reference);
  std::vector<Eigen::MatrixXd> graphs;
  graphs.reserve(snapshots.size());
  for (const DiscreteCurve& snap : snapshots)
    graphs.push_back(normal_graph(tub, snap).values());
  std::vector<double> out;
  const double w = kTwoPi / reference.samples();
  for (std::size_t i = 0; i + 1 < graphs.size(); ++i)
    out.push_back(std::sqrt((graphs[i + 1] - graphs[i]).squaredNorm() * w));
  return out;
}

}  // namespace elastica
