// Acceptance gate: runs the eleven primary checks and prints one PASS/FAIL
// line each. Exit status is the number of failed checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "elastica/diagnostics.hpp"
#include "elastica/seeds.hpp"
#include "helpers.hpp"

using namespace elastica;
using testutil::kTwoPi;

namespace {

constexpr double kPi = std::numbers::pi;
const double kCriticalRadius = 1.0 / std::sqrt(2.0);

int failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail) {
  std::printf("criterion %2d [%s] %s -- %s\n", criterion, ok ? "PASS" : "FAIL",
              what.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct HeadlineRun {
  EvolveResult result;
  std::vector<double> times, radii;          // one entry per trace row
  std::vector<double> snap_times;
  std::vector<DiscreteCurve> snapshots;
  double seconds = 0.0;
};

/// Shared flow: unit circle, N = 256, lambda = 1, semi-implicit, driven to
/// ||G|| < 1e-6. Also records the mean radius per step and periodic snapshots.
HeadlineRun headline_run() {
  StepperConfig config;
  config.stop_grad_tol = 1e-6;
  config.stop_t_max = 10.0;
  config.dt_max = 2.5e-4;  // keeps the first-order splitting error well below 1e-3
  std::vector<double> times, radii, snap_times;
  std::vector<DiscreteCurve> snapshots;
  const auto t0 = std::chrono::steady_clock::now();
  EvolveResult result =
      evolve(make_circle(1.0, 256), config, {},
             [&](const FlowState& state, const TraceRow& row) {
               times.push_back(row.t);
               radii.push_back(testutil::mean_radius(state.curve.points()));
               if (row.step % 1000 == 0) {
                 snap_times.push_back(row.t);
                 snapshots.push_back(state.curve);
               }
             });
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return HeadlineRun{std::move(result), std::move(times),      std::move(radii),
                     std::move(snap_times), std::move(snapshots), seconds};
}

std::vector<DiscreteCurve> corpus(int n) {
  return {make_circle(1.0, n),
          make_ellipse(1.2, 0.8, n),
          make_figure_eight(1.0, n),
          make_fourier_perturbed_circle(1.0, {2, 3}, 0.05, 7, n),
          make_fourier_perturbed_circle(1.0, {1, 2, 3, 4}, 0.03, 21, n),
          make_w_covered_circle(0.85, 2, n)};
}

NormalField random_smooth_normal(const DiscreteCurve& curve, std::mt19937& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(curve.samples(), curve.dim());
  for (int c = 0; c < curve.dim(); ++c)
    for (int m = 0; m <= 5; ++m) {
      const double a = coeff(rng), b = coeff(rng);
      for (int i = 0; i < curve.samples(); ++i) {
        const double t = curve.theta(i);
        values(i, c) += a * std::cos(m * t) + b * std::sin(m * t);
      }
    }
  return make_normal(curve, values, DerivMode::Spectral);
}

void criterion_1(const HeadlineRun& run) {
  const double radius = testutil::mean_radius(run.result.state.curve.points());
  const double energy = run.result.state.energy;
  const bool ok = run.result.converged &&
                  std::abs(radius - kCriticalRadius) <= 1e-3 &&
                  std::abs(energy - 2.0 * std::sqrt(2.0) * kPi) <= 1e-3 &&
                  run.seconds <= 60.0;
  report(1, ok, "critical circle reached",
         "radius err " + fmt(std::abs(radius - kCriticalRadius)) + ", energy err " +
             fmt(std::abs(energy - 2.0 * std::sqrt(2.0) * kPi)) + ", " +
             fmt(run.seconds) + " s");
}

void criterion_2(const HeadlineRun& run) {
  // Integrate the radial ODE once along the recorded times.
  double worst = 0.0;
  double r = 1.0, t = 0.0;
  auto f = [](double x) { return 0.5 / (x * x * x) - 1.0 / x; };
  for (std::size_t i = 0; i < run.times.size(); ++i) {
    const double target = run.times[i];
    while (t < target) {
      const double h = std::min(1e-5, target - t);
      const double k1 = f(r), k2 = f(r + 0.5 * h * k1), k3 = f(r + 0.5 * h * k2),
                   k4 = f(r + h * k3);
      r += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
    }
    worst = std::max(worst, std::abs(run.radii[i] - r));
  }
  report(2, worst <= 1e-3, "PDE radius follows the radial ODE",
         "max pointwise error " + fmt(worst));
}

void criterion_3() {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> amp(0.02, 0.08);
  double worst = 0.0;
  bool ok = true;
  for (int c = 0; c < 20; ++c) {
    const int dim = c % 2 == 0 ? 2 : 3;
    // N = 128 fully resolves the nonlinear terms for these amplitudes, so
    // the inner-product identity behind first_variation holds to rounding;
    // h = 1e-6 then puts the FD truncation error below the tolerance while
    // the absolute floor keeps roundoff in the energy difference harmless.
    const DiscreteCurve curve = make_fourier_perturbed_circle(
        1.0, {1, 2, 3, 4}, amp(rng), 1000 + c, 128, dim);
    for (int f = 0; f < 20; ++f) {
      const VectorField x = random_smooth_normal(curve, rng).as_vector_field();
      const double fv = first_variation(curve, x, {}, DerivMode::Spectral);
      const double fd = fd_directional(curve, x, {}, 1e-6, DerivMode::Spectral);
      const double err = std::abs(fv - fd);
      ok = ok && err <= std::max(1e-5 * std::abs(fd), 1e-8);
      worst = std::max(worst, err / std::max(std::abs(fd), 1e-8));
    }
  }
  report(3, ok, "first variation vs FD oracle (20 curves x 20 fields)",
         "max relative mismatch " + fmt(worst));
}

void criterion_4() {
  StepperConfig config;
  config.scheme = Scheme::Explicit;
  config.mode = DerivMode::Spectral;
  config.redistribute = false;
  config.stop_t_max = 1e9;
  const DiscreteCurve c = make_ellipse(1.2, 0.8, 32);
  const double e0 = elastic_energy(c, {}, DerivMode::Spectral);
  const double v0 = norm_l2ds(velocity(c, {}, DerivMode::Spectral).as_vector_field(), c,
                              DerivMode::Spectral);
  std::vector<double> logdt, logres;
  for (const double dt : {4e-5, 2e-5, 1e-5, 5e-6}) {
    config.dt_init = config.dt_max = dt;
    const FlowState next = step(make_state(c, config, {}), config, {});
    logdt.push_back(std::log(dt));
    logres.push_back(std::log(std::abs(next.energy - e0 + dt * v0 * v0)));
  }
  const double slope = testutil::fit_slope(logdt, logres);
  report(4, slope >= 1.7, "dissipation identity order under dt refinement",
         "measured order " + fmt(slope));
}

void criterion_5(const HeadlineRun& run) {
  long violations = 0;
  auto count = [&](const FlowTrace& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i)
      if (trace[i].energy > trace[i - 1].energy + 1e-12) ++violations;
  };
  count(run.result.trace);
  StepperConfig config;
  config.stop_t_max = 0.3;
  config.stop_grad_tol = 1e-10;
  for (const DiscreteCurve& seed : corpus(128)) count(evolve(seed, config, {}).trace);
  report(5, violations == 0, "energy monotonicity across the corpus",
         std::to_string(violations) + " violating steps");
}

void criterion_6() {
  double worst = 1e300;
  for (const DiscreteCurve& curve : corpus(64)) {
    for (const DerivMode mode : {DerivMode::Fd4, DerivMode::Spectral}) {
      const NormalBasis basis(curve, mode);
      const OperatorMatrix op = id_plus_nabla4_matrix(curve, basis, mode);
      worst = std::min(worst, operator_eigenvalues(op).minCoeff());
    }
  }
  report(6, worst >= 1.0 - 1e-6, "coercivity of Id + (nabla_perp)^4 on the corpus",
         "min ds-Rayleigh eigenvalue " + fmt(worst));
}

void criterion_7() {
  bool ok = true;
  std::string detail;
  for (const int dim : {2, 3}) {
    const DiscreteCurve c = make_circle(kCriticalRadius, 48, dim);
    const NormalBasis basis(c, DerivMode::Spectral);
    const OperatorMatrix op = hessian_matrix(c, {}, basis, DerivMode::Spectral);
    const Eigen::VectorXd eig = operator_eigenvalues(op);
    const double top = eig.cwiseAbs().maxCoeff();

    const Eigen::MatrixXd tau = tangent(c, DerivMode::Spectral).values;
    double probe_worst = 0.0;
    for (int axis = 0; axis < dim; ++axis) {
      Eigen::MatrixXd v = Eigen::MatrixXd::Zero(c.samples(), dim);
      v.col(axis).setOnes();
      const Eigen::VectorXd x = basis.to_coords(project_normal(v, tau));
      const Eigen::VectorXd hx = operator_apply(op, x);
      const double xn = std::sqrt(x.dot(op.weight.asDiagonal() * x));
      const double hxn = std::sqrt(hx.dot(op.weight.asDiagonal() * hx));
      probe_worst = std::max(probe_worst, hxn / (top * xn));
    }
    const int kdim = kernel_dim(op, 1e-4);
    const double sym = op.symmetry_defect / op.form.cwiseAbs().maxCoeff();
    ok = ok && probe_worst <= 1e-4 && kdim >= dim && sym <= 1e-6;
    detail += "R^" + std::to_string(dim) + ": probe " + fmt(probe_worst) + ", kernel " +
              std::to_string(kdim) + ", sym " + fmt(sym) + "  ";
  }
  report(7, ok, "hessian kernel at the critical circle", detail);
}

void criterion_8() {
  bool ok = true;
  std::string detail;

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (const auto& ref :
       {make_circle(1.0, 64), make_fourier_perturbed_circle(1.0, {2}, 0.03, 5, 64)}) {
    const TubularData tub(ref);
    Eigen::VectorXd amp = Eigen::VectorXd::Zero(ref.samples());
    for (int m = 0; m <= 3; ++m) {
      const double a = coeff(rng), b = coeff(rng);
      for (int i = 0; i < ref.samples(); ++i)
        amp[i] += a * std::cos(m * ref.theta(i)) + b * std::sin(m * ref.theta(i));
    }
    amp *= 0.5 * tub.radius() / amp.cwiseAbs().maxCoeff();
    const Eigen::MatrixXd tau = tangent(ref, DerivMode::Spectral).values;
    Eigen::MatrixXd y0(ref.samples(), 2);
    for (int i = 0; i < ref.samples(); ++i) {
      y0(i, 0) = -tau(i, 1) * amp[i];
      y0(i, 1) = tau(i, 0) * amp[i];
    }
    const NormalField rec = normal_graph(tub, DiscreteCurve(ref.points() + y0));
    const double err = (rec.values() - y0).cwiseAbs().maxCoeff() / tub.radius();
    ok = ok && err <= 1e-6;
    detail += "roundtrip rel " + fmt(err) + "  ";
  }

  const TubularData tub(make_circle(1.0, 64));
  const NormalField y = normal_graph(tub, make_circle(1.2, 64));
  double conc = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double t = kTwoPi * i / 64;
    conc = std::max(conc, std::abs(y.values()(i, 0) - 0.2 * std::cos(t)));
    conc = std::max(conc, std::abs(y.values()(i, 1) - 0.2 * std::sin(t)));
  }
  ok = ok && conc <= 1e-8;
  report(8, ok, "normal-graph round trips", detail + "concentric err " + fmt(conc));
}

void criterion_9(const HeadlineRun& run) {
  const LojaTrace lt = make_loja_trace(run.result.trace);
  const LojaFit fit = fit_alpha(lt, {1e-10, 1e-2});
  bool ok = fit.alpha >= 0.35 && fit.alpha <= 0.55 && fit.violations == 0;

  double synth_worst = 0.0;
  for (const double alpha : {0.5, 0.25}) {
    FlowTrace trace;
    for (int i = 0; i < 400; ++i) {
      TraceRow row{};
      row.step = i;
      row.t = 6.0 * i / 399.0;
      const double gap = 0.5 * std::exp(-8.0 * row.t);
      // Store the gap itself as the energy (reference 0) so the deep tail
      // is not lost to cancellation against a large offset.
      row.energy = gap;
      row.length = kTwoPi;
      row.vel_norm_l2dtheta = 2.3 * std::pow(gap, 1.0 - alpha);
      trace.push_back(row);
    }
    const LojaFit sf = fit_alpha(make_loja_trace(trace, 0.0), {1e-10, 1e-2});
    synth_worst = std::max(synth_worst, std::abs(sf.alpha - alpha));
  }
  ok = ok && synth_worst <= 1e-10;
  report(9, ok, "Lojasiewicz exponent fit",
         "flow alpha " + fmt(fit.alpha) + ", violations " +
             std::to_string(fit.violations) + ", synthetic recovery err " +
             fmt(synth_worst));
}

void criterion_10(const HeadlineRun& run) {
  const LojaTrace lt = make_loja_trace(run.result.trace);

  bool monotone = true;
  double prev = 1e300;
  const double t_end = lt.rows.back().t;
  for (int i = 0; i < 8; ++i) {
    const double tail = l1_velocity(lt, t_end * i / 8.0);
    monotone = monotone && tail <= prev + 1e-12;
    prev = tail;
  }

  const std::vector<double> dist =
      cauchy_distances(run.snapshots, run.result.state.curve);
  bool bounded = true;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i + 1 < run.snapshots.size(); ++i) {
    const double integral =
        l1_velocity(lt, run.snap_times[i]) - l1_velocity(lt, run.snap_times[i + 1]);
    const double ratio = dist[i] / integral;
    worst_ratio = std::max(worst_ratio, ratio);
    bounded = bounded && ratio <= 1.1;
  }
  report(10, monotone && bounded, "L1-in-time tail bounds the snapshot distances",
         std::string("tail monotone ") + (monotone ? "yes" : "no") +
             ", max distance/integral " + fmt(worst_ratio));
}

void criterion_11() {
  const double e_exact =
      elastic_energy(make_ellipse(1.2, 0.8, 512), {}, DerivMode::Spectral);
  std::vector<double> logn, logk, loge;
  for (const int n : {32, 64, 128, 256}) {
    const DiscreteCurve c = make_ellipse(1.2, 0.8, n);
    const Eigen::MatrixXd k = curvature(c, DerivMode::Fd4).values();
    double kerr = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = c.theta(i);
      const double w = std::pow(
          1.44 * std::sin(t) * std::sin(t) + 0.64 * std::cos(t) * std::cos(t), 1.5);
      kerr = std::max(kerr, std::abs(k.row(i).norm() - 1.2 * 0.8 / w));
    }
    logn.push_back(std::log(n));
    logk.push_back(std::log(kerr));
    loge.push_back(std::log(std::abs(elastic_energy(c, {}, DerivMode::Fd4) - e_exact)));
  }
  const double k_order = -testutil::fit_slope(logn, logk);
  const double e_order = -testutil::fit_slope(logn, loge);
  const bool ok = std::abs(k_order - 4.0) <= 0.3 && std::abs(e_order - 4.0) <= 0.3;
  report(11, ok, "grid convergence at the discretization order",
         "curvature order " + fmt(k_order) + ", energy order " + fmt(e_order));
}

}  // namespace

int main() {
  const HeadlineRun run = headline_run();
  criterion_1(run);
  criterion_2(run);
  criterion_3();
  criterion_4();
  criterion_5(run);
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(run);
  criterion_10(run);
  criterion_11();
  if (failures == 0)
    std::printf("all 11 criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures;
}
