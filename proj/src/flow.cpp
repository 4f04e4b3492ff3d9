#include "elastica/flow.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "elastica/fourier.hpp"

namespace elastica {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXd velocity_values(const DiscreteCurve& curve,
                                const EnergyParams& params, DerivMode mode) {
  return -gradient(curve, params, mode).values();
}

DiscreteCurve advance_rk4(const DiscreteCurve& curve, double dt,
                          const EnergyParams& params, DerivMode mode) {
  const Eigen::MatrixXd& p = curve.points();
  const Eigen::MatrixXd k1 = velocity_values(curve, params, mode);
  const Eigen::MatrixXd k2 =
      velocity_values(DiscreteCurve(p + 0.5 * dt * k1), params, mode);
  const Eigen::MatrixXd k3 =
      velocity_values(DiscreteCurve(p + 0.5 * dt * k2), params, mode);
  const Eigen::MatrixXd k4 =
      velocity_values(DiscreteCurve(p + dt * k3), params, mode);
  return DiscreteCurve(p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

/// Frozen-coefficient semi-implicit step: the mean of |gamma'|^-4 times
/// d_theta^4 is treated implicitly, everything else explicitly. Solved in
/// Fourier space, where the fourth-derivative symbol is diagonal.
DiscreteCurve advance_semi_implicit(const DiscreteCurve& curve, double dt,
                                    const EnergyParams& params, DerivMode mode) {
  const int n = curve.samples();
  const Eigen::MatrixXd vel = velocity_values(curve, params, mode);
  const Eigen::VectorXd sp = speed(curve, mode);
  const double coeff = sp.array().pow(-4).mean();

  Eigen::MatrixXd out(n, curve.dim());
  std::vector<std::complex<double>> vhat(n);
  for (int c = 0; c < curve.dim(); ++c) {
    for (int i = 0; i < n; ++i) vhat[i] = vel(i, c);
    fourier::dft(vhat, false);
    for (int k = 0; k < n; ++k) {
      const double freq = (k <= n / 2) ? k : k - n;
      const double sym = freq * freq * freq * freq;
      vhat[k] /= 1.0 + dt * coeff * sym;
    }
    fourier::dft(vhat, true);
    for (int i = 0; i < n; ++i) out(i, c) = curve.points()(i, c) + dt * vhat[i].real();
  }
  return DiscreteCurve(std::move(out));
}

DiscreteCurve advance(const DiscreteCurve& curve, double dt, Scheme scheme,
                      const EnergyParams& params, DerivMode mode) {
  return scheme == Scheme::Explicit ? advance_rk4(curve, dt, params, mode)
                                    : advance_semi_implicit(curve, dt, params, mode);
}

}  // namespace

NormalField velocity(const DiscreteCurve& curve, const EnergyParams& params,
                     DerivMode mode) {
  return NormalField::trusted(curve, velocity_values(curve, params, mode));
}

double explicit_cfl_dt(const DiscreteCurve& curve, DerivMode mode) {
  const double h = kTwoPi / curve.samples() * speed(curve, mode).minCoeff();
  return 0.9 * h * h * h * h / 8.0;
}

DiscreteCurve tangential_redistribute(const DiscreteCurve& curve) {
  const Eigen::VectorXd sp = speed(curve, DerivMode::Spectral);
  if (sp.minCoeff() < DiscreteCurve::kEpsReg)
    throw DegenerateCurve("tangential_redistribute: degenerate speed");
  if (sp.maxCoeff() / sp.minCoeff() <= 1.0 + 1e-9)
    return DiscreteCurve(curve.points());  // already uniform

  const int n = curve.samples();
  const fourier::TrigSeries speed_series{sp};
  const double length = speed_series.mean() * kTwoPi;

  // Invert the cumulative arclength: S(theta_k) = k * L / N, anchored at 0.
  Eigen::VectorXd nodes(n);
  nodes[0] = 0.0;
  double guess = 0.0;
  for (int k = 1; k < n; ++k) {
    const double target = length * k / n;
    guess += kTwoPi / n;
    for (int it = 0; it < 50; ++it) {
      const double f = speed_series.antiderivative(guess) - target;
      const double d = std::max(speed_series.eval(guess), 1e-14);
      const double delta = f / d;
      guess -= delta;
      if (std::abs(delta) < 1e-14 * kTwoPi) break;
    }
    nodes[k] = guess;
  }

  Eigen::MatrixXd out(n, curve.dim());
  for (int c = 0; c < curve.dim(); ++c) {
    const fourier::TrigSeries series{Eigen::VectorXd(curve.points().col(c))};
    for (int k = 0; k < n; ++k) out(k, c) = series.eval(nodes[k]);
  }
  return DiscreteCurve(std::move(out));
}

FlowState make_state(const DiscreteCurve& curve, const StepperConfig& config,
                     const EnergyParams& params) {
  FlowState state{DiscreteCurve(curve.points())};
  state.energy = elastic_energy(state.curve, params, config.mode);
  state.grad_norm_l2ds = norm_l2ds(
      gradient(state.curve, params, config.mode).as_vector_field(), state.curve,
      config.mode);
  state.dt_last = config.dt_init;
  return state;
}

FlowState step(const FlowState& state, const StepperConfig& config,
               const EnergyParams& params) {
  if (!(config.dt_min <= config.dt_init && config.dt_init <= config.dt_max))
    throw InvalidSpec("stepper: need dt_min <= dt_init <= dt_max");
  double dt = std::clamp(state.dt_last > 0.0 ? state.dt_last : config.dt_init,
                         config.dt_min, config.dt_max);
  int base_streak = state.accept_streak;
  if (base_streak >= 10) {  // reward ten clean accepts with a doubled dt
    dt = std::min(2.0 * dt, config.dt_max);
    base_streak = 0;
  }
  if (config.scheme == Scheme::Explicit)
    dt = std::min(dt, explicit_cfl_dt(state.curve, config.mode));

  int halvings = 0;
  for (;;) {
    DiscreteCurve candidate =
        advance(state.curve, dt, config.scheme, params, config.mode);
    if (config.redistribute) candidate = tangential_redistribute(candidate);
    const double energy = elastic_energy(candidate, params, config.mode);
    if (energy <= state.energy + config.energy_tol) {
      FlowState next{std::move(candidate)};
      next.t = state.t + dt;
      next.energy = energy;
      next.grad_norm_l2ds = norm_l2ds(
          gradient(next.curve, params, config.mode).as_vector_field(), next.curve,
          config.mode);
      next.step_count = state.step_count + 1;
      next.dt_last = dt;
      next.accept_streak = halvings == 0 ? base_streak + 1 : 0;
      return next;
    }
    dt *= 0.5;
    ++halvings;
    if (dt < config.dt_min)
      throw StepFailure("no energy-monotone step above dt_min");
  }
}

EvolveResult evolve(const DiscreteCurve& initial, const StepperConfig& config,
                    const EnergyParams& params, const StepCallback& on_step) {
  return evolve(make_state(initial, config, params), config, params, on_step);
}

EvolveResult evolve(const FlowState& start, const StepperConfig& config,
                    const EnergyParams& params, const StepCallback& on_step) {
  EvolveResult result{start, {}, false};
  FlowState& state = result.state;

  auto record = [&](double dt) {
    const double vel_dtheta = norm_l2dtheta(
        gradient(state.curve, params, config.mode).as_vector_field(), state.curve);
    const TraceRow row{state.step_count, state.t,
                       dt,               state.energy,
                       state.grad_norm_l2ds, vel_dtheta,
                       state.grad_norm_l2ds, curve_length(state.curve, config.mode)};
    result.trace.push_back(row);
    if (on_step) on_step(state, row);
  };
  record(state.step_count == 0 ? 0.0 : state.dt_last);

  for (;;) {
    if (state.grad_norm_l2ds < config.stop_grad_tol) {
      result.converged = true;
      break;
    }
    if (state.t >= config.stop_t_max) break;
    state = step(state, config, params);
    record(state.dt_last);
  }
  return result;
}

}  // namespace elastica
