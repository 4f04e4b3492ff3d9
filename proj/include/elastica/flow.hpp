#pragma once

#include <functional>
#include <vector>

#include "elastica/variation.hpp"

namespace elastica {

enum class Scheme { Explicit, SemiImplicit };

struct StepperConfig {
  Scheme scheme = Scheme::SemiImplicit;
  double dt_init = 1e-4;
  double dt_min = 1e-12;
  double dt_max = 1e-3;
  double energy_tol = 1e-12;  // allowed per-step energy increase
  bool redistribute = true;
  double stop_grad_tol = 1e-6;
  double stop_t_max = 10.0;
  int checkpoint_every = 0;
  DerivMode mode = DerivMode::Fd4;
};

struct FlowState {
  DiscreteCurve curve;
  double t = 0.0;
  double energy = 0.0;
  double grad_norm_l2ds = 0.0;
  double dt_last = 0.0;
  long step_count = 0;
  int accept_streak = 0;  // consecutive accepts since the last halving
};

struct TraceRow {
  long step;
  double t, dt, energy, grad_norm_l2ds, vel_norm_l2dtheta, vel_norm_l2ds, length;
};

using FlowTrace = std::vector<TraceRow>;

/// Flow velocity -gradient; a critical point does not move.
NormalField velocity(const DiscreteCurve& curve, const EnergyParams& params,
                     DerivMode mode = DerivMode::Fd4);

/// Reparametrizes toward constant |gamma'| by trigonometric interpolation in
/// arclength; the geometric image and the energy are preserved to
/// interpolation error. Near-uniform curves are returned unchanged.
DiscreteCurve tangential_redistribute(const DiscreteCurve& curve);

/// Stability bound for the explicit scheme: 0.9 * (dtheta * min|gamma'|)^4 / 8.
double explicit_cfl_dt(const DiscreteCurve& curve, DerivMode mode = DerivMode::Fd4);

FlowState make_state(const DiscreteCurve& curve, const StepperConfig& config,
                     const EnergyParams& params);

/// One accepted step: advances by an adaptive dt <= dt_last, halving on any
/// energy increase beyond energy_tol and failing below dt_min.
FlowState step(const FlowState& state, const StepperConfig& config,
               const EnergyParams& params);

struct EvolveResult {
  FlowState state;
  FlowTrace trace;
  bool converged = false;  // stop_grad_tol reached (vs stop_t_max hit)
};

using StepCallback = std::function<void(const FlowState&, const TraceRow&)>;

EvolveResult evolve(const DiscreteCurve& initial, const StepperConfig& config,
                    const EnergyParams& params, const StepCallback& on_step = {});

/// Continues from a saved state; with identical config this reproduces the
/// uninterrupted run row for row from the checkpoint on.
EvolveResult evolve(const FlowState& start, const StepperConfig& config,
                    const EnergyParams& params, const StepCallback& on_step = {});

}  // namespace elastica
