#pragma once

#include <utility>
#include <vector>

#include "elastica/flow.hpp"
#include "elastica/graph.hpp"

namespace elastica {

struct LojaRow {
  double t;
  double energy_gap;       // E(gamma_t) - E_ref, non-increasing
  double dual_grad_norm;   // L2(dtheta) norm of |gamma'| * G
  double vel_l2dtheta;
  double length;
};

/// Time series for exponent fitting against a limit energy E_ref.
struct LojaTrace {
  std::vector<LojaRow> rows;
  double e_ref = 0.0;
};

/// Builds a LojaTrace from a flow trace; E_ref defaults to the final energy.
/// Throws NegativeGap if any gap < -1e-12 and requires strictly increasing t.
LojaTrace make_loja_trace(const FlowTrace& trace, double e_ref);
LojaTrace make_loja_trace(const FlowTrace& trace);

/// ( integral |gamma'|^2 |G|^2 dtheta )^{1/2}: the norm of the first
/// variation in the dual of the L2(dtheta) normal fields.
double dual_grad_norm(const DiscreteCurve& curve, const EnergyParams& params,
                      DerivMode mode = DerivMode::Fd4);

struct FitWindow {
  double g_min = 1e-10;
  double g_max = 1e-2;
};

struct LojaFit {
  double alpha = 0.0;
  double c = 0.0;          // envelope constant of gap^(1-alpha) <= c * dual
  double g_min = 0.0, g_max = 0.0;
  double residual = 0.0;   // RMS orthogonal log-log deviation from the fit
  int points_used = 0;
  int violations = 0;      // rows violating the inequality with 5% slack on c
};

/// Total-least-squares fit of log(dual) against log(gap) over the window;
/// alpha = 1 - slope, clipped to (0, 1].
LojaFit fit_alpha(const LojaTrace& trace, FitWindow window = {});

/// H(t) = gap(t)^alpha.
std::vector<std::pair<double, double>> h_function(const LojaTrace& trace,
                                                  double alpha);

/// Trapezoid integral of vel_l2dtheta over [t0, end of trace].
double l1_velocity(const LojaTrace& trace, double t0);

/// L2(dtheta) distances between consecutive snapshots, each represented as a
/// normal graph over the reference.
std::vector<double> cauchy_distances(const std::vector<DiscreteCurve>& snapshots,
                                     const DiscreteCurve& reference);

}  // namespace elastica
