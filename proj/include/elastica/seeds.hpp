#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elastica/curve.hpp"

namespace elastica {

DiscreteCurve make_circle(double r, int samples, int dim = 2);
DiscreteCurve make_ellipse(double a, double b, int samples, int dim = 2);
DiscreteCurve make_w_covered_circle(double r, int winding, int samples, int dim = 2);
/// Gerono-style figure eight: scale * (sin t, sin t cos t).
DiscreteCurve make_figure_eight(double scale, int samples, int dim = 2);
/// Circle with a random radial perturbation on the given Fourier modes;
/// deterministic for a fixed rng_seed.
DiscreteCurve make_fourier_perturbed_circle(double r, const std::vector<int>& modes,
                                            double amplitude, std::uint64_t rng_seed,
                                            int samples, int dim = 2);

/// Parses seed strings of the form
///   circle:R | ellipse:A,B | w_circle:R,W | figure_eight:S |
///   fourier:R,M1|M2|...,AMP,SEED
/// and samples the curve on an N-point grid in R^dim.
DiscreteCurve seed_curve(const std::string& spec, int samples, int dim = 2);

}  // namespace elastica
