#pragma once

#include <memory>

#include "elastica/geometry.hpp"

namespace elastica {

/// Tubular neighborhood of a reference curve: radius below both the
/// curvature bound and (half of) the sampled self-distance, with cached
/// trigonometric interpolants for fast nearest-point projection.
class TubularData {
 public:
  // Projection and graph extraction work against the trigonometric
  // interpolant of the reference, so the consistent derivative mode for the
  // attached normal fields is the spectral one.
  explicit TubularData(const DiscreteCurve& reference,
                       DerivMode mode = DerivMode::Spectral);

  const DiscreteCurve& reference() const { return reference_; }
  double radius() const { return radius_; }
  DerivMode mode() const { return mode_; }

  Eigen::RowVectorXd point_at(double theta) const;
  Eigen::RowVectorXd deriv_at(double theta) const;
  Eigen::RowVectorXd deriv2_at(double theta) const;

 private:
  DiscreteCurve reference_;
  double radius_;
  DerivMode mode_;
  struct Interp;
  std::shared_ptr<const Interp> interp_;
};

/// Safe tubular radius estimate: 0.5 * min(1/max|k|, self_distance/2). The
/// self-distance of a sample pair is the chord length normalized by
/// sin(pi*m/N) for cyclic index separation m, which equals the diameter on a
/// circle and collapses at near self-intersections.
double tubular_radius(const DiscreteCurve& reference,
                      DerivMode mode = DerivMode::Fd4);

struct Projection {
  double theta = 0.0;          // parameter of the foot point
  Eigen::RowVectorXd foot;     // gamma(theta)
  Eigen::RowVectorXd offset;   // x - foot, orthogonal to the curve there
};

/// Nearest-point projection by Newton iteration on <x - gamma, gamma'> = 0,
/// seeded at the nearest sample and confined to its +-N/8 index window so
/// that immersed references stay well posed piecewise.
Projection project(const TubularData& tub, const Eigen::RowVectorXd& x);

/// Represents sigma as a normal graph gamma + Y over the reference, sampling
/// Y back onto the reference grid. Throws FoldedGraph if the induced
/// reparametrization is not monotone, OutsideTube if sigma leaves the tube.
NormalField normal_graph(const TubularData& tub, const DiscreteCurve& sigma);

/// Subtracts the ds-weighted barycenter.
DiscreteCurve quotient_translation(const DiscreteCurve& curve,
                                   DerivMode mode = DerivMode::Fd4);

}  // namespace elastica
