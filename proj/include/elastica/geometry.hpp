#pragma once

#include <Eigen/Dense>

#include "elastica/curve.hpp"

namespace elastica {

/// Normal vector field: tangential component below tol_perp * |X_i| at every
/// sample (checked against the tangent computed in the given mode).
class NormalField {
 public:
  static constexpr double kTolPerp = 1e-10;

  NormalField(const DiscreteCurve& curve, Eigen::MatrixXd values,
              DerivMode mode = DerivMode::Fd4, double tol_perp = kTolPerp);

  /// For values that are normal by construction (explicitly projected):
  /// skips the tolerance check, which would misfire on fields whose entries
  /// are pure cancellation noise (e.g. covariant derivatives that vanish
  /// analytically).
  static NormalField trusted(const DiscreteCurve& curve, Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  std::uint64_t curve_id() const { return curve_id_; }

  VectorField as_vector_field() const { return {values_, curve_id_}; }

 private:
  NormalField() = default;

  Eigen::MatrixXd values_;
  std::uint64_t curve_id_ = 0;
};

void check_attached(const NormalField& f, const DiscreteCurve& curve);

/// Periodic theta-derivative, row i holds d/dtheta at theta_i; columnwise.
Eigen::MatrixXd dtheta(const Eigen::MatrixXd& values, DerivMode mode);
Eigen::VectorXd dtheta(const Eigen::VectorXd& values, DerivMode mode);

/// |gamma'(theta_i)| per sample.
Eigen::VectorXd speed(const Eigen::MatrixXd& points, DerivMode mode);
Eigen::VectorXd speed(const DiscreteCurve& curve, DerivMode mode = DerivMode::Fd4);

/// Unit tangent tau = gamma' / |gamma'|.
VectorField tangent(const DiscreteCurve& curve, DerivMode mode = DerivMode::Fd4);

/// Curvature vector k = d_s tau, projected onto the normal space to remove
/// the O(N^-p) tangential pollution of the discrete derivative.
NormalField curvature(const DiscreteCurve& curve, DerivMode mode = DerivMode::Fd4);

/// Arclength derivative d_s = |gamma'|^-1 d_theta.
VectorField deriv_s(const VectorField& field, const DiscreteCurve& curve,
                    DerivMode mode = DerivMode::Fd4);
ScalarField deriv_s(const ScalarField& field, const DiscreteCurve& curve,
                    DerivMode mode = DerivMode::Fd4);

/// Pointwise projection of values onto the orthogonal complement of tangents.
Eigen::MatrixXd project_normal(const Eigen::MatrixXd& values,
                               const Eigen::MatrixXd& tangents);

/// Project a raw field onto the normal bundle and wrap it as a NormalField.
NormalField make_normal(const DiscreteCurve& curve, const Eigen::MatrixXd& values,
                        DerivMode mode = DerivMode::Fd4);

/// Normal connection: normal projection of the arclength derivative.
NormalField nabla_perp(const NormalField& field, const DiscreteCurve& curve,
                       DerivMode mode = DerivMode::Fd4);

/// Periodic trapezoid rule with weight |gamma'| * (2*pi/N).
double integrate_ds(const ScalarField& field, const DiscreteCurve& curve,
                    DerivMode mode = DerivMode::Fd4);

double inner_l2ds(const VectorField& x, const VectorField& y,
                  const DiscreteCurve& curve, DerivMode mode = DerivMode::Fd4);
double inner_l2dtheta(const VectorField& x, const VectorField& y,
                      const DiscreteCurve& curve);
double norm_l2ds(const VectorField& x, const DiscreteCurve& curve,
                 DerivMode mode = DerivMode::Fd4);
double norm_l2dtheta(const VectorField& x, const DiscreteCurve& curve);

double curve_length(const DiscreteCurve& curve, DerivMode mode = DerivMode::Fd4);

/// ds-weighted barycenter.
Eigen::RowVectorXd barycenter(const DiscreteCurve& curve,
                              DerivMode mode = DerivMode::Fd4);

/// Trigonometric interpolation onto a uniform grid of new_samples points.
DiscreteCurve resample(const DiscreteCurve& curve, int new_samples);

}  // namespace elastica
