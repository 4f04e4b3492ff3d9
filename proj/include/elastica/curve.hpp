#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "elastica/errors.hpp"

namespace elastica {

/// Differentiation backend for the periodic grid. Fd4 (order-4 centered
/// stencils) is the default; Spectral differentiates the trigonometric
/// interpolant and serves verification.
enum class DerivMode { Fd4, Spectral };

/// Closed polygonal curve in R^n sampled at theta_i = 2*pi*i/N on a uniform
/// periodic grid. Closedness is structural: indices wrap, no duplicated
/// endpoint. Regularity (min |gamma'| > eps_reg) is checked on construction.
class DiscreteCurve {
 public:
  static constexpr double kEpsReg = 1e-12;
  static constexpr int kMinSamples = 16;

  explicit DiscreteCurve(Eigen::MatrixXd points);

  int samples() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const { return points_; }
  double theta(int i) const;
  std::uint64_t id() const { return id_; }

  DiscreteCurve translated(const Eigen::RowVectorXd& offset) const;

 private:
  Eigen::MatrixXd points_;  // samples x dim
  std::uint64_t id_;
};

/// Vector field along a curve; one ambient vector per sample.
struct VectorField {
  Eigen::MatrixXd values;  // samples x dim
  std::uint64_t curve_id = 0;
};

struct ScalarField {
  Eigen::VectorXd values;
  std::uint64_t curve_id = 0;
};

void check_attached(const VectorField& f, const DiscreteCurve& curve);
void check_attached(const ScalarField& f, const DiscreteCurve& curve);

}  // namespace elastica
