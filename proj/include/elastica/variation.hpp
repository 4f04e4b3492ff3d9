#pragma once

#include <Eigen/Dense>
#include <vector>

#include "elastica/geometry.hpp"

namespace elastica {

struct EnergyParams {
  double lambda = 1.0;  // weight of the length term, must be > 0
};

/// E(gamma) = integral of (lambda + |k|^2/2) ds.
double elastic_energy(const DiscreteCurve& curve, const EnergyParams& params,
                      DerivMode mode = DerivMode::Fd4);

/// Exact L2(ds)-gradient: nabla_perp nabla_perp k + |k|^2 k / 2 - lambda k.
NormalField gradient(const DiscreteCurve& curve, const EnergyParams& params,
                     DerivMode mode = DerivMode::Fd4);

/// <gradient, X^perp>_{L2(ds)}; depends only on the normal part of X.
double first_variation(const DiscreteCurve& curve, const VectorField& x,
                       const EnergyParams& params, DerivMode mode = DerivMode::Fd4);

/// Central-difference oracle [E(gamma + hX) - E(gamma - hX)] / (2h).
double fd_directional(const DiscreteCurve& curve, const VectorField& x,
                      const EnergyParams& params, double h,
                      DerivMode mode = DerivMode::Fd4);

/// Orthonormal frame of the normal space at every sample, built by
/// Gram-Schmidt from ambient axes with a parallel-transport continuity fix-up
/// along the curve. Basis fields are localized: one frame vector at one
/// sample, zero elsewhere; the ds inner product is diagonal on them.
class NormalBasis {
 public:
  explicit NormalBasis(const DiscreteCurve& curve, DerivMode mode = DerivMode::Fd4);

  int size() const { return samples_ * (dim_ - 1); }
  int samples() const { return samples_; }
  int dim() const { return dim_; }
  std::uint64_t curve_id() const { return curve_id_; }

  /// Frame vectors at sample i, rows are the (dim-1) normal directions.
  const Eigen::MatrixXd& frame(int i) const { return frames_[i]; }

  /// Coordinates of a normal field in the basis (per-sample frame dots).
  Eigen::VectorXd to_coords(const Eigen::MatrixXd& values) const;
  Eigen::MatrixXd to_values(const Eigen::VectorXd& coords) const;

  /// Diagonal of the ds Gram matrix: |gamma'_i| * 2*pi/N per basis index.
  const Eigen::VectorXd& ds_weights() const { return weights_; }

 private:
  int samples_, dim_;
  std::uint64_t curve_id_;
  std::vector<Eigen::MatrixXd> frames_;
  Eigen::VectorXd weights_;
};

/// Dense symmetric bilinear form on a normal-field basis, with the diagonal
/// ds weight of the generalized eigenproblem form * x = mu * weight * x.
struct OperatorMatrix {
  Eigen::MatrixXd form;
  Eigen::VectorXd weight;
  double symmetry_defect = 0.0;  // max|A - A^T| before symmetrization
  std::uint64_t curve_id = 0;
  int samples = 0;
  int dim = 0;
};

/// FD Hessian of E restricted to normal fields: form(a,b) = d^2 E along the
/// basis pair, assembled by central differences of the exact gradient.
/// h < 0 selects the default 1e-6 * (1 + max|gamma|).
OperatorMatrix hessian_matrix(const DiscreteCurve& curve, const EnergyParams& params,
                              const NormalBasis& basis,
                              DerivMode mode = DerivMode::Fd4, double h = -1.0);

/// Bilinear form of X -> X + (nabla_perp)^4 X.
OperatorMatrix id_plus_nabla4_matrix(const DiscreteCurve& curve,
                                     const NormalBasis& basis,
                                     DerivMode mode = DerivMode::Fd4);

/// Eigenvalues of the ds-weighted generalized problem, ascending.
Eigen::VectorXd operator_eigenvalues(const OperatorMatrix& op);

/// Count of eigenvalues with |mu| <= rel_tol * max|mu|.
int kernel_dim(const OperatorMatrix& op, double rel_tol);

/// Apply the operator to basis coordinates: weight^-1 * form * x.
Eigen::VectorXd operator_apply(const OperatorMatrix& op, const Eigen::VectorXd& x);

}  // namespace elastica
