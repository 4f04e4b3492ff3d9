#include "elastica/geometry.hpp"

#include <cmath>
#include <numbers>

#include "elastica/fourier.hpp"

namespace elastica {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXd dtheta_fd4(const Eigen::VectorXd& f) {
  const int n = static_cast<int>(f.size());
  const double h = kTwoPi / n;
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    const int ip1 = (i + 1) % n, ip2 = (i + 2) % n;
    const int im1 = (i + n - 1) % n, im2 = (i + n - 2) % n;
    out[i] = (8.0 * (f[ip1] - f[im1]) - (f[ip2] - f[im2])) / (12.0 * h);
  }
  return out;
}

}  // namespace

Eigen::VectorXd dtheta(const Eigen::VectorXd& values, DerivMode mode) {
  if (mode == DerivMode::Fd4) return dtheta_fd4(values);
  return fourier::spectral_derivative(values);
}

Eigen::MatrixXd dtheta(const Eigen::MatrixXd& values, DerivMode mode) {
  Eigen::MatrixXd out(values.rows(), values.cols());
  for (Eigen::Index c = 0; c < values.cols(); ++c)
    out.col(c) = dtheta(Eigen::VectorXd(values.col(c)), mode);
  return out;
}

Eigen::VectorXd speed(const Eigen::MatrixXd& points, DerivMode mode) {
  return dtheta(points, mode).rowwise().norm();
}

Eigen::VectorXd speed(const DiscreteCurve& curve, DerivMode mode) {
  return speed(curve.points(), mode);
}

VectorField tangent(const DiscreteCurve& curve, DerivMode mode) {
  Eigen::MatrixXd d = dtheta(curve.points(), mode);
  const Eigen::VectorXd sp = d.rowwise().norm();
  if (sp.minCoeff() < DiscreteCurve::kEpsReg)
    throw DegenerateCurve("tangent: |gamma'| below regularity floor");
  d.array().colwise() /= sp.array();
  return {std::move(d), curve.id()};
}

Eigen::MatrixXd project_normal(const Eigen::MatrixXd& values,
                               const Eigen::MatrixXd& tangents) {
  const Eigen::VectorXd dots = (values.array() * tangents.array()).rowwise().sum();
  return values - (tangents.array().colwise() * dots.array()).matrix();
}

NormalField::NormalField(const DiscreteCurve& curve, Eigen::MatrixXd values,
                         DerivMode mode, double tol_perp)
    : values_(std::move(values)), curve_id_(curve.id()) {
  if (values_.rows() != curve.samples() || values_.cols() != curve.dim())
    throw ShapeMismatch("normal field size does not match curve");
  const Eigen::MatrixXd tau = tangent(curve, mode).values;
  for (int i = 0; i < curve.samples(); ++i) {
    const double t = std::abs(values_.row(i).dot(tau.row(i)));
    if (t > tol_perp * std::max(values_.row(i).norm(), 1e-300))
      throw NotNormal("field has tangential component above tol_perp");
  }
}

NormalField NormalField::trusted(const DiscreteCurve& curve, Eigen::MatrixXd values) {
  if (values.rows() != curve.samples() || values.cols() != curve.dim())
    throw ShapeMismatch("normal field size does not match curve");
  NormalField out;
  out.values_ = std::move(values);
  out.curve_id_ = curve.id();
  return out;
}

void check_attached(const NormalField& f, const DiscreteCurve& curve) {
  if (f.curve_id() != curve.id() || f.values().rows() != curve.samples())
    throw ShapeMismatch("normal field not attached to this curve");
}

NormalField make_normal(const DiscreteCurve& curve, const Eigen::MatrixXd& values,
                        DerivMode mode) {
  const Eigen::MatrixXd tau = tangent(curve, mode).values;
  return NormalField::trusted(curve, project_normal(values, tau));
}

NormalField curvature(const DiscreteCurve& curve, DerivMode mode) {
  const Eigen::MatrixXd d = dtheta(curve.points(), mode);
  const Eigen::VectorXd sp = d.rowwise().norm();
  if (sp.minCoeff() < DiscreteCurve::kEpsReg)
    throw DegenerateCurve("curvature: |gamma'| below regularity floor");
  const Eigen::MatrixXd tau = (d.array().colwise() / sp.array()).matrix();
  Eigen::MatrixXd dst = dtheta(tau, mode);
  dst.array().colwise() /= sp.array();
  return NormalField::trusted(curve, project_normal(dst, tau));
}

VectorField deriv_s(const VectorField& field, const DiscreteCurve& curve,
                    DerivMode mode) {
  check_attached(field, curve);
  Eigen::MatrixXd d = dtheta(field.values, mode);
  const Eigen::VectorXd sp = speed(curve, mode);
  if (sp.minCoeff() < DiscreteCurve::kEpsReg)
    throw DegenerateCurve("deriv_s: |gamma'| below regularity floor");
  d.array().colwise() /= sp.array();
  return {std::move(d), curve.id()};
}

ScalarField deriv_s(const ScalarField& field, const DiscreteCurve& curve,
                    DerivMode mode) {
  check_attached(field, curve);
  Eigen::VectorXd d = dtheta(field.values, mode);
  const Eigen::VectorXd sp = speed(curve, mode);
  if (sp.minCoeff() < DiscreteCurve::kEpsReg)
    throw DegenerateCurve("deriv_s: |gamma'| below regularity floor");
  d.array() /= sp.array();
  return {std::move(d), curve.id()};
}

NormalField nabla_perp(const NormalField& field, const DiscreteCurve& curve,
                       DerivMode mode) {
  check_attached(field, curve);
  Eigen::MatrixXd d = dtheta(field.values(), mode);
  const Eigen::MatrixXd dg = dtheta(curve.points(), mode);
  const Eigen::VectorXd sp = dg.rowwise().norm();
  const Eigen::MatrixXd tau = (dg.array().colwise() / sp.array()).matrix();
  d.array().colwise() /= sp.array();
  return NormalField::trusted(curve, project_normal(d, tau));
}

double integrate_ds(const ScalarField& field, const DiscreteCurve& curve,
                    DerivMode mode) {
  check_attached(field, curve);
  const Eigen::VectorXd sp = speed(curve, mode);
  return field.values.dot(sp) * kTwoPi / curve.samples();
}

double inner_l2ds(const VectorField& x, const VectorField& y,
                  const DiscreteCurve& curve, DerivMode mode) {
  check_attached(x, curve);
  check_attached(y, curve);
  const Eigen::VectorXd sp = speed(curve, mode);
  const Eigen::VectorXd dots = (x.values.array() * y.values.array()).rowwise().sum();
  return dots.dot(sp) * kTwoPi / curve.samples();
}

double inner_l2dtheta(const VectorField& x, const VectorField& y,
                      const DiscreteCurve& curve) {
  check_attached(x, curve);
  check_attached(y, curve);
  return (x.values.array() * y.values.array()).sum() * kTwoPi / curve.samples();
}

double norm_l2ds(const VectorField& x, const DiscreteCurve& curve, DerivMode mode) {
  return std::sqrt(std::max(0.0, inner_l2ds(x, x, curve, mode)));
}

double norm_l2dtheta(const VectorField& x, const DiscreteCurve& curve) {
  return std::sqrt(std::max(0.0, inner_l2dtheta(x, x, curve)));
}

double curve_length(const DiscreteCurve& curve, DerivMode mode) {
  return speed(curve, mode).sum() * kTwoPi / curve.samples();
}

Eigen::RowVectorXd barycenter(const DiscreteCurve& curve, DerivMode mode) {
  const Eigen::VectorXd sp = speed(curve, mode);
  const double len = sp.sum();
  return (sp.transpose() * curve.points()) / len;
}

DiscreteCurve resample(const DiscreteCurve& curve, int new_samples) {
  if (new_samples < DiscreteCurve::kMinSamples || new_samples % 2 != 0)
    throw InvalidSpec("resample: target sample count must be even and >= 16");
  if (new_samples == curve.samples()) return DiscreteCurve(curve.points());
  Eigen::MatrixXd out(new_samples, curve.dim());
  for (int c = 0; c < curve.dim(); ++c) {
    const fourier::TrigSeries series{Eigen::VectorXd(curve.points().col(c))};
    for (int i = 0; i < new_samples; ++i)
      out(i, c) = series.eval(kTwoPi * i / new_samples);
  }
  return DiscreteCurve(std::move(out));
}

}  // namespace elastica
