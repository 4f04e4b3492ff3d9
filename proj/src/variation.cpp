#include "elastica/variation.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <thread>

namespace elastica {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int worker_count() {
  if (const char* env = std::getenv("ELASTICA_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, count), split over the worker pool.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

double elastic_energy(const DiscreteCurve& curve, const EnergyParams& params,
                      DerivMode mode) {
  if (!(params.lambda > 0.0)) throw InvalidSpec("lambda must be positive");
  const NormalField k = curvature(curve, mode);
  ScalarField integrand{
      params.lambda + 0.5 * k.values().rowwise().squaredNorm().array(), curve.id()};
  return integrate_ds(integrand, curve, mode);
}

NormalField gradient(const DiscreteCurve& curve, const EnergyParams& params,
                     DerivMode mode) {
  if (!(params.lambda > 0.0)) throw InvalidSpec("lambda must be positive");
  const NormalField k = curvature(curve, mode);
  const NormalField nnk = nabla_perp(nabla_perp(k, curve, mode), curve, mode);
  const Eigen::VectorXd k2 = k.values().rowwise().squaredNorm();
  Eigen::MatrixXd g = nnk.values() +
                      (k.values().array().colwise() * (0.5 * k2.array())).matrix() -
                      params.lambda * k.values();
  // Re-project the sum: each term is normal, but cancellation near critical
  // points can leave tangential noise above the strict constructor tolerance.
  return make_normal(curve, g, mode);
}

double first_variation(const DiscreteCurve& curve, const VectorField& x,
                       const EnergyParams& params, DerivMode mode) {
  check_attached(x, curve);
  const NormalField g = gradient(curve, params, mode);
  // g is normal, so the inner product sees only the normal part of x.
  return inner_l2ds(g.as_vector_field(), x, curve, mode);
}

double fd_directional(const DiscreteCurve& curve, const VectorField& x,
                      const EnergyParams& params, double h, DerivMode mode) {
  check_attached(x, curve);
  if (!(h > 0.0)) throw InvalidSpec("fd_directional: h must be positive");
  const DiscreteCurve plus(curve.points() + h * x.values);
  const DiscreteCurve minus(curve.points() - h * x.values);
  return (elastic_energy(plus, params, mode) - elastic_energy(minus, params, mode)) /
         (2.0 * h);
}

NormalBasis::NormalBasis(const DiscreteCurve& curve, DerivMode mode)
    : samples_(curve.samples()), dim_(curve.dim()), curve_id_(curve.id()) {
  const Eigen::MatrixXd tau = tangent(curve, mode).values;
  const Eigen::VectorXd sp = speed(curve, mode);
  frames_.resize(samples_);
  const int m = dim_ - 1;
  for (int i = 0; i < samples_; ++i) {
    Eigen::MatrixXd frame(m, dim_);
    int accepted = 0;
    // Seed from the previous frame (parallel-transport continuity), then top
    // up from ambient axes when the transported vectors degenerate.
    auto try_accept = [&](Eigen::RowVectorXd v) {
      v -= v.dot(tau.row(i)) * tau.row(i);
      for (int a = 0; a < accepted; ++a) v -= v.dot(frame.row(a)) * frame.row(a);
      const double nrm = v.norm();
      if (nrm < 1e-6) return;
      frame.row(accepted++) = v / nrm;
    };
    if (i > 0)
      for (int a = 0; a < m && accepted < m; ++a) try_accept(frames_[i - 1].row(a));
    for (int c = 0; c < dim_ && accepted < m; ++c)
      try_accept(Eigen::RowVectorXd::Unit(dim_, c));
    if (accepted < m)
      throw Error("normal basis: could not complete frame");  // unreachable
    frames_[i] = std::move(frame);
  }
  weights_.resize(size());
  for (int i = 0; i < samples_; ++i)
    weights_.segment(i * m, m).setConstant(sp[i] * kTwoPi / samples_);
}

Eigen::VectorXd NormalBasis::to_coords(const Eigen::MatrixXd& values) const {
  const int m = dim_ - 1;
  Eigen::VectorXd out(size());
  for (int i = 0; i < samples_; ++i)
    out.segment(i * m, m) = frames_[i] * values.row(i).transpose();
  return out;
}

Eigen::MatrixXd NormalBasis::to_values(const Eigen::VectorXd& coords) const {
  const int m = dim_ - 1;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(samples_, dim_);
  for (int i = 0; i < samples_; ++i)
    out.row(i) = coords.segment(i * m, m).transpose() * frames_[i];
  return out;
}

OperatorMatrix hessian_matrix(const DiscreteCurve& curve, const EnergyParams& params,
                              const NormalBasis& basis, DerivMode mode, double h) {
  if (basis.curve_id() != curve.id())
    throw ShapeMismatch("hessian_matrix: basis built on a different curve");
  // The gradient is linearized over a span where its high-mode response is
  // strongly nonlinear, so the truncation bias scales like h^2 times a large
  // constant; 1e-6 keeps that bias below the roundoff floor of the stencil.
  if (h <= 0.0) h = 1e-6 * (1.0 + curve.points().cwiseAbs().maxCoeff());
  const int m = curve.dim() - 1;
  const int size = basis.size();
  const double w_theta = kTwoPi / curve.samples();
  Eigen::MatrixXd a(size, size);

  parallel_for(size, [&](int col) {
    const int i = col / m, c = col % m;
    Eigen::MatrixXd pts_plus = curve.points();
    Eigen::MatrixXd pts_minus = curve.points();
    pts_plus.row(i) += h * basis.frame(i).row(c);
    pts_minus.row(i) -= h * basis.frame(i).row(c);
    const DiscreteCurve plus(std::move(pts_plus));
    const DiscreteCurve minus(std::move(pts_minus));
    // delta^2 E(e_col, e_b) = d/d eps <G(gamma + eps e_col), e_b>_{L2(ds)}.
    const Eigen::MatrixXd gp =
        (gradient(plus, params, mode).values().array().colwise() *
         (speed(plus, mode).array() * w_theta))
            .matrix();
    const Eigen::MatrixXd gm =
        (gradient(minus, params, mode).values().array().colwise() *
         (speed(minus, mode).array() * w_theta))
            .matrix();
    a.col(col) = basis.to_coords((gp - gm) / (2.0 * h));
  });

  OperatorMatrix op;
  op.symmetry_defect = (a - a.transpose()).cwiseAbs().maxCoeff();
  op.form = 0.5 * (a + a.transpose());
  op.weight = basis.ds_weights();
  op.curve_id = curve.id();
  op.samples = curve.samples();
  op.dim = curve.dim();
  return op;
}

OperatorMatrix id_plus_nabla4_matrix(const DiscreteCurve& curve,
                                     const NormalBasis& basis, DerivMode mode) {
  if (basis.curve_id() != curve.id())
    throw ShapeMismatch("id_plus_nabla4_matrix: basis built on a different curve");
  const int m = curve.dim() - 1;
  const int size = basis.size();
  Eigen::MatrixXd a(size, size);
  parallel_for(size, [&](int col) {
    const int i = col / m, c = col % m;
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(curve.samples(), curve.dim());
    e.row(i) = basis.frame(i).row(c);
    NormalField x(curve, e, mode);
    for (int pass = 0; pass < 4; ++pass) x = nabla_perp(x, curve, mode);
    a.col(col) = basis.to_coords(e + x.values());
  });
  // Bilinear form <(Id + nabla_perp^4) e_a, e_b>_{L2(ds)}.
  Eigen::MatrixXd b = basis.ds_weights().asDiagonal() * a;
  OperatorMatrix op;
  op.symmetry_defect = (b - b.transpose()).cwiseAbs().maxCoeff();
  op.form = 0.5 * (b + b.transpose());
  op.weight = basis.ds_weights();
  op.curve_id = curve.id();
  op.samples = curve.samples();
  op.dim = curve.dim();
  return op;
}

Eigen::VectorXd operator_eigenvalues(const OperatorMatrix& op) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      op.form, Eigen::MatrixXd(op.weight.asDiagonal()));
  if (solver.info() != Eigen::Success)
    throw Error("operator_eigenvalues: eigensolver failed");
  return solver.eigenvalues();
}

int kernel_dim(const OperatorMatrix& op, double rel_tol) {
  const Eigen::VectorXd mu = operator_eigenvalues(op);
  const double scale = mu.cwiseAbs().maxCoeff();
  int count = 0;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (std::abs(mu[i]) <= rel_tol * scale) ++count;
  return count;
}

Eigen::VectorXd operator_apply(const OperatorMatrix& op, const Eigen::VectorXd& x) {
  if (x.size() != op.form.rows()) throw ShapeMismatch("operator_apply: size mismatch");
  return op.weight.cwiseInverse().asDiagonal() * (op.form * x);
}

}  // namespace elastica
