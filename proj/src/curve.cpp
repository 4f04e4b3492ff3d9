#include "elastica/curve.hpp"

#include <atomic>
#include <numbers>

#include "elastica/geometry.hpp"

namespace elastica {

namespace {
std::uint64_t next_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}
}  // namespace

DiscreteCurve::DiscreteCurve(Eigen::MatrixXd points)
    : points_(std::move(points)), id_(next_id()) {
  const int n = static_cast<int>(points_.rows());
  const int d = static_cast<int>(points_.cols());
  if (d < 2) throw InvalidSpec("curve dimension must be >= 2");
  if (n < kMinSamples || n % 2 != 0)
    throw InvalidSpec("sample count must be even and >= 16");
  if (!points_.allFinite()) throw InvalidSpec("curve has non-finite coordinates");
  const Eigen::VectorXd sp = speed(points_, DerivMode::Fd4);
  if (sp.minCoeff() < kEpsReg)
    throw DegenerateCurve("min |gamma'| below regularity floor");
}

double DiscreteCurve::theta(int i) const {
  return 2.0 * std::numbers::pi * static_cast<double>(i) / samples();
}

DiscreteCurve DiscreteCurve::translated(const Eigen::RowVectorXd& offset) const {
  Eigen::MatrixXd p = points_;
  p.rowwise() += offset;
  return DiscreteCurve(std::move(p));
}

void check_attached(const VectorField& f, const DiscreteCurve& curve) {
  if (f.curve_id != curve.id() || f.values.rows() != curve.samples() ||
      f.values.cols() != curve.dim())
    throw ShapeMismatch("vector field not attached to this curve");
}

void check_attached(const ScalarField& f, const DiscreteCurve& curve) {
  if (f.curve_id != curve.id() || f.values.size() != curve.samples())
    throw ShapeMismatch("scalar field not attached to this curve");
}

}  // namespace elastica
