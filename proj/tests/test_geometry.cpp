#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "elastica/geometry.hpp"
#include "elastica/seeds.hpp"
#include "helpers.hpp"

using namespace elastica;
using testutil::kTwoPi;

namespace {

Eigen::MatrixXd random_trig_values(const DiscreteCurve& curve, std::mt19937& rng,
                                   int max_mode = 5) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const int n = curve.samples();
  Eigen::MatrixXd values(n, curve.dim());
  for (int c = 0; c < curve.dim(); ++c) {
    for (int i = 0; i < n; ++i) values(i, c) = 0.0;
    for (int m = 0; m <= max_mode; ++m) {
      const double a = coeff(rng), b = coeff(rng);
      for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n;
        values(i, c) += a * std::cos(m * t) + b * std::sin(m * t);
      }
    }
  }
  return values;
}

}  // namespace

TEST_CASE("curve construction validates its input") {
  CHECK_THROWS_AS(DiscreteCurve(Eigen::MatrixXd::Random(15, 2)), Error);  // odd
  CHECK_THROWS_AS(DiscreteCurve(Eigen::MatrixXd::Random(8, 2)), Error);   // too few
  CHECK_THROWS_AS(DiscreteCurve(Eigen::MatrixXd::Random(32, 1)), Error);  // dim 1
  CHECK_THROWS_AS(DiscreteCurve(Eigen::MatrixXd::Zero(32, 2)), DegenerateCurve);

  Eigen::MatrixXd bad = make_circle(1.0, 32).points();
  bad(3, 0) = std::nan("");
  CHECK_THROWS_AS(DiscreteCurve{bad}, Error);

  const DiscreteCurve c = make_circle(1.0, 32);
  CHECK(c.samples() == 32);
  CHECK(c.dim() == 2);
  CHECK(c.theta(8) == doctest::Approx(kTwoPi / 4).epsilon(1e-15));
}

TEST_CASE("tangent and speed on a circle") {
  const double r = 2.0;
  const DiscreteCurve c = make_circle(r, 64);
  for (const DerivMode mode : {DerivMode::Spectral, DerivMode::Fd4}) {
    // The order-4 stencil carries an O((2*pi/N)^4) truncation error.
    const double eps = mode == DerivMode::Spectral ? 1e-12 : 1e-5;
    const Eigen::VectorXd sp = speed(c, mode);
    const VectorField tau = tangent(c, mode);
    for (int i = 0; i < c.samples(); ++i) {
      const double t = c.theta(i);
      CHECK(sp[i] == doctest::Approx(r).epsilon(eps));
      CHECK(tau.values(i, 0) == doctest::Approx(-std::sin(t)).epsilon(eps));
      CHECK(tau.values(i, 1) == doctest::Approx(std::cos(t)).epsilon(eps));
    }
  }
}

TEST_CASE("circle curvature points inward with magnitude 1/r") {
  for (const double r : {0.5, 1.0, 2.0}) {
    const DiscreteCurve c = make_circle(r, 64);
    const NormalField k = curvature(c, DerivMode::Spectral);
    for (int i = 0; i < c.samples(); ++i) {
      const double t = c.theta(i);
      CHECK(k.values()(i, 0) == doctest::Approx(-std::cos(t) / r).epsilon(1e-10));
      CHECK(k.values()(i, 1) == doctest::Approx(-std::sin(t) / r).epsilon(1e-10));
    }
  }
}

TEST_CASE("ellipse curvature at the major axis vertex is a/b^2") {
  // a = 1.2, b = 0.8: kappa(0) = a/b^2 = 1.875 exactly, pointing inward.
  const DiscreteCurve c = make_ellipse(1.2, 0.8, 256);
  const NormalField k = curvature(c, DerivMode::Spectral);
  CHECK(k.values()(0, 0) == doctest::Approx(-1.875).epsilon(1e-9));
  CHECK(k.values()(0, 1) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("length and ds integration") {
  const DiscreteCurve c = make_circle(1.5, 128);
  CHECK(curve_length(c, DerivMode::Spectral) ==
        doctest::Approx(kTwoPi * 1.5).epsilon(1e-12));

  ScalarField one{Eigen::VectorXd::Ones(c.samples()), c.id()};
  CHECK(integrate_ds(one, c, DerivMode::Spectral) ==
        doctest::Approx(kTwoPi * 1.5).epsilon(1e-12));

  // <k, k>_ds = 2*pi / r on a circle.
  for (const double r : {0.7, 1.0, 3.0}) {
    const DiscreteCurve circ = make_circle(r, 64);
    const VectorField k = curvature(circ, DerivMode::Spectral).as_vector_field();
    CHECK(inner_l2ds(k, k, circ, DerivMode::Spectral) ==
          doctest::Approx(kTwoPi / r).epsilon(1e-10));
  }
}

TEST_CASE("normal projection is idempotent and kills the tangent") {
  const DiscreteCurve c = make_ellipse(1.2, 0.8, 64);
  std::mt19937 rng(42);
  const Eigen::MatrixXd raw = random_trig_values(c, rng);
  const Eigen::MatrixXd tau = tangent(c, DerivMode::Fd4).values;
  const Eigen::MatrixXd once = project_normal(raw, tau);
  const Eigen::MatrixXd twice = project_normal(once, tau);
  CHECK((twice - once).cwiseAbs().maxCoeff() <= 1e-14);
  for (int i = 0; i < c.samples(); ++i)
    CHECK(std::abs(once.row(i).dot(tau.row(i))) <= 1e-13);

  const NormalField field = make_normal(c, raw, DerivMode::Fd4);
  CHECK_THROWS_AS(NormalField(c, tau, DerivMode::Fd4), NotNormal);
  CHECK_NOTHROW(NormalField(c, field.values(), DerivMode::Fd4));
}

TEST_CASE("nabla_perp output is normal and obeys summation by parts") {
  std::mt19937 rng(7);
  for (const DerivMode mode : {DerivMode::Fd4, DerivMode::Spectral}) {
    const DiscreteCurve c = make_ellipse(1.1, 0.9, 64);
    const NormalField x = make_normal(c, random_trig_values(c, rng), mode);
    const NormalField y = make_normal(c, random_trig_values(c, rng), mode);
    const NormalField dx = nabla_perp(x, c, mode);
    const NormalField dy = nabla_perp(y, c, mode);

    const Eigen::MatrixXd tau = tangent(c, mode).values;
    for (int i = 0; i < c.samples(); ++i)
      CHECK(std::abs(dx.values().row(i).dot(tau.row(i))) <= 1e-12);

    // <nabla_perp x, y>_ds + <x, nabla_perp y>_ds = 0 to machine precision:
    // the periodic difference matrix is antisymmetric in both modes.
    const double lhs = inner_l2ds(dx.as_vector_field(), y.as_vector_field(), c, mode);
    const double rhs = inner_l2ds(x.as_vector_field(), dy.as_vector_field(), c, mode);
    CHECK(std::abs(lhs + rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
  }
}

TEST_CASE("spectral derivative is exact on band-limited data") {
  const int n = 32;
  Eigen::VectorXd f(n), expected(n);
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    f[i] = std::sin(3.0 * t) + 0.5 * std::cos(7.0 * t);
    expected[i] = 3.0 * std::cos(3.0 * t) - 3.5 * std::sin(7.0 * t);
  }
  const Eigen::VectorXd d = dtheta(f, DerivMode::Spectral);
  CHECK((d - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("fd4 curvature error decays at fourth order") {
  std::vector<double> logn, logerr;
  for (const int n : {32, 64, 128, 256}) {
    const DiscreteCurve c = make_ellipse(1.2, 0.8, n);
    const Eigen::MatrixXd k = curvature(c, DerivMode::Fd4).values();
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = c.theta(i);
      const double w = std::pow(1.44 * std::sin(t) * std::sin(t) +
                                    0.64 * std::cos(t) * std::cos(t),
                                1.5);
      const double kappa = 1.2 * 0.8 / w;  // analytic magnitude
      err = std::max(err, std::abs(k.row(i).norm() - kappa));
    }
    logn.push_back(std::log(n));
    logerr.push_back(std::log(err));
  }
  const double slope = testutil::fit_slope(logn, logerr);
  CHECK(slope == doctest::Approx(-4.0).epsilon(0.075));  // within +-0.3
}

TEST_CASE("resample agrees with the trigonometric interpolant") {
  const DiscreteCurve coarse = make_ellipse(1.2, 0.8, 32);
  const DiscreteCurve fine = resample(coarse, 64);
  const DiscreteCurve exact = make_ellipse(1.2, 0.8, 64);
  CHECK((fine.points() - exact.points()).cwiseAbs().maxCoeff() <= 1e-12);

  const DiscreteCurve back = resample(fine, 32);
  CHECK((back.points() - coarse.points()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS_AS(resample(coarse, 33), InvalidSpec);
}

TEST_CASE("barycenter tracks translations") {
  const DiscreteCurve c = make_circle(1.0, 64);
  Eigen::RowVectorXd offset(2);
  offset << 0.3, -0.7;
  const DiscreteCurve moved = c.translated(offset);
  const Eigen::RowVectorXd bc = barycenter(moved, DerivMode::Spectral);
  CHECK(bc[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(bc[1] == doctest::Approx(-0.7).epsilon(1e-12));
}

TEST_CASE("fields must be attached to the curve they are used with") {
  const DiscreteCurve a = make_circle(1.0, 32);
  const DiscreteCurve b = make_circle(1.0, 32);
  const VectorField x{Eigen::MatrixXd::Ones(32, 2), a.id()};
  CHECK_THROWS_AS(norm_l2ds(x, b, DerivMode::Fd4), ShapeMismatch);
  CHECK_NOTHROW(norm_l2ds(x, a, DerivMode::Fd4));
}

TEST_CASE("planar curves embedded in R^3 behave identically") {
  const DiscreteCurve c2 = make_circle(1.0, 64);
  const DiscreteCurve c3 = make_circle(1.0, 64, 3);
  CHECK(curve_length(c3, DerivMode::Spectral) ==
        doctest::Approx(curve_length(c2, DerivMode::Spectral)).epsilon(1e-14));
  const NormalField k3 = curvature(c3, DerivMode::Spectral);
  for (int i = 0; i < 64; ++i) CHECK(std::abs(k3.values()(i, 2)) <= 1e-12);
}
