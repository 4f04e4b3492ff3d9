#include "elastica/seeds.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace elastica {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXd planar_grid(int samples, int dim) {
  if (dim < 2) throw InvalidSpec("seed: ambient dimension must be >= 2");
  return Eigen::MatrixXd::Zero(samples, dim);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidSpec("seed: bad number '" + s + "'");
  }
  if (pos != s.size()) throw InvalidSpec("seed: bad number '" + s + "'");
  return v;
}

}  // namespace

DiscreteCurve make_circle(double r, int samples, int dim) {
  if (r <= 0.0) throw InvalidSpec("circle: radius must be positive");
  Eigen::MatrixXd p = planar_grid(samples, dim);
  for (int i = 0; i < samples; ++i) {
    const double t = kTwoPi * i / samples;
    p(i, 0) = r * std::cos(t);
    p(i, 1) = r * std::sin(t);
  }
  return DiscreteCurve(std::move(p));
}

DiscreteCurve make_ellipse(double a, double b, int samples, int dim) {
  if (a <= 0.0 || b <= 0.0) throw InvalidSpec("ellipse: semi-axes must be positive");
  Eigen::MatrixXd p = planar_grid(samples, dim);
  for (int i = 0; i < samples; ++i) {
    const double t = kTwoPi * i / samples;
    p(i, 0) = a * std::cos(t);
    p(i, 1) = b * std::sin(t);
  }
  return DiscreteCurve(std::move(p));
}

DiscreteCurve make_w_covered_circle(double r, int winding, int samples, int dim) {
  if (r <= 0.0) throw InvalidSpec("w_circle: radius must be positive");
  if (winding < 1) throw InvalidSpec("w_circle: winding must be >= 1");
  Eigen::MatrixXd p = planar_grid(samples, dim);
  for (int i = 0; i < samples; ++i) {
    const double t = kTwoPi * i / samples;
    p(i, 0) = r * std::cos(winding * t);
    p(i, 1) = r * std::sin(winding * t);
  }
  return DiscreteCurve(std::move(p));
}

DiscreteCurve make_figure_eight(double scale, int samples, int dim) {
  if (scale <= 0.0) throw InvalidSpec("figure_eight: scale must be positive");
  Eigen::MatrixXd p = planar_grid(samples, dim);
  for (int i = 0; i < samples; ++i) {
    const double t = kTwoPi * i / samples;
    p(i, 0) = scale * std::sin(t);
    p(i, 1) = scale * std::sin(t) * std::cos(t);
  }
  return DiscreteCurve(std::move(p));
}

DiscreteCurve make_fourier_perturbed_circle(double r, const std::vector<int>& modes,
                                            double amplitude, std::uint64_t rng_seed,
                                            int samples, int dim) {
  if (r <= 0.0) throw InvalidSpec("fourier: radius must be positive");
  if (amplitude < 0.0) throw InvalidSpec("fourier: amplitude must be >= 0");
  std::mt19937_64 rng(rng_seed);
  // Portable uniform in [-1, 1): avoids std::uniform_real_distribution, whose
  // output stream is implementation defined.
  auto uniform = [&rng]() {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  };
  std::vector<double> ca(modes.size()), cb(modes.size());
  for (std::size_t m = 0; m < modes.size(); ++m) {
    if (modes[m] < 1) throw InvalidSpec("fourier: modes must be >= 1");
    ca[m] = amplitude * uniform();
    cb[m] = amplitude * uniform();
  }
  Eigen::MatrixXd p = planar_grid(samples, dim);
  for (int i = 0; i < samples; ++i) {
    const double t = kTwoPi * i / samples;
    double rho = 1.0;
    for (std::size_t m = 0; m < modes.size(); ++m)
      rho += ca[m] * std::cos(modes[m] * t) + cb[m] * std::sin(modes[m] * t);
    p(i, 0) = r * rho * std::cos(t);
    p(i, 1) = r * rho * std::sin(t);
  }
  return DiscreteCurve(std::move(p));
}

DiscreteCurve seed_curve(const std::string& spec, int samples, int dim) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw InvalidSpec("seed: expected KIND:PARAMS, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::vector<std::string> args = split(spec.substr(colon + 1), ',');

  if (kind == "circle") {
    if (args.size() != 1) throw InvalidSpec("seed: circle takes one parameter");
    return make_circle(to_double(args[0]), samples, dim);
  }
  if (kind == "ellipse") {
    if (args.size() != 2) throw InvalidSpec("seed: ellipse takes two parameters");
    return make_ellipse(to_double(args[0]), to_double(args[1]), samples, dim);
  }
  if (kind == "w_circle") {
    if (args.size() != 2) throw InvalidSpec("seed: w_circle takes two parameters");
    return make_w_covered_circle(to_double(args[0]),
                                 static_cast<int>(to_double(args[1])), samples, dim);
  }
  if (kind == "figure_eight") {
    if (args.size() != 1) throw InvalidSpec("seed: figure_eight takes one parameter");
    return make_figure_eight(to_double(args[0]), samples, dim);
  }
  if (kind == "fourier") {
    if (args.size() != 4)
      throw InvalidSpec("seed: fourier takes R,M1|M2|...,AMP,SEED");
    std::vector<int> modes;
    for (const std::string& m : split(args[1], '|'))
      modes.push_back(static_cast<int>(to_double(m)));
    return make_fourier_perturbed_circle(
        to_double(args[0]), modes, to_double(args[2]),
        static_cast<std::uint64_t>(to_double(args[3])), samples, dim);
  }
  throw InvalidSpec("seed: unknown kind '" + kind + "'");
}

}  // namespace elastica
