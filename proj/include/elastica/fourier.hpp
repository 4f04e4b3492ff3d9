#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace elastica::fourier {

/// In-place DFT of a (periodic grid) with the convention
/// a_k = sum_j a_j exp(-2*pi*i*j*k/N); the inverse includes the 1/N factor.
/// Uses radix-2 FFT when N is a power of two, a naive O(N^2) transform otherwise.
void dft(std::vector<std::complex<double>>& a, bool inverse);

Eigen::VectorXcd forward(const Eigen::VectorXd& samples);

/// Spectral first derivative of uniformly sampled periodic data on [0, 2*pi).
/// The Nyquist mode (present for even N) is dropped, keeping the operator real
/// and antisymmetric.
Eigen::VectorXd spectral_derivative(const Eigen::VectorXd& samples);

/// Trigonometric interpolant of real samples at theta_j = 2*pi*j/N.
/// Supports evaluation, differentiation and the antiderivative anywhere.
class TrigSeries {
 public:
  explicit TrigSeries(const Eigen::VectorXd& samples);

  double eval(double theta) const;
  double deriv(double theta) const;
  double deriv2(double theta) const;
  /// Integral from 0 to theta of the interpolant (not periodic: carries the
  /// mean * theta ramp).
  double antiderivative(double theta) const;

  double mean() const { return mean_; }

 private:
  int n_ = 0;                             // sample count
  int half_ = 0;                          // n/2 for even n, (n-1)/2 for odd
  bool has_nyquist_ = false;
  double mean_ = 0.0;                     // c_0 / n
  double nyquist_ = 0.0;                  // real cosine amplitude at k = n/2
  std::vector<std::complex<double>> pos_; // 2*c_k/n for k = 1..half-1 (or half)
};

}  // namespace elastica::fourier
