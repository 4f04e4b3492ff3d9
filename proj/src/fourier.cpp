#include "elastica/fourier.hpp"

#include <cmath>
#include <numbers>

namespace elastica::fourier {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

void dft_naive(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  const double sgn = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = sgn * kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    const std::complex<double> w(std::cos(ang), std::sin(ang));
    std::complex<double> acc(0.0, 0.0);
    // Horner over j keeps this O(n) per output without trig calls in the loop.
    for (std::size_t j = n; j-- > 0;) acc = acc * w + a[j];
    out[k] = acc;
  }
  a.swap(out);
}

}  // namespace

void dft(std::vector<std::complex<double>>& a, bool inverse) {
  if (a.empty()) return;
  if (is_pow2(a.size())) {
    fft_pow2(a, inverse);
  } else {
    dft_naive(a, inverse);
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(a.size());
    for (auto& x : a) x *= inv_n;
  }
}

Eigen::VectorXcd forward(const Eigen::VectorXd& samples) {
  std::vector<std::complex<double>> a(samples.size());
  for (Eigen::Index i = 0; i < samples.size(); ++i) a[i] = samples[i];
  dft(a, false);
  Eigen::VectorXcd out(samples.size());
  for (Eigen::Index i = 0; i < samples.size(); ++i) out[i] = a[i];
  return out;
}

Eigen::VectorXd spectral_derivative(const Eigen::VectorXd& samples) {
  const int n = static_cast<int>(samples.size());
  std::vector<std::complex<double>> a(n);
  for (int i = 0; i < n; ++i) a[i] = samples[i];
  dft(a, false);
  for (int k = 0; k < n; ++k) {
    int freq = (k <= n / 2) ? k : k - n;
    if (n % 2 == 0 && k == n / 2) freq = 0;  // drop the Nyquist mode
    a[k] *= std::complex<double>(0.0, static_cast<double>(freq));
  }
  dft(a, true);
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out[i] = a[i].real();
  return out;
}

TrigSeries::TrigSeries(const Eigen::VectorXd& samples) {
  n_ = static_cast<int>(samples.size());
  std::vector<std::complex<double>> a(n_);
  for (int i = 0; i < n_; ++i) a[i] = samples[i];
  dft(a, false);
  has_nyquist_ = (n_ % 2 == 0);
  half_ = n_ / 2;
  mean_ = a[0].real() / n_;
  const int top = has_nyquist_ ? half_ - 1 : half_;
  pos_.resize(top);
  for (int k = 1; k <= top; ++k) pos_[k - 1] = 2.0 * a[k] / static_cast<double>(n_);
  if (has_nyquist_) nyquist_ = a[half_].real() / n_;
}

double TrigSeries::eval(double theta) const {
  const std::complex<double> z(std::cos(theta), std::sin(theta));
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = pos_.size(); k-- > 0;) acc = (acc + pos_[k]) * z;
  double out = mean_ + acc.real();
  if (has_nyquist_) out += nyquist_ * std::cos(half_ * theta);
  return out;
}

double TrigSeries::deriv(double theta) const {
  const std::complex<double> z(std::cos(theta), std::sin(theta));
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = pos_.size(); k-- > 0;) {
    const std::complex<double> ck =
        pos_[k] * std::complex<double>(0.0, static_cast<double>(k + 1));
    acc = acc * z + ck;
  }
  acc *= z;
  double out = acc.real();
  if (has_nyquist_) out -= nyquist_ * half_ * std::sin(half_ * theta);
  return out;
}

double TrigSeries::deriv2(double theta) const {
  const std::complex<double> z(std::cos(theta), std::sin(theta));
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = pos_.size(); k-- > 0;) {
    const double kk = static_cast<double>(k + 1);
    acc = acc * z + (-kk * kk) * pos_[k];
  }
  acc *= z;
  double out = acc.real();
  if (has_nyquist_)
    out -= nyquist_ * static_cast<double>(half_) * half_ * std::cos(half_ * theta);
  return out;
}

double TrigSeries::antiderivative(double theta) const {
  const std::complex<double> z(std::cos(theta), std::sin(theta));
  std::complex<double> zk(1.0, 0.0);
  double out = mean_ * theta;
  for (std::size_t k = 0; k < pos_.size(); ++k) {
    zk *= z;
    const std::complex<double> ik(0.0, static_cast<double>(k + 1));
    out += ((zk - 1.0) * pos_[k] / ik).real();
  }
  if (has_nyquist_) out += nyquist_ * std::sin(half_ * theta) / half_;
  return out;
}

}  // namespace elastica::fourier
