#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "nfsent/errors.hpp"
#include "nfsent/oracles.hpp"

namespace nfsent::oracles {
namespace {

constexpr double kGamma = 1.0 / 141.1;
constexpr double kDelta = 30.0 * kGamma;
constexpr double kPi = std::numbers::pi;
const double kA = std::sqrt(2.0 / 3.0);

// Brute-force route: RK4 on the two coherences after an impulsive kick with the field feedback
// dropped, then one pass through the slab, omega(L) = i * 6 Gamma xi * a * (f31 + f42).
Complex single_pass_rk4(double xi, double t, double h = 1e-3) {
  const Complex l31{-kGamma / 2.0, -kDelta};
  const Complex l42{-kGamma / 2.0, kDelta};
  Complex f31{0.0, kA / 4.0}, f42{0.0, kA / 4.0};
  const auto n = static_cast<long>(std::llround(t / h));
  for (long i = 0; i < n; ++i) {
    auto rk = [&](Complex y, Complex l) {
      const Complex k1 = l * y;
      const Complex k2 = l * (y + 0.5 * h * k1);
      const Complex k3 = l * (y + 0.5 * h * k2);
      const Complex k4 = l * (y + h * k3);
      return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    f31 = rk(f31, l31);
    f42 = rk(f42, l42);
  }
  return Complex{0.0, 6.0 * kGamma * xi * kA} * (f31 + f42);
}

// Convolution route: a narrow gaussian input of unit area drives the coherences through the
// Green's function of the Bloch equations; Simpson quadrature over the pulse.
Complex single_pass_convolution(double xi, double t, double t0, double sigma) {
  const Complex l31{-kGamma / 2.0, -kDelta};
  const Complex l42{-kGamma / 2.0, kDelta};
  const double lo = t0 - 8.0 * sigma, hi = std::min(t, t0 + 8.0 * sigma);
  const int n = 2000;
  const double h = (hi - lo) / n;
  Complex f31{}, f42{};
  for (int i = 0; i <= n; ++i) {
    const double s = lo + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double x = (s - t0) / sigma;
    const double input = std::exp(-0.5 * x * x) / (sigma * std::sqrt(2.0 * kPi));
    const Complex drive = Complex{0.0, kA / 4.0} * input;
    f31 += w * std::exp(l31 * (t - s)) * drive;
    f42 += w * std::exp(l42 * (t - s)) * drive;
  }
  f31 *= h / 3.0;
  f42 *= h / 3.0;
  return Complex{0.0, 6.0 * kGamma * xi * kA} * (f31 + f42);
}

TEST(FirstOrderAmplitude, ZeroThickness) {
  for (double t : {0.0, 1.0, 50.0}) EXPECT_EQ(first_order_amplitude(0.0, kGamma, kDelta, t), Complex{});
}

TEST(FirstOrderAmplitude, BeatNode) {
  const double t = kPi / (2.0 * kDelta);
  EXPECT_NEAR(std::abs(first_order_amplitude(1.0, kGamma, kDelta, t)), 0.0, 1e-18);
}

TEST(FirstOrderAmplitude, InitialValue) {
  EXPECT_DOUBLE_EQ(first_order_amplitude(0.01, kGamma, kDelta, 0.0).real(), -2.0 * 0.01 * kGamma);
  EXPECT_EQ(first_order_amplitude(1.0, kGamma, kDelta, -1.0), Complex{});
}

TEST(FirstOrderAmplitude, MatchesRk4Integration) {
  for (double t : {0.1, 3.0, 7.0, 18.5, 60.0, 149.0}) {
    const Complex ref = single_pass_rk4(0.01, t);
    const Complex got = first_order_amplitude(0.01, kGamma, kDelta, t);
    EXPECT_NEAR(got.real(), ref.real(), 1e-10 * 2.0 * 0.01 * kGamma) << t;
    EXPECT_NEAR(got.imag(), ref.imag(), 1e-10 * 2.0 * 0.01 * kGamma) << t;
  }
}

TEST(FirstOrderAmplitude, MatchesConvolutionQuadrature) {
  const double t0 = 1.0, sigma = 0.01;
  for (double dt : {0.5, 4.0, 20.0, 90.0}) {
    const Complex ref = single_pass_convolution(0.01, t0 + dt, t0, sigma);
    const Complex got = first_order_amplitude(0.01, kGamma, kDelta, dt);
    EXPECT_NEAR(std::abs(got - ref), 0.0, 1e-4 * 2.0 * 0.01 * kGamma) << dt;
  }
}

TEST(FirstOrderAmplitude, SignChangesOnlyAtOddHalfPiNodes) {
  std::vector<double> crossings;
  double prev = first_order_amplitude(1.0, kGamma, kDelta, 0.0).real();
  for (double t = 0.001; t < 150.0; t += 0.001) {
    const double cur = first_order_amplitude(1.0, kGamma, kDelta, t).real();
    if ((cur < 0.0) != (prev < 0.0)) crossings.push_back(t);
    prev = cur;
  }
  ASSERT_FALSE(crossings.empty());
  for (std::size_t n = 0; n < crossings.size(); ++n) {
    EXPECT_NEAR(kDelta * crossings[n], (2.0 * n + 1.0) * kPi / 2.0, kDelta * 0.001);
  }
}

TEST(EnvelopeAttenuation, Values) {
  EXPECT_NEAR(envelope_attenuation(1.0, kGamma, kDelta), 0.9005768692821484, 1e-12);
  EXPECT_DOUBLE_EQ(envelope_attenuation(0.0, kGamma, kDelta), 1.0);
  EXPECT_NEAR(predicted_balance(0.99, 1.0, kGamma, kDelta), 1.0992953891755302, 1e-12);
  EXPECT_THROW(envelope_attenuation(1.0, kGamma, 0.0), InvalidInput);
}

TEST(EnvelopeAttenuation, Monotone) {
  double prev = 2.0;
  for (double xi = 0.0; xi <= 5.0; xi += 0.25) {
    const double v = envelope_attenuation(xi, kGamma, kDelta);
    EXPECT_LT(v, prev);
    prev = v;
  }
  prev = 0.0;
  for (double d = 0.01; d <= 2.0; d += 0.05) {
    const double v = envelope_attenuation(1.0, kGamma, d);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(RelativeL2, Basics) {
  std::vector<double> t;
  std::vector<Complex> ref, scaled;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(i * 0.1);
    ref.push_back({std::sin(i * 0.1) + 2.0, 0.5});
    scaled.push_back(1.01 * ref.back());
  }
  EXPECT_DOUBLE_EQ(relative_l2(t, ref, t, ref, 0.0, 10.0), 0.0);
  EXPECT_NEAR(relative_l2(t, scaled, t, ref, 0.0, 10.0), 0.01, 1e-12);
  EXPECT_NEAR(relative_l2(t, scaled, t, ref, 2.0, 3.0), 0.01, 1e-12);
}

TEST(RelativeL2, InterpolatesReference) {
  std::vector<double> t_ref{0.0, 1.0, 2.0};
  std::vector<Complex> ref{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  std::vector<double> t{0.5, 1.5};
  std::vector<Complex> tr{{0.5, 0.0}, {1.5, 0.0}};
  EXPECT_NEAR(relative_l2(t, tr, t_ref, ref, 0.0, 2.0), 0.0, 1e-15);
}

TEST(RelativeL2, Errors) {
  std::vector<double> t{0.0, 1.0};
  std::vector<Complex> zero{{}, {}}, one{{1.0, 0.0}, {1.0, 0.0}};
  EXPECT_THROW(relative_l2(t, one, t, zero, 0.0, 1.0), InvalidInput);
  EXPECT_THROW(relative_l2(t, one, t, one, 5.0, 6.0), InvalidInput);
}

TEST(FirstOrderCurve, CarriesProvenance) {
  std::vector<double> t{0.0, 1.0};
  const auto c = first_order_curve(0.01, kGamma, kDelta, t, 2.0);
  EXPECT_EQ(c.amplitude.size(), 2u);
  EXPECT_DOUBLE_EQ(c.amplitude[0].real(), -4.0 * 0.01 * kGamma);
  EXPECT_FALSE(c.provenance.empty());
}

}  // namespace
}  // namespace nfsent::oracles
