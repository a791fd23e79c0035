#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "onebit/random.hpp"
#include "onebit/sensing.hpp"

namespace onebit {
namespace {

TEST(Signal, Constant) {
  const auto g = SignalGenerator::constant(3.0);
  for (std::size_t k : {0UL, 1UL, 999UL}) EXPECT_EQ(g.theta_at(k), 3.0);
}

TEST(Signal, Sinusoid) {
  const auto g = SignalGenerator::sinusoid(10.0, 200.0, 1e-3);
  EXPECT_EQ(g.theta_at(0), 0.0);
  // 10 sin(0.4 pi), evaluated independently.
  EXPECT_NEAR(g.theta_at(1), 9.510565162951535, 1e-12);
  // Period of five samples.
  EXPECT_NEAR(g.theta_at(6), g.theta_at(1), 1e-12);
}

TEST(Signal, SinusoidValidation) {
  EXPECT_THROW(SignalGenerator::sinusoid(1.0, 50.0, 0.0), std::invalid_argument);
  EXPECT_THROW(SignalGenerator::sinusoid(1.0, -1.0, 1e-3), std::invalid_argument);
}

TEST(Observe, NoiselessLimit) {
  const auto noise = NoiseModel::white(4, 1e-12);
  Rng rng(1);
  const Eigen::VectorXd z = observe(5.0, noise, rng);
  EXPECT_TRUE(z.isApproxToConstant(5.0, 1e-9));
}

TEST(Observe, AddsExactlyTheNoiseDraw) {
  const auto noise = NoiseModel::white(3, 1.0);
  Rng a(99);
  Rng b(99);
  EXPECT_EQ(observe(0.0, noise, a), noise.sample(b));
}

TEST(Observe, MeanConverges) {
  const auto noise = NoiseModel::white(1, 1.0);
  Rng rng(5);
  constexpr int m = 1'000'000;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += observe(2.0, noise, rng)[0];
  EXPECT_NEAR(sum / m, 2.0, 3.0 / std::sqrt(double(m)));
}

TEST(Quantize, Examples) {
  Eigen::Vector2d z(1.0, -1.0);
  Eigen::Vector2d t(0.0, 0.0);
  auto f = quantize(z, t, 4);
  EXPECT_EQ(f.k, 4U);
  EXPECT_EQ(f.r, Eigen::Vector2i(1, -1));

  // sgn(0) := +1
  EXPECT_EQ(quantize(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1)).r[0], 1);

  Eigen::Vector3d z3 = Eigen::Vector3d::Constant(2.5);
  Eigen::Vector3d t3(1.0, 2.5, 3.0);
  EXPECT_EQ(quantize(z3, t3).r, Eigen::Vector3i(1, 1, -1));
}

TEST(Quantize, LengthMismatch) {
  EXPECT_THROW(quantize(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST(QuantizedFrame, Validate) {
  QuantizedFrame f{0, Eigen::Vector2i(1, 0), Eigen::Vector2d(0, 0)};
  EXPECT_THROW(f.validate(), std::invalid_argument);
  f.r = Eigen::Vector2i(1, -1);
  EXPECT_NO_THROW(f.validate());
  f.tau = Eigen::Vector3d::Zero();
  EXPECT_THROW(f.validate(), std::invalid_argument);
}

class QuantizeProperty : public ::testing::TestWithParam<int> {};

TEST_P(QuantizeProperty, GeometryAndEquivariance) {
  Rng rng(static_cast<std::uint64_t>(GetParam()));
  std::uniform_int_distribution<int> size(1, 20);
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int rep = 0; rep < 200; ++rep) {
    const Eigen::Index n = size(rng);
    const Eigen::VectorXd z = 3.0 * standard_normal(rng, n);
    const Eigen::VectorXd tau = 3.0 * standard_normal(rng, n);
    const auto f = quantize(z, tau);

    // Diag(r) (z - tau) >= 0
    EXPECT_GE((f.r.cast<double>().array() * (z - tau).array()).minCoeff(), 0.0);

    // Shift equivariance; skip near-ties where the shifted subtraction rounds.
    if ((z - tau).cwiseAbs().minCoeff() > 1e-9) {
      const double c = shift(rng);
      EXPECT_EQ(quantize(z.array() + c, tau.array() + c).r, f.r);
    }
    const double a = scale(rng);
    EXPECT_EQ(quantize(a * z, a * tau).r, f.r);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, QuantizeProperty, ::testing::Values(1, 2, 3));

}  // namespace
}  // namespace onebit
