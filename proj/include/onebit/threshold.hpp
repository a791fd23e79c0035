#ifndef ONEBIT_THRESHOLD_HPP
#define ONEBIT_THRESHOLD_HPP

#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "onebit/random.hpp"

namespace onebit {

/// Stochastic threshold design: tau^{k+1} = theta_hat^k * 1 + w, w ~ N(0, sigma_tau^2 I).
struct ThresholdPolicy {
  double sigma_tau = 0.0;
  /// Initial thresholds: a scalar broadcast to every sensor, or one value per sensor.
  std::variant<double, std::vector<double>> init = 0.0;
};

inline Eigen::VectorXd initial_thresholds(const ThresholdPolicy& policy, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("initial_thresholds: n must be >= 1");
  if (const auto* scalar = std::get_if<double>(&policy.init))
    return Eigen::VectorXd::Constant(n, *scalar);
  const auto& values = std::get<std::vector<double>>(policy.init);
  if (static_cast<Eigen::Index>(values.size()) != n)
    throw std::invalid_argument("initial_thresholds: init vector length does not match n");
  return Eigen::Map<const Eigen::VectorXd>(values.data(), n);
}

/// With sigma_tau = 0 no draws are taken and the result is exactly theta_hat * 1.
template <class Urbg>
Eigen::VectorXd next_thresholds(const ThresholdPolicy& policy, double theta_hat, Eigen::Index n,
                                Urbg& rng) {
  if (n < 1) throw std::invalid_argument("next_thresholds: n must be >= 1");
  if (!(policy.sigma_tau >= 0.0)) throw std::invalid_argument("next_thresholds: sigma_tau < 0");
  if (policy.sigma_tau == 0.0) return Eigen::VectorXd::Constant(n, theta_hat);
  return (policy.sigma_tau * standard_normal(rng, n)).array() + theta_hat;
}

}  // namespace onebit

#endif  // ONEBIT_THRESHOLD_HPP
