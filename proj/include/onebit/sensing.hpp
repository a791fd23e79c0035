#ifndef ONEBIT_SENSING_HPP
#define ONEBIT_SENSING_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "onebit/noise_model.hpp"

namespace onebit {

/// Ground-truth parameter trajectory, a pure function of the time index.
struct SignalGenerator {
  enum class Kind { constant, sinusoid };

  Kind kind = Kind::constant;
  double value = 0.0;         // constant
  double amplitude = 0.0;     // sinusoid
  double frequency_hz = 0.0;  // sinusoid
  double dt = 1e-3;           // sample period in seconds

  static SignalGenerator constant(double c) {
    SignalGenerator g;
    g.kind = Kind::constant;
    g.value = c;
    return g;
  }

  static SignalGenerator sinusoid(double amplitude, double frequency_hz, double dt = 1e-3) {
    SignalGenerator g;
    g.kind = Kind::sinusoid;
    g.amplitude = amplitude;
    g.frequency_hz = frequency_hz;
    g.dt = dt;
    g.validate();
    return g;
  }

  void validate() const {
    if (kind == Kind::sinusoid) {
      if (!(dt > 0.0)) throw std::invalid_argument("sinusoid: dt must be > 0");
      if (!(frequency_hz >= 0.0)) throw std::invalid_argument("sinusoid: frequency must be >= 0");
    }
  }

  double theta_at(std::size_t k) const {
    if (kind == Kind::constant) return value;
    return amplitude *
           std::sin(2.0 * std::numbers::pi * frequency_hz * static_cast<double>(k) * dt);
  }
};

/// One round of 1-bit messages at the fusion center.
struct QuantizedFrame {
  std::size_t k = 0;
  Eigen::VectorXi r;    // entries are -1 or +1
  Eigen::VectorXd tau;  // thresholds the bits were taken against

  Eigen::Index size() const noexcept { return tau.size(); }

  void validate() const {
    if (r.size() != tau.size()) throw std::invalid_argument("frame: r and tau lengths differ");
    for (Eigen::Index i = 0; i < r.size(); ++i)
      if (r[i] != 1 && r[i] != -1) throw std::invalid_argument("frame: bits must be -1 or +1");
  }
};

/// z = theta * 1 + v with v drawn from `noise`.
template <class Urbg>
Eigen::VectorXd observe(double theta, const NoiseModel& noise, Urbg& rng) {
  return noise.sample(rng).array() + theta;
}

/// r_i = sgn(z_i - tau_i) with sgn(0) = +1.
inline QuantizedFrame quantize(const Eigen::Ref<const Eigen::VectorXd>& z,
                               const Eigen::Ref<const Eigen::VectorXd>& tau, std::size_t k = 0) {
  if (z.size() != tau.size()) throw std::invalid_argument("quantize: z and tau lengths differ");
  QuantizedFrame frame;
  frame.k = k;
  frame.tau = tau;
  frame.r.resize(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) frame.r[i] = z[i] >= tau[i] ? 1 : -1;
  return frame;
}

}  // namespace onebit

#endif  // ONEBIT_SENSING_HPP
