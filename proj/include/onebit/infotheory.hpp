#ifndef ONEBIT_INFOTHEORY_HPP
#define ONEBIT_INFOTHEORY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace onebit {

/// Standard Gaussian tail, Q(x) = P(N(0,1) > x).
inline double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

/// P(r = +1 | theta) for r = sgn(theta + v - tau), v ~ N(0, sigma_v^2).
inline double p_theta(double theta, double tau, double sigma_v) {
  if (!(sigma_v > 0.0)) throw std::invalid_argument("p_theta: sigma_v must be > 0");
  return q_function((tau - theta) / sigma_v);
}

/// Entropy of a Bernoulli(p) variable in bits, with 0 log 0 = 0.
inline double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

/// Prior on the unknown parameter.
struct PriorSpec {
  enum class Kind { uniform, gaussian };

  Kind kind = Kind::uniform;
  double lower = -1.0;  // uniform
  double upper = 1.0;
  double mean = 0.0;  // gaussian
  double stddev = 1.0;

  static PriorSpec uniform(double a, double b) {
    PriorSpec p;
    p.kind = Kind::uniform;
    p.lower = a;
    p.upper = b;
    p.validate();
    return p;
  }

  static PriorSpec gaussian(double mean, double stddev) {
    PriorSpec p;
    p.kind = Kind::gaussian;
    p.mean = mean;
    p.stddev = stddev;
    p.validate();
    return p;
  }

  void validate() const {
    if (kind == Kind::uniform && !(lower < upper))
      throw std::invalid_argument("uniform prior: lower must be < upper");
    if (kind == Kind::gaussian && !(stddev > 0.0))
      throw std::invalid_argument("gaussian prior: stddev must be > 0");
  }

  /// Integration range; the gaussian is truncated at +-8 standard deviations.
  double support_lo() const { return kind == Kind::uniform ? lower : mean - 8.0 * stddev; }
  double support_hi() const { return kind == Kind::uniform ? upper : mean + 8.0 * stddev; }

  double density(double theta) const {
    if (kind == Kind::uniform)
      return (theta >= lower && theta <= upper) ? 1.0 / (upper - lower) : 0.0;
    const double u = (theta - mean) / stddev;
    return std::exp(-0.5 * u * u) / (stddev * std::sqrt(2.0 * std::numbers::pi));
  }
};

inline constexpr std::size_t kDefaultQuadratureNodes = 4001;

/**
 * I(theta; r) in bits for one 1-bit sample with threshold tau:
 *
 *   I = h(P_r(1)) - E_theta[h(p_theta)],  P_r(1) = E_theta[p_theta],
 *
 * both expectations by composite Simpson over the prior's support. `nodes`
 * must be odd and >= 3. The result is clamped to [0, 1].
 */
inline double mutual_information(const PriorSpec& prior, double tau, double sigma_v,
                                 std::size_t nodes = kDefaultQuadratureNodes) {
  if (!(sigma_v > 0.0)) throw std::invalid_argument("mutual_information: sigma_v must be > 0");
  if (nodes < 3) throw std::invalid_argument("mutual_information: need at least 3 nodes");
  if (nodes % 2 == 0) throw std::invalid_argument("mutual_information: node count must be odd");
  prior.validate();

  const double lo = prior.support_lo();
  const double hi = prior.support_hi();
  const double h = (hi - lo) / static_cast<double>(nodes - 1);
  double p_one = 0.0;
  double cond_entropy = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double weight = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double theta = lo + h * static_cast<double>(i);
    const double f = prior.density(theta);
    const double p = p_theta(theta, tau, sigma_v);
    p_one += weight * f * p;
    cond_entropy += weight * f * binary_entropy(p);
  }
  p_one *= h / 3.0;
  cond_entropy *= h / 3.0;
  const double mi = binary_entropy(std::clamp(p_one, 0.0, 1.0)) - cond_entropy;
  return std::clamp(mi, 0.0, 1.0);
}

struct MICurve {
  std::vector<double> sigma_values;
  std::vector<double> mi_bits;
};

/// Mutual information at each noise level of an ascending positive grid.
inline MICurve mi_curve(const PriorSpec& prior, double tau, const std::vector<double>& sigma_grid,
                        std::size_t nodes = kDefaultQuadratureNodes) {
  if (sigma_grid.empty()) throw std::invalid_argument("mi_curve: empty grid");
  for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
    if (!(sigma_grid[i] > 0.0)) throw std::invalid_argument("mi_curve: grid must be positive");
    if (i > 0 && !(sigma_grid[i] > sigma_grid[i - 1]))
      throw std::invalid_argument("mi_curve: grid must be ascending");
  }
  MICurve curve;
  curve.sigma_values = sigma_grid;
  curve.mi_bits.reserve(sigma_grid.size());
  for (double s : sigma_grid) curve.mi_bits.push_back(mutual_information(prior, tau, s, nodes));
  return curve;
}

}  // namespace onebit

#endif  // ONEBIT_INFOTHEORY_HPP
