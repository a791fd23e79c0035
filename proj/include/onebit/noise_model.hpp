#ifndef ONEBIT_NOISE_MODEL_HPP
#define ONEBIT_NOISE_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "onebit/errors.hpp"
#include "onebit/random.hpp"

namespace onebit {

/**
 * Zero-mean Gaussian observation noise for an N-sensor array.
 *
 * Holds the covariance and its lower Cholesky factor. Immutable after
 * construction; sampling takes the random stream by reference and never
 * touches the model, so one instance can be shared across threads.
 */
class NoiseModel {
 public:
  /// sigma_v^2 * I.
  static NoiseModel white(Eigen::Index n, double sigma_v) {
    if (n < 1) throw std::invalid_argument("white noise: n must be >= 1");
    if (!(sigma_v > 0.0)) throw std::invalid_argument("white noise: sigma_v must be > 0");
    return NoiseModel(Eigen::MatrixXd::Identity(n, n) * (sigma_v * sigma_v));
  }

  /// Exponentially correlated noise, cov_ij = (p_tot / n) * rho^|i-j|.
  /// Trace is p_tot; positive definite for rho in [0, 1).
  static NoiseModel colored(Eigen::Index n, double p_tot, double rho) {
    if (n < 1) throw std::invalid_argument("colored noise: n must be >= 1");
    if (!(p_tot > 0.0)) throw std::invalid_argument("colored noise: p_tot must be > 0");
    if (!(rho >= 0.0 && rho < 1.0))
      throw std::invalid_argument("colored noise: rho must lie in [0, 1)");
    const double scale = p_tot / static_cast<double>(n);
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        cov(i, j) = scale * std::pow(rho, static_cast<double>(std::abs(i - j)));
    return NoiseModel(std::move(cov));
  }

  /// Arbitrary covariance. Rejects (does not repair) asymmetric input.
  static NoiseModel from_covariance(Eigen::MatrixXd cov) { return NoiseModel(std::move(cov)); }

  Eigen::Index dim() const noexcept { return cov_.rows(); }
  const Eigen::MatrixXd& covariance() const noexcept { return cov_; }
  /// Lower-triangular L with L * L^T = covariance().
  Eigen::MatrixXd chol() const { return llt_.matrixL(); }
  const Eigen::LLT<Eigen::MatrixXd>& factorization() const noexcept { return llt_; }
  double trace() const noexcept { return cov_.trace(); }

  /// One draw v = L * g with g ~ N(0, I).
  template <class Urbg>
  Eigen::VectorXd sample(Urbg& rng) const {
    const Eigen::VectorXd g = standard_normal(rng, dim());
    return llt_.matrixL() * g;
  }

 private:
  explicit NoiseModel(Eigen::MatrixXd cov) : cov_(std::move(cov)) {
    if (cov_.rows() < 1 || cov_.rows() != cov_.cols())
      throw std::invalid_argument("covariance must be a non-empty square matrix");
    if (!cov_.allFinite()) throw std::invalid_argument("covariance has non-finite entries");
    const double scale = cov_.cwiseAbs().maxCoeff();
    const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) throw std::invalid_argument("covariance is not symmetric");
    if (!(cov_.trace() > 0.0)) throw std::invalid_argument("covariance trace must be > 0");
    llt_.compute(cov_);
    if (llt_.info() != Eigen::Success)
      throw SingularCovarianceError("covariance is not positive definite");
    const Eigen::VectorXd diag = llt_.matrixLLT().diagonal();
    if (!(diag.minCoeff() > 0.0))
      throw SingularCovarianceError("covariance is not positive definite");
  }

  Eigen::MatrixXd cov_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

}  // namespace onebit

#endif  // ONEBIT_NOISE_MODEL_HPP
