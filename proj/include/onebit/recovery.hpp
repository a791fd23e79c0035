#ifndef ONEBIT_RECOVERY_HPP
#define ONEBIT_RECOVERY_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "onebit/noise_model.hpp"
#include "onebit/sensing.hpp"

namespace onebit {

/**
 * Quantities derived once from the noise covariance and reused every round.
 *
 * With w = cov^-1 * 1 / (1^T cov^-1 1), the fused estimate is w^T z and the
 * reduced objective is z^T M z with M = (I - 1 w^T)^T cov^-1 (I - 1 w^T).
 * M is PSD and M * 1 = 0, so the objective is blind along the all-ones
 * direction. cov^-1 is only ever applied through the Cholesky factor.
 */
struct RecoveryCache {
  Eigen::VectorXd eta;
  Eigen::MatrixXd m_matrix;
  double lipschitz = 1.0;  // >= lambda_max(M)
  Eigen::LLT<Eigen::MatrixXd> sigma_chol;
  double fisher_denominator = 0.0;  // 1^T cov^-1 1
  Eigen::VectorXd whitened_ones;    // L^-1 * 1

  Eigen::Index dim() const noexcept { return eta.size(); }
  /// Variance of the fused estimate given unquantized data.
  double estimator_variance() const noexcept { return 1.0 / fisher_denominator; }
};

inline RecoveryCache build_cache(const NoiseModel& noise) {
  const Eigen::Index n = noise.dim();
  RecoveryCache cache;
  cache.sigma_chol = noise.factorization();
  if (cache.sigma_chol.info() != Eigen::Success)
    throw SingularCovarianceError("build_cache: covariance factorization failed");

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const auto lower = cache.sigma_chol.matrixL();
  cache.whitened_ones = lower.solve(ones);
  cache.fisher_denominator = cache.whitened_ones.squaredNorm();
  cache.eta = cache.sigma_chol.solve(ones) / cache.fisher_denominator;

  // M = (L^-1 P)^T (L^-1 P) with P = I - 1 eta^T; PSD in floating point too.
  const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - ones * cache.eta.transpose();
  const Eigen::MatrixXd white_proj = lower.solve(proj);
  cache.m_matrix = white_proj.transpose() * white_proj;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cache.m_matrix,
                                                           Eigen::EigenvaluesOnly);
  const double lambda_max = eig.eigenvalues().maxCoeff();
  cache.lipschitz = lambda_max > 0.0 ? lambda_max * (1.0 + 1e-6) : 1.0;
  return cache;
}

/// Covariance-weighted mean [1^T cov^-1 1]^-1 1^T cov^-1 z, via triangular solves.
inline double estimate_theta(const RecoveryCache& cache, const Eigen::Ref<const Eigen::VectorXd>& z) {
  if (z.size() != cache.dim()) throw std::invalid_argument("estimate_theta: length mismatch");
  const Eigen::VectorXd white_z = cache.sigma_chol.matrixL().solve(z);
  return cache.whitened_ones.dot(white_z) / cache.fisher_denominator;
}

/// z^T M z.
inline double reduced_objective(const RecoveryCache& cache,
                                const Eigen::Ref<const Eigen::VectorXd>& z) {
  if (z.size() != cache.dim()) throw std::invalid_argument("reduced_objective: length mismatch");
  return z.dot(cache.m_matrix * z);
}

enum class SolverMethod {
  accelerated,  // projected gradient with Nesterov momentum and restart
  plain,        // fixed-step projected gradient
};

struct SolverOptions {
  SolverMethod method = SolverMethod::accelerated;
  int max_iterations = 20000;
  double relative_tolerance = 1e-12;  // on |f(z^t) - f(z^{t+1})| / (1 + f(z^0))
};

struct RecoveryResult {
  Eigen::VectorXd z_hat;
  double theta_hat = 0.0;
  double objective = 0.0;
  int iterations = 0;
  bool fast_path = false;
  bool consistent = false;
  bool hit_iteration_cap = false;
};

namespace detail {

/// Bounds of the constant vectors c*1 consistent with the bits:
/// lo = max{tau_i : r_i = +1}, hi = min{tau_i : r_i = -1}.
struct ConsistentInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool feasible() const noexcept { return lo <= hi; }
};

inline ConsistentInterval consistent_interval(const QuantizedFrame& frame) {
  ConsistentInterval iv;
  for (Eigen::Index i = 0; i < frame.size(); ++i) {
    if (frame.r[i] > 0)
      iv.lo = std::max(iv.lo, frame.tau[i]);
    else
      iv.hi = std::min(iv.hi, frame.tau[i]);
  }
  return iv;
}

class HalfLineProjector {
 public:
  explicit HalfLineProjector(const QuantizedFrame& frame)
      : tau_(frame.tau), upper_(frame.r.array() > 0) {}

  void operator()(Eigen::VectorXd& z) const {
    z = upper_.select(z.cwiseMax(tau_), z.cwiseMin(tau_));
  }

 private:
  const Eigen::VectorXd& tau_;
  Eigen::Array<bool, Eigen::Dynamic, 1> upper_;
};

inline bool sign_consistent(const QuantizedFrame& frame, const Eigen::VectorXd& z) {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double gap = z[i] - frame.tau[i];
    if (std::abs(gap) <= 1e-9) continue;
    if ((gap >= 0.0 ? 1 : -1) != frame.r[i]) return false;
  }
  return true;
}

}  // namespace detail

/// Lo and Hi of the constant-vector feasibility test.
inline detail::ConsistentInterval consistent_interval(const QuantizedFrame& frame) {
  return detail::consistent_interval(frame);
}

/**
 * Recover the unquantized vector from one frame:
 *
 *   minimize z^T M z   subject to   r_i (z_i - tau_i) >= 0.
 *
 * When some constant vector c*1 satisfies the constraints the optimum is 0
 * and is attained on a whole interval of c; the midpoint (or the finite end
 * of a one-sided interval) is returned without iterating. Otherwise the
 * problem is solved by projected gradient from z = tau with step 1/lipschitz.
 * Reaching the iteration cap is reported through hit_iteration_cap.
 */
inline RecoveryResult solve_cqp(const RecoveryCache& cache, const QuantizedFrame& frame,
                                const SolverOptions& options = {}) {
  const Eigen::Index n = frame.size();
  if (n == 0) throw std::invalid_argument("solve_cqp: empty frame");
  if (n != cache.dim()) throw std::invalid_argument("solve_cqp: frame length != cache dimension");
  frame.validate();

  RecoveryResult result;
  const auto interval = detail::consistent_interval(frame);
  if (interval.feasible()) {
    double c = 0.0;
    if (std::isfinite(interval.lo) && std::isfinite(interval.hi))
      c = 0.5 * (interval.lo + interval.hi);
    else
      c = std::isfinite(interval.lo) ? interval.lo : interval.hi;
    result.z_hat = Eigen::VectorXd::Constant(n, c);
    result.objective = 0.0;
    result.fast_path = true;
  } else {
    const detail::HalfLineProjector project(frame);
    const Eigen::MatrixXd& m = cache.m_matrix;
    const double step = 1.0 / cache.lipschitz;

    Eigen::VectorXd z = frame.tau;
    double f = z.dot(m * z);
    const double stop = options.relative_tolerance * (1.0 + f);

    Eigen::VectorXd y = z;
    Eigen::VectorXd next(n);
    double t = 1.0;
    bool momentum = false;
    bool converged = false;
    int it = 0;
    while (it < options.max_iterations) {
      ++it;
      next = y - step * (m * y);
      project(next);
      const double f_next = next.dot(m * next);

      if (options.method == SolverMethod::accelerated && momentum && f_next > f) {
        // Momentum overshot; restart from the last accepted iterate.
        y = z;
        t = 1.0;
        momentum = false;
        continue;
      }

      const double decrease = std::abs(f - f_next);
      if (options.method == SolverMethod::accelerated) {
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        y = next + ((t - 1.0) / t_next) * (next - z);
        momentum = t > 1.0;
        t = t_next;
      } else {
        y = next;
      }
      z.swap(next);
      f = f_next;
      if (decrease <= stop) {
        converged = true;
        break;
      }
    }
    result.z_hat = std::move(z);
    result.objective = std::max(f, 0.0);
    result.iterations = it;
    result.hit_iteration_cap = !converged;
  }

  result.theta_hat = estimate_theta(cache, result.z_hat);
  result.consistent = detail::sign_consistent(frame, result.z_hat);
  return result;
}

}  // namespace onebit

#endif  // ONEBIT_RECOVERY_HPP
