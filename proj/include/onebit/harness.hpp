#ifndef ONEBIT_HARNESS_HPP
#define ONEBIT_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "onebit/noise_model.hpp"
#include "onebit/random.hpp"
#include "onebit/recovery.hpp"
#include "onebit/sensing.hpp"
#include "onebit/threshold.hpp"

namespace onebit {

/// Noise description that can be rebuilt for any sensor count.
struct NoiseSpec {
  enum class Kind { white, colored };

  Kind kind = Kind::white;
  double sigma_v = 1.0;  // white
  double p_tot = 1.0;    // colored: trace of the covariance
  double rho = 0.5;      // colored: neighbour correlation

  static NoiseSpec white(double sigma_v) {
    NoiseSpec s;
    s.kind = Kind::white;
    s.sigma_v = sigma_v;
    return s;
  }

  static NoiseSpec colored(double p_tot, double rho = 0.5) {
    NoiseSpec s;
    s.kind = Kind::colored;
    s.p_tot = p_tot;
    s.rho = rho;
    return s;
  }

  NoiseModel build(Eigen::Index n) const {
    return kind == Kind::white ? NoiseModel::white(n, sigma_v) : NoiseModel::colored(n, p_tot, rho);
  }

  /// Per-sensor noise standard deviation; the default dither level.
  double per_sensor_stddev(Eigen::Index n) const {
    return kind == Kind::white ? sigma_v : std::sqrt(p_tot / static_cast<double>(n));
  }
};

struct PolicySpec {
  std::optional<double> sigma_tau;  // unset: per-sensor noise stddev
  std::variant<double, std::vector<double>> init = 0.0;
};

struct SimConfig {
  Eigen::Index n_sensors = 1;
  NoiseSpec noise;
  SignalGenerator signal;
  PolicySpec policy;
  std::size_t horizon = 1;
  std::size_t burn_in = 10;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  SolverOptions solver;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (n_sensors < 1) throw std::invalid_argument("n_sensors must be >= 1");
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (burn_in >= horizon) throw std::invalid_argument("burn_in must be < horizon");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (policy.sigma_tau && !(*policy.sigma_tau >= 0.0))
      throw std::invalid_argument("sigma_tau must be >= 0");
    signal.validate();
  }

  ThresholdPolicy resolved_policy() const {
    ThresholdPolicy p;
    p.sigma_tau = policy.sigma_tau.value_or(noise.per_sensor_stddev(n_sensors));
    p.init = policy.init;
    return p;
  }
};

struct StepRecord {
  std::size_t k = 0;
  double theta = 0.0;
  double theta_hat = 0.0;
  double objective = 0.0;
  bool fast_path = false;
};

struct TrialResult {
  std::vector<StepRecord> steps;
  double nmse = 0.0;
  bool zero_norm = false;        // reference signal was identically zero after burn-in
  std::size_t capped_solves = 0;  // solves that hit the iteration cap
};

struct SimReport {
  std::vector<StepRecord> per_step;  // trial 0
  double nmse = 0.0;                 // mean over trials
  std::vector<double> nmse_per_trial;
  bool zero_norm = false;
  std::size_t capped_solves = 0;

  double median_nmse() const {
    std::vector<double> v = nmse_per_trial;
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  }
};

/// Noise model, recovery cache and threshold policy shared by every trial of a run.
struct PreparedModel {
  NoiseModel noise;
  RecoveryCache cache;
  ThresholdPolicy policy;

  explicit PreparedModel(const SimConfig& config)
      : noise(config.noise.build(config.n_sensors)),
        cache(build_cache(noise)),
        policy(config.resolved_policy()) {}
};

/// ||x - x_hat||^2 / ||x||^2 over k >= burn_in; the bare squared error when ||x|| = 0.
inline void score_trial(TrialResult& trial, std::size_t burn_in) {
  double err = 0.0;
  double ref = 0.0;
  for (const auto& s : trial.steps) {
    if (s.k < burn_in) continue;
    err += (s.theta - s.theta_hat) * (s.theta - s.theta_hat);
    ref += s.theta * s.theta;
  }
  trial.zero_norm = ref == 0.0;
  trial.nmse = trial.zero_norm ? err : err / ref;
}

/**
 * One pass of the adaptive recovery loop over the horizon. Per step:
 * observe and quantize against the current thresholds, solve the CQP,
 * fuse, then draw the next thresholds around the new estimate. A single
 * random stream seeded with `trial_seed` feeds noise then dither, in that
 * order, each step.
 */
inline TrialResult run_trial(const SimConfig& config, const PreparedModel& model,
                             std::uint64_t trial_seed) {
  const Eigen::Index n = config.n_sensors;
  Rng rng(trial_seed);
  TrialResult trial;
  trial.steps.reserve(config.horizon);

  Eigen::VectorXd tau = initial_thresholds(model.policy, n);
  for (std::size_t k = 0; k < config.horizon; ++k) {
    const double theta = config.signal.theta_at(k);
    const Eigen::VectorXd z = observe(theta, model.noise, rng);
    const QuantizedFrame frame = quantize(z, tau, k);
    const RecoveryResult rec = solve_cqp(model.cache, frame, config.solver);
    if (rec.hit_iteration_cap) ++trial.capped_solves;
    trial.steps.push_back({k, theta, rec.theta_hat, rec.objective, rec.fast_path});
    tau = next_thresholds(model.policy, rec.theta_hat, n, rng);
  }
  score_trial(trial, config.burn_in);
  return trial;
}

inline TrialResult run_trial(const SimConfig& config, std::uint64_t trial_seed) {
  config.validate();
  return run_trial(config, PreparedModel(config), trial_seed);
}

/// Trials run on a worker pool; results are reduced in trial order.
inline SimReport run_monte_carlo(const SimConfig& config) {
  config.validate();
  const PreparedModel model(config);
  std::vector<TrialResult> trials(config.trials);

  unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1U, static_cast<unsigned>(config.trials));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = next++; i < config.trials; i = next++)
        trials[i] = run_trial(config, model, derive_seed(config.seed, i));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SimReport report;
  report.nmse_per_trial.reserve(config.trials);
  double sum = 0.0;
  for (const auto& t : trials) {
    report.nmse_per_trial.push_back(t.nmse);
    sum += t.nmse;
    report.zero_norm = report.zero_norm || t.zero_norm;
    report.capped_solves += t.capped_solves;
  }
  report.nmse = sum / static_cast<double>(config.trials);
  report.per_step = std::move(trials.front().steps);
  return report;
}

struct SweepRow {
  double parameter = 0.0;  // N or P_tot
  SimReport report;
};

/// One Monte Carlo run per sensor count. White noise keeps sigma_v; colored
/// noise keeps P_tot, spread over the new N.
inline std::vector<SweepRow> sweep_nodes(const SimConfig& base, const std::vector<Eigen::Index>& n_list) {
  if (n_list.empty()) throw std::invalid_argument("sweep_nodes: empty node list");
  std::vector<SweepRow> rows;
  rows.reserve(n_list.size());
  for (const Eigen::Index n : n_list) {
    SimConfig cfg = base;
    cfg.n_sensors = n;
    rows.push_back({static_cast<double>(n), run_monte_carlo(cfg)});
  }
  return rows;
}

/// One Monte Carlo run per total noise power Tr(cov). Colored noise is rebuilt
/// with the base rho; white noise gets sigma_v = sqrt(P_tot / N).
inline std::vector<SweepRow> sweep_noise_power(const SimConfig& base, const std::vector<double>& p_list) {
  if (p_list.empty()) throw std::invalid_argument("sweep_noise_power: empty power list");
  std::vector<SweepRow> rows;
  rows.reserve(p_list.size());
  for (const double p : p_list) {
    if (!(p > 0.0)) throw std::invalid_argument("sweep_noise_power: P_tot must be > 0");
    SimConfig cfg = base;
    if (cfg.noise.kind == NoiseSpec::Kind::colored)
      cfg.noise.p_tot = p;
    else
      cfg.noise.sigma_v = std::sqrt(p / static_cast<double>(cfg.n_sensors));
    rows.push_back({p, run_monte_carlo(cfg)});
  }
  return rows;
}

}  // namespace onebit

#endif  // ONEBIT_HARNESS_HPP
