// Command-line front end for the 1-bit adaptive recovery simulator.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "onebit/config.hpp"
#include "onebit/csv.hpp"
#include "onebit/grid.hpp"
#include "onebit/harness.hpp"
#include "onebit/infotheory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct SimOptions {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

void add_sim_options(CLI::App* cmd, SimOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON simulation config")->required();
  cmd->add_option("--out", opts.out_path, "Output CSV path")->required();
  cmd->add_option("--seed", opts.seed, "Override the config seed");
  cmd->add_option("--threads", opts.threads, "Worker threads for trials (0: all cores)")
      ->capture_default_str();
}

onebit::SimConfig load(const SimOptions& opts) {
  onebit::SimConfig cfg = onebit::load_config(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  cfg.threads = opts.threads;
  return cfg;
}

void warn_capped(std::size_t capped) {
  if (capped > 0) std::cerr << "warning: " << capped << " solves hit the iteration cap\n";
}

void print_summary(const onebit::SimReport& report, const onebit::SimConfig& cfg,
                   const std::string& prefix = "") {
  std::cout << prefix << "nmse=" << onebit::format_double(report.nmse)
            << " trials=" << cfg.trials << " seed=" << cfg.seed << '\n';
  warn_capped(report.capped_solves);
}

int run_simulate(const SimOptions& opts) {
  const auto cfg = load(opts);
  const auto report = onebit::run_monte_carlo(cfg);
  onebit::write_csv(onebit::per_step_table(report), opts.out_path);
  print_summary(report, cfg);
  return kExitOk;
}

int run_sweep_nodes(const SimOptions& opts, const std::vector<long>& n_list) {
  const auto cfg = load(opts);
  std::vector<Eigen::Index> ns;
  for (long n : n_list) {
    if (n < 1) throw std::invalid_argument("--n-list entries must be >= 1");
    ns.push_back(static_cast<Eigen::Index>(n));
  }
  const auto rows = onebit::sweep_nodes(cfg, ns);
  onebit::write_csv(onebit::node_sweep_table(rows), opts.out_path);
  for (const auto& row : rows)
    print_summary(row.report, cfg, "n=" + std::to_string(static_cast<long>(row.parameter)) + " ");
  return kExitOk;
}

int run_sweep_power(const SimOptions& opts, const std::vector<double>& p_list) {
  const auto cfg = load(opts);
  const auto rows = onebit::sweep_noise_power(cfg, p_list);
  onebit::write_csv(onebit::power_sweep_table(rows), opts.out_path);
  for (const auto& row : rows)
    print_summary(row.report, cfg, "p_tot=" + onebit::format_double(row.parameter) + " ");
  return kExitOk;
}

struct MiOptions {
  std::string prior = "uniform";
  double lower = -1.0;
  double upper = 1.0;
  double mean = 0.0;
  double stddev = 1.0;
  double tau = 0.0;
  std::string grid;
  std::size_t nodes = onebit::kDefaultQuadratureNodes;
  std::string out_path;
};

int run_mi_curve(const MiOptions& opts) {
  const onebit::PriorSpec prior = opts.prior == "gaussian"
                                      ? onebit::PriorSpec::gaussian(opts.mean, opts.stddev)
                                      : onebit::PriorSpec::uniform(opts.lower, opts.upper);
  const auto curve = onebit::mi_curve(prior, opts.tau, onebit::parse_grid(opts.grid), opts.nodes);
  onebit::write_csv(onebit::mi_table(curve), opts.out_path);
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.mi_bits.size(); ++i)
    if (curve.mi_bits[i] > curve.mi_bits[best]) best = i;
  std::cout << "points=" << curve.mi_bits.size()
            << " max_mi=" << onebit::format_double(curve.mi_bits[best])
            << " sigma_at_max=" << onebit::format_double(curve.sigma_values[best]) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recover a scalar parameter from 1-bit quantized sensor data with adaptive thresholds"};
  app.footer(std::string(onebit::kConfigDefaultsHelp) +
             "\nExit codes: 0 success, 2 usage/config error, 3 I/O error.");
  app.require_subcommand(1);

  SimOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run; writes k,theta,theta_hat,objective,fast_path");
  add_sim_options(simulate, sim_opts);

  SimOptions nodes_opts;
  std::vector<long> n_list;
  auto* sweep_nodes = app.add_subcommand("sweep-nodes", "NMSE versus sensor count; writes n,nmse");
  add_sim_options(sweep_nodes, nodes_opts);
  sweep_nodes->add_option("--n-list", n_list, "Comma-separated sensor counts")
      ->required()
      ->delimiter(',');

  SimOptions power_opts;
  std::vector<double> p_list;
  auto* sweep_power = app.add_subcommand("sweep-power", "NMSE versus total noise power; writes p_tot,nmse");
  add_sim_options(sweep_power, power_opts);
  sweep_power->add_option("--p-list", p_list, "Comma-separated total noise powers Tr(cov)")
      ->required()
      ->delimiter(',');

  MiOptions mi_opts;
  auto* mi = app.add_subcommand("mi-curve", "Mutual information of one 1-bit sample versus noise std; writes sigma_v,mi_bits");
  mi->add_option("--prior", mi_opts.prior, "Prior on theta")
      ->check(CLI::IsMember({"uniform", "gaussian"}))
      ->capture_default_str();
  mi->add_option("--lower", mi_opts.lower, "Uniform prior lower bound")->capture_default_str();
  mi->add_option("--upper", mi_opts.upper, "Uniform prior upper bound")->capture_default_str();
  mi->add_option("--mean", mi_opts.mean, "Gaussian prior mean")->capture_default_str();
  mi->add_option("--std", mi_opts.stddev, "Gaussian prior standard deviation")->capture_default_str();
  mi->add_option("--tau", mi_opts.tau, "Quantizer threshold")->capture_default_str();
  mi->add_option("--sigma-grid", mi_opts.grid, "Noise std grid, [log:]start:stop:count")->required();
  mi->add_option("--nodes", mi_opts.nodes, "Simpson quadrature nodes (odd, >= 3)")->capture_default_str();
  mi->add_option("--out", mi_opts.out_path, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cout << app.help();
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim_opts);
    if (sweep_nodes->parsed()) return run_sweep_nodes(nodes_opts, n_list);
    if (sweep_power->parsed()) return run_sweep_power(power_opts, p_list);
    if (mi->parsed()) return run_mi_curve(mi_opts);
  } catch (const onebit::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const onebit::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const onebit::ConfigFileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
