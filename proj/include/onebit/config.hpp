#ifndef ONEBIT_CONFIG_HPP
#define ONEBIT_CONFIG_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "onebit/harness.hpp"

namespace onebit {

/// Schema violation in a simulation config; key() is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error("config key '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Config file missing or unreadable.
class ConfigFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kConfigDefaultsHelp =
    "Config defaults: noise.rho=0.5, signal.dt=0.001, policy.sigma_tau=per-sensor noise std "
    "(white: sigma_v, colored: sqrt(p_tot/n_sensors)), policy.init=0, burn_in=10 "
    "(at most horizon-1), trials=100, seed=0.";

namespace detail {

using nlohmann::json;

inline std::string join_key(std::string_view parent, std::string_view key) {
  return parent.empty() ? std::string(key) : std::string(parent) + "." + std::string(key);
}

inline void reject_unknown(const json& obj, std::string_view path,
                           std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(join_key(path, key), "unknown key");
  }
}

inline const json& require(const json& obj, std::string_view path, const char* key) {
  if (!obj.contains(key)) throw ConfigError(join_key(path, key), "missing required key");
  return obj.at(key);
}

inline const json& require_object(const json& obj, std::string_view path, const char* key) {
  const json& v = require(obj, path, key);
  if (!v.is_object()) throw ConfigError(join_key(path, key), "expected an object");
  return v;
}

inline double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

inline std::uint64_t get_unsigned(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  throw ConfigError(key, "expected a non-negative integer");
}

inline std::string get_kind(const json& obj, std::string_view path) {
  const std::string key = join_key(path, "kind");
  const json& v = require(obj, path, "kind");
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

inline NoiseSpec parse_noise(const json& obj) {
  const std::string kind = get_kind(obj, "noise");
  if (kind == "white") {
    reject_unknown(obj, "noise", {"kind", "sigma_v"});
    const double sigma_v = get_number(require(obj, "noise", "sigma_v"), "noise.sigma_v");
    if (!(sigma_v > 0.0)) throw ConfigError("noise.sigma_v", "must be > 0");
    return NoiseSpec::white(sigma_v);
  }
  if (kind == "colored") {
    reject_unknown(obj, "noise", {"kind", "p_tot", "rho"});
    const double p_tot = get_number(require(obj, "noise", "p_tot"), "noise.p_tot");
    if (!(p_tot > 0.0)) throw ConfigError("noise.p_tot", "must be > 0");
    const double rho = obj.contains("rho") ? get_number(obj.at("rho"), "noise.rho") : 0.5;
    if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("noise.rho", "must lie in [0, 1)");
    return NoiseSpec::colored(p_tot, rho);
  }
  throw ConfigError("noise.kind", "expected \"white\" or \"colored\"");
}

inline SignalGenerator parse_signal(const json& obj) {
  const std::string kind = get_kind(obj, "signal");
  if (kind == "constant") {
    reject_unknown(obj, "signal", {"kind", "value"});
    return SignalGenerator::constant(get_number(require(obj, "signal", "value"), "signal.value"));
  }
  if (kind == "sinusoid") {
    reject_unknown(obj, "signal", {"kind", "amplitude", "frequency_hz", "dt"});
    const double amplitude = get_number(require(obj, "signal", "amplitude"), "signal.amplitude");
    const double freq = get_number(require(obj, "signal", "frequency_hz"), "signal.frequency_hz");
    const double dt = obj.contains("dt") ? get_number(obj.at("dt"), "signal.dt") : 1e-3;
    if (!(freq >= 0.0)) throw ConfigError("signal.frequency_hz", "must be >= 0");
    if (!(dt > 0.0)) throw ConfigError("signal.dt", "must be > 0");
    return SignalGenerator::sinusoid(amplitude, freq, dt);
  }
  throw ConfigError("signal.kind", "expected \"constant\" or \"sinusoid\"");
}

inline PolicySpec parse_policy(const json& obj) {
  reject_unknown(obj, "policy", {"sigma_tau", "init"});
  PolicySpec policy;
  if (obj.contains("sigma_tau")) {
    const double s = get_number(obj.at("sigma_tau"), "policy.sigma_tau");
    if (!(s >= 0.0)) throw ConfigError("policy.sigma_tau", "must be >= 0");
    policy.sigma_tau = s;
  }
  if (obj.contains("init")) {
    const json& init = obj.at("init");
    if (init.is_number()) {
      policy.init = init.get<double>();
    } else if (init.is_array()) {
      std::vector<double> values;
      for (const auto& v : init) values.push_back(get_number(v, "policy.init"));
      policy.init = std::move(values);
    } else {
      throw ConfigError("policy.init", "expected a number or an array of numbers");
    }
  }
  return policy;
}

}  // namespace detail

/// Strict parse of a simulation config; every unknown key is an error.
inline SimConfig parse_config(const nlohmann::json& root) {
  using detail::get_unsigned;
  if (!root.is_object()) throw ConfigError("<root>", "expected a JSON object");
  detail::reject_unknown(root, "", {"n_sensors", "noise", "signal", "policy", "horizon", "burn_in",
                                    "trials", "seed"});
  SimConfig cfg;
  const auto n = get_unsigned(detail::require(root, "", "n_sensors"), "n_sensors");
  if (n < 1) throw ConfigError("n_sensors", "must be >= 1");
  cfg.n_sensors = static_cast<Eigen::Index>(n);
  cfg.noise = detail::parse_noise(detail::require_object(root, "", "noise"));
  cfg.signal = detail::parse_signal(detail::require_object(root, "", "signal"));
  if (root.contains("policy")) {
    if (!root.at("policy").is_object()) throw ConfigError("policy", "expected an object");
    cfg.policy = detail::parse_policy(root.at("policy"));
  }
  cfg.horizon = get_unsigned(detail::require(root, "", "horizon"), "horizon");
  if (cfg.horizon < 1) throw ConfigError("horizon", "must be >= 1");
  if (root.contains("burn_in")) {
    cfg.burn_in = get_unsigned(root.at("burn_in"), "burn_in");
    if (cfg.burn_in >= cfg.horizon) throw ConfigError("burn_in", "must be < horizon");
  } else {
    cfg.burn_in = std::min<std::size_t>(10, cfg.horizon - 1);
  }
  if (root.contains("trials")) {
    cfg.trials = get_unsigned(root.at("trials"), "trials");
    if (cfg.trials < 1) throw ConfigError("trials", "must be >= 1");
  }
  if (root.contains("seed")) cfg.seed = get_unsigned(root.at("seed"), "seed");

  if (const auto* init = std::get_if<std::vector<double>>(&cfg.policy.init);
      init && static_cast<Eigen::Index>(init->size()) != cfg.n_sensors)
    throw ConfigError("policy.init", "length must equal n_sensors");
  return cfg;
}

inline SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigFileError("cannot open config file: " + path.string());
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(root);
}

}  // namespace onebit

#endif  // ONEBIT_CONFIG_HPP
