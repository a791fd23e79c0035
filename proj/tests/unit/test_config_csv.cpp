#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "onebit/config.hpp"
#include "onebit/csv.hpp"
#include "onebit/grid.hpp"

namespace onebit {
namespace {

using nlohmann::json;

json minimal() {
  return json::parse(R"({
    "n_sensors": 100,
    "noise": {"kind": "white", "sigma_v": 1.0},
    "signal": {"kind": "sinusoid", "amplitude": 10, "frequency_hz": 200, "dt": 0.001},
    "horizon": 1000
  })");
}

std::string config_error_key(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

TEST(ParseConfig, MinimalFillsDefaults) {
  const SimConfig cfg = parse_config(minimal());
  EXPECT_EQ(cfg.n_sensors, 100);
  EXPECT_EQ(cfg.noise.kind, NoiseSpec::Kind::white);
  EXPECT_EQ(cfg.signal.kind, SignalGenerator::Kind::sinusoid);
  EXPECT_DOUBLE_EQ(cfg.signal.frequency_hz, 200.0);
  EXPECT_EQ(cfg.horizon, 1000U);
  EXPECT_EQ(cfg.trials, 100U);
  EXPECT_EQ(cfg.burn_in, 10U);
  EXPECT_EQ(cfg.seed, 0U);
  EXPECT_FALSE(cfg.policy.sigma_tau.has_value());
  EXPECT_DOUBLE_EQ(cfg.resolved_policy().sigma_tau, 1.0);
  EXPECT_EQ(std::get<double>(cfg.policy.init), 0.0);
}

TEST(ParseConfig, ColoredNoiseTrace) {
  json j = minimal();
  j["noise"] = {{"kind", "colored"}, {"p_tot", 5}, {"rho", 0.5}};
  const SimConfig cfg = parse_config(j);
  EXPECT_NEAR(cfg.noise.build(cfg.n_sensors).trace(), 5.0, 1e-12);
  EXPECT_DOUBLE_EQ(cfg.noise.rho, 0.5);

  j["noise"].erase("rho");
  EXPECT_DOUBLE_EQ(parse_config(j).noise.rho, 0.5);
}

TEST(ParseConfig, FullSchema) {
  json j = minimal();
  j["signal"] = {{"kind", "constant"}, {"value", 2.5}};
  j["policy"] = {{"sigma_tau", 0.25}, {"init", json::array({1, 2, 3})}};
  j["n_sensors"] = 3;
  j["burn_in"] = 0;
  j["trials"] = 7;
  j["seed"] = 18446744073709551615ULL;
  const SimConfig cfg = parse_config(j);
  EXPECT_EQ(cfg.signal.theta_at(12), 2.5);
  EXPECT_DOUBLE_EQ(*cfg.policy.sigma_tau, 0.25);
  EXPECT_EQ(std::get<std::vector<double>>(cfg.policy.init), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(cfg.burn_in, 0U);
  EXPECT_EQ(cfg.trials, 7U);
  EXPECT_EQ(cfg.seed, 18446744073709551615ULL);
}

TEST(ParseConfig, ShortHorizonClampsDefaultBurnIn) {
  json j = minimal();
  j["horizon"] = 4;
  EXPECT_EQ(parse_config(j).burn_in, 3U);
}

TEST(ParseConfig, ViolationsNameTheKey) {
  json j = minimal();
  j["noise"] = {{"kind", "colored"}, {"p_tot", 5}, {"rho", 1.0}};
  EXPECT_EQ(config_error_key(j), "noise.rho");

  j = minimal();
  j["horizn"] = 5;
  EXPECT_EQ(config_error_key(j), "horizn");

  j = minimal();
  j["noise"]["p_tot"] = 1.0;  // not a white-noise key
  EXPECT_EQ(config_error_key(j), "noise.p_tot");

  j = minimal();
  j.erase("horizon");
  EXPECT_EQ(config_error_key(j), "horizon");

  j = minimal();
  j["n_sensors"] = -3;
  EXPECT_EQ(config_error_key(j), "n_sensors");

  j = minimal();
  j["n_sensors"] = 2.5;
  EXPECT_EQ(config_error_key(j), "n_sensors");

  j = minimal();
  j["burn_in"] = 1000;
  EXPECT_EQ(config_error_key(j), "burn_in");

  j = minimal();
  j["policy"] = {{"sigma_tau", -1}};
  EXPECT_EQ(config_error_key(j), "policy.sigma_tau");

  j = minimal();
  j["policy"] = {{"init", json::array({1, 2})}};
  EXPECT_EQ(config_error_key(j), "policy.init");

  j = minimal();
  j["signal"]["dt"] = 0;
  EXPECT_EQ(config_error_key(j), "signal.dt");

  j = minimal();
  j["noise"]["kind"] = "pink";
  EXPECT_EQ(config_error_key(j), "noise.kind");

  j = minimal();
  j["trials"] = 0;
  EXPECT_EQ(config_error_key(j), "trials");
}

TEST(LoadConfig, MissingFileAndBadJson) {
  EXPECT_THROW(load_config("/nonexistent/dir/c.json"), ConfigFileError);
  const auto path = std::filesystem::temp_directory_path() / "onebit_bad_config.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_config(path), ConfigError);
  std::filesystem::remove(path);
}

TEST(Csv, Formatting) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(-1e-20), "-9.9999999999999995e-21");
  CsvTable t{{"n", "nmse"}, {{std::int64_t{10}, 0.5}, {std::int64_t{25}, 0.25}}};
  EXPECT_EQ(to_csv(t), "n,nmse\n10,0.5\n25,0.25\n");
  CsvTable bad{{"a", "b"}, {{1.0}}};
  EXPECT_THROW(to_csv(bad), std::invalid_argument);
}

TEST(Csv, TableSchemas) {
  SimReport r;
  r.per_step = {{0, 0.0, 0.5, 0.0, true}, {1, 1.0, 1.5, 2.0, false}};
  EXPECT_EQ(to_csv(per_step_table(r)),
            "k,theta,theta_hat,objective,fast_path\n0,0,0.5,0,1\n1,1,1.5,2,0\n");
  MICurve c{{0.5}, {0.25}};
  EXPECT_EQ(to_csv(mi_table(c)), "sigma_v,mi_bits\n0.5,0.25\n");
  std::vector<SweepRow> rows(1);
  rows[0].parameter = 10;
  rows[0].report.nmse = 0.125;
  EXPECT_EQ(to_csv(node_sweep_table(rows)), "n,nmse\n10,0.125\n");
  EXPECT_EQ(to_csv(power_sweep_table(rows)), "p_tot,nmse\n10,0.125\n");
}

TEST(Csv, WriteErrors) {
  CsvTable t{{"n"}, {{std::int64_t{1}}}};
  EXPECT_THROW(write_csv(t, "/nonexistent/dir/out.csv"), IoError);
  EXPECT_THROW(write_csv(CsvTable{{"n"}, {}}, "/tmp/never.csv"), std::invalid_argument);
}

TEST(Grid, LinearAndLog) {
  EXPECT_EQ(parse_grid("0:1:5"), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  const auto g = parse_grid("log:0.001:10:5");
  ASSERT_EQ(g.size(), 5U);
  EXPECT_NEAR(g[0], 1e-3, 1e-18);
  EXPECT_NEAR(g[1], 1e-2, 1e-16);
  EXPECT_NEAR(g[2], 1e-1, 1e-15);
  EXPECT_EQ(g[4], 10.0);
  EXPECT_EQ(parse_grid("0.01:10:50").size(), 50U);
  EXPECT_EQ(parse_grid("3:7:1"), std::vector<double>{3.0});
}

TEST(Grid, Rejects) {
  for (const char* bad : {"", "1:2", "1:2:3:4", "a:2:3", "1:2:0", "1:2:x", "log:0:1:3", "log:-1:1:3"})
    EXPECT_THROW(parse_grid(bad), std::invalid_argument) << bad;
}

}  // namespace
}  // namespace onebit
