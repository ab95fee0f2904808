// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <fstream>
#include <string>

#include "leosim/config.hpp"

using namespace leosim;
using namespace leosim::config;

TEST_CASE("minimal config materializes the full default set") {
  const CampaignConfig cfg = parse_config_text("iterations: 1\n");
  CHECK(cfg.iterations == 1);
  CHECK(cfg.n_rings == 5);
  CHECK(cfg.power_density_dbw_mhz == std::vector<double>{0, 4, 8, 12});
  CHECK(cfg.spaces.size() == 2);
  CHECK(cfg.bandwidth_mhz == 30.0);

  const std::string echo = echo_config(cfg);
  CHECK(echo.find("iterations: 1") != std::string::npos);
  CHECK(echo.find("n_rings: 5") != std::string::npos);
  CHECK(echo.find("power_density_dbw_mhz: [0, 4, 8, 12]") != std::string::npos);
  CHECK(echo.find("[geometry]") != std::string::npos);
}

TEST_CASE("power density list expands the experiment matrix") {
  const CampaignConfig cfg = parse_config_text(
      "power_density_dbw_mhz: [0, 4, 8, 12]\n"
      "space: [beam]\n"
      "terminal: [vsat]\n"
      "scenario: [fixed]\n"
      "propagation: [plos]\n"
      "scheme: [mmse]\n"
      "normalization: [spc]\n");
  CHECK(enumerate_cells(cfg).size() == 4);
}

TEST_CASE("misspelled keys are a hard error naming the key") {
  CHECK_THROWS_WITH_AS(parse_config_text("iteratons: 5\n"),
                       doctest::Contains("iteratons"), std::invalid_argument);
}

TEST_CASE("unknown enum values are rejected with the value named") {
  CHECK_THROWS_WITH_AS(parse_config_text("space: [sideways]\n"),
                       doctest::Contains("sideways"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("scheme: [zf]\n"),
                       doctest::Contains("zf"), std::invalid_argument);
}

TEST_CASE("out-of-range values carry field-precise messages") {
  CHECK_THROWS_WITH_AS(parse_config_text("iterations: 0\n"),
                       doctest::Contains("iterations"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("user_density_per_km2: -1\n"),
                       doctest::Contains("user_density_per_km2"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("iterations: 1.5\n"),
                       doctest::Contains("integer"), std::invalid_argument);
}

TEST_CASE("sections group keys and are validated") {
  const CampaignConfig cfg = parse_config_text(
      "[campaign]\n"
      "iterations: 3\n"
      "[geometry]\n"
      "n_rings: 2\n");
  CHECK(cfg.iterations == 3);
  CHECK(cfg.n_rings == 2);

  CHECK_THROWS_WITH_AS(parse_config_text("[geometry]\niterations: 3\n"),
                       doctest::Contains("does not belong"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("[nonsense]\n"),
                       doctest::Contains("nonsense"), std::invalid_argument);
}

TEST_CASE("comments and blank lines are ignored") {
  const CampaignConfig cfg = parse_config_text(
      "# leading comment\n"
      "\n"
      "iterations: 4  # trailing comment\n");
  CHECK(cfg.iterations == 4);
}

TEST_CASE("campaign normalizations exclude raw") {
  CHECK_THROWS_WITH_AS(parse_config_text("normalization: [raw]\n"),
                       doctest::Contains("raw"), std::invalid_argument);
}

TEST_CASE("cell enumeration order nests normalization innermost") {
  CampaignConfig cfg;
  cfg.spaces = {Space::Feed, Space::Beam};
  cfg.terminals = {TerminalClass::Vsat};
  cfg.scenarios = {Scenario::Fixed};
  cfg.propagations = {Propagation::Plos};
  cfg.power_density_dbw_mhz = {0.0};
  cfg.schemes = {Scheme::Mmse};
  cfg.normalizations = {Normalization::Spc, Normalization::Mpc};

  const auto cells = enumerate_cells(cfg);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].id() == "feed|vsat|fixed|plos|p0|mmse|spc");
  CHECK(cells[1].id() == "feed|vsat|fixed|plos|p0|mmse|mpc");
  CHECK(cells[2].id() == "beam|vsat|fixed|plos|p0|mmse|spc");
  CHECK(cells[3].id() == "beam|vsat|fixed|plos|p0|mmse|mpc");
  for (size_t i = 0; i < cells.size(); ++i)
    CHECK(cells[i].index == static_cast<int>(i));
}

TEST_CASE("echo round trip reproduces the configuration") {
  const CampaignConfig cfg = parse_config_text(
      "iterations: 9\n"
      "seed: 1234\n"
      "beam_spacing_uv: 0.07\n"
      "scheme: [mb, ss-mmse]\n"
      "vsat_temperature_k: 180\n");
  const CampaignConfig replay = parse_config_text(echo_config(cfg));
  CHECK(echo_config(replay) == echo_config(cfg));
  CHECK(replay.seed == 1234);
  CHECK(replay.schemes == std::vector<Scheme>{Scheme::Mb, Scheme::SsMmse});
}

TEST_CASE("config files load with paths resolved against their directory") {
  const std::string dir = "/tmp/leosim_cfg_test";
  [[maybe_unused]] const int rc = std::system(("mkdir -p " + dir).c_str());
  {
    std::ofstream table(dir + "/table.txt");
    table << "10 8 19 0.2 1.0\n90 11 16 0.03 0.1\n";
  }
  {
    std::ofstream cfg_file(dir + "/campaign.cfg");
    cfg_file << "iterations: 2\nloss_table: table.txt\n";
  }
  const CampaignConfig cfg = parse_config(dir + "/campaign.cfg");
  CHECK(cfg.loss_table == dir + "/table.txt");

  CHECK_THROWS_AS(parse_config("/nonexistent/file.cfg"), std::invalid_argument);
}

TEST_CASE("derived quantities") {
  CampaignConfig cfg;
  CHECK(cfg.wavelength() == doctest::Approx(0.149896229));
  // 0 dBW/MHz over 30 MHz is 10 log10(30) dBW.
  CHECK(cfg.total_power_w(0.0) == doctest::Approx(30.0).epsilon(1e-12));
  CHECK(cfg.total_power_w(12.0) == doctest::Approx(30.0 * std::pow(10.0, 1.2)).epsilon(1e-12));
}
