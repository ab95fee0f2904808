// SPDX-License-Identifier: Apache-2.0
#ifndef LEOSIM_CONFIG_HPP
#define LEOSIM_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "leosim/types.hpp"

namespace leosim::config {

/**
 * Full campaign description: the experiment axes plus every model knob the
 * simulator needs. Defaults follow the reference simulation matrix; knobs the
 * source material leaves open (array size, element model, terminal budgets,
 * bandwidth, delays) are first-class configuration with documented defaults.
 */
struct CampaignConfig {
  // Experiment axes; the campaign runs their cross-product.
  std::vector<Space> spaces{Space::Feed, Space::Beam};
  std::vector<TerminalClass> terminals{TerminalClass::Vsat,
                                       TerminalClass::Handheld};
  std::vector<Scenario> scenarios{Scenario::Fixed, Scenario::PublicSafety};
  std::vector<Propagation> propagations{Propagation::Plos, Propagation::Nlos};
  std::vector<double> power_density_dbw_mhz{0.0, 4.0, 8.0, 12.0};
  std::vector<Scheme> schemes{Scheme::Mmse, Scheme::SsMmse, Scheme::Mb};
  std::vector<Normalization> normalizations{Normalization::Spc,
                                            Normalization::Pac,
                                            Normalization::Mpc};

  // Monte Carlo controls.
  int iterations = 70;
  uint64_t seed = 1;
  int threads = 0;  // 0 = library default

  // Geometry.
  double altitude_km = 600.0;
  int n_rings = 5;
  double beam_spacing_uv = 0.1;
  double user_density_per_km2 = 0.5;
  double min_elevation_deg = 10.0;
  double footprint_overlap = 1.15;
  double ue_speed_kmh = 250.0;

  // Transmit array.
  int array_nx = 16;
  int array_ny = 16;
  double element_spacing_wavelengths = 0.5;
  double carrier_ghz = 2.0;
  std::string element_model = "cos_q";  // cos_q | isotropic | table:<path>
  double element_gain_dbi = 10.7;

  // Terminal radio profiles (not asserted by tests; see README for provenance).
  double vsat_gain_dbi = 39.7;
  double vsat_temperature_k = 150.0;
  std::string vsat_pattern = "parabolic";  // parabolic | isotropic | table:<path>
  double handheld_gain_dbi = 0.0;
  double handheld_temperature_k = 1450.0;
  std::string handheld_pattern = "isotropic";
  double ss_mmse_temperature_error_db = 0.0;

  // Channel.
  double bandwidth_mhz = 30.0;
  std::string environment = "suburban";
  std::string loss_table;  // path; empty = built-in S-band suburban table

  // Delay budget.
  double processing_delay_ms = 1.0;
  double additional_delay_ms = 1.0;
  std::string architecture = "cpc";
  double gw_along_track_km = 0.0;  // GW offset from the initial nadir point

  double wavelength() const;
  double bandwidth_hz() const { return bandwidth_mhz * 1e6; }
  double total_power_w(double power_density_dbw_mhz_value) const;

  /// Throws std::invalid_argument with a field-precise message.
  void validate() const;
};

/// One point of the experiment cross-product.
struct Cell {
  int index = 0;
  Space space = Space::Feed;
  TerminalClass terminal = TerminalClass::Vsat;
  Scenario scenario = Scenario::Fixed;
  Propagation propagation = Propagation::Plos;
  double power_density_dbw_mhz = 0.0;
  Scheme scheme = Scheme::Mmse;
  Normalization normalization = Normalization::Spc;

  std::string id() const;
};

/// Cross-product in axis order: space, terminal, scenario, propagation,
/// power, scheme, normalization.
std::vector<Cell> enumerate_cells(const CampaignConfig& cfg);

/**
 * Parse a plain-text key/value config file. Lines are `key: value`; lists use
 * `[a, b, c]`; `[section]` headers group keys and are validated; `#` starts a
 * comment. Unknown keys are a hard error naming the key and line. Relative
 * paths resolve against the config file directory.
 */
CampaignConfig parse_config(const std::string& path);

/// Parse config text directly (used by tests and --set style overrides).
CampaignConfig parse_config_text(const std::string& text,
                                 const std::string& base_dir = ".");

/// Canonical sectioned echo of every materialized key.
std::string echo_config(const CampaignConfig& cfg);

} // namespace leosim::config

#endif // LEOSIM_CONFIG_HPP
