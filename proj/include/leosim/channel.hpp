// SPDX-License-Identifier: Apache-2.0
#ifndef LEOSIM_CHANNEL_HPP
#define LEOSIM_CHANNEL_HPP

#include <string>
#include <vector>

#include "leosim/antenna.hpp"
#include "leosim/geometry.hpp"
#include "leosim/rng.hpp"
#include "leosim/types.hpp"

namespace leosim::channel {

/// Additional-loss decomposition in dB; pLOS scenes carry all-zero samples.
struct LossSample {
  double shadow_db = 0.0;
  double atmospheric_db = 0.0;
  double scintillation_db = 0.0;
  double clutter_db = 0.0;

  double total_db() const {
    return shadow_db + atmospheric_db + scintillation_db + clutter_db;
  }
};

/**
 * Elevation-indexed NLOS loss statistics: shadow-fading sigma, clutter loss,
 * atmospheric loss, and scintillation, linearly interpolated between rows and
 * clamped at the ends. Rows can be loaded from a plain-text file with columns
 * (elevation_deg, shadow_sigma_db, clutter_db, atm_db, scint_db).
 */
class LossTable {
 public:
  struct Row {
    double elevation_deg;
    double shadow_sigma_db;
    double clutter_db;
    double atm_db;
    double scint_db;
  };

  explicit LossTable(std::vector<Row> rows);
  static LossTable load(const std::string& path);

  /// Built-in S-band suburban defaults (see data/ntn_suburban_s_band.txt).
  static const LossTable& ntn_suburban_s_band();

  Row at_elevation(double elevation_deg) const;

 private:
  std::vector<Row> rows_;
};

LossSample draw_losses(Propagation propagation, Environment environment,
                       double elevation_deg, const LossTable& table,
                       RandomStream& rng);

/// Noise-normalized channel matrix; one row per user.
struct ChannelMatrix {
  CMat entries;
  Space space = Space::Feed;
  double epoch = 0.0;
  bool noise_normalized = true;
};

struct SceneSnapshot {
  geometry::SatelliteState sat;
  std::vector<geometry::UserTerminal> users;
  std::vector<LossSample> losses;  // one per user
  double epoch = 0.0;
};

/// Radio context shared by every channel row of a run.
struct LinkContext {
  antenna::ArrayGeometry array;
  std::shared_ptr<const antenna::Pattern> element;
  antenna::TerminalRadioProfile terminal;
  double bandwidth_hz = 30e6;
  double min_elevation_deg = 10.0;
};

/**
 * Noise-normalized feed-space channel row of one terminal: per-feed transmit
 * gain times receive gain over free-space spreading and the noise and
 * additional-loss denominators, with the common slant-range phase.
 * Throws if the terminal sits below the minimum elevation.
 */
CVec feed_channel_row(const geometry::UserTerminal& user,
                      const geometry::SatelliteState& sat,
                      const LinkContext& ctx, const LossSample& loss);

enum class Exec { Serial, OpenMP };

/// Full users-by-feeds system channel; rows are independent, so the OpenMP
/// path is bit-identical to the serial reference.
ChannelMatrix build_system_channel(const SceneSnapshot& scene,
                                   const LinkContext& ctx,
                                   Exec exec = Exec::OpenMP);

/// Beam-space conversion H_beam = H_feed * B; epoch and normalization carry over.
ChannelMatrix to_beam_space(const ChannelMatrix& feed_space, const CMat& b);

/**
 * Transmitter-side approximation of a channel row, evaluated at a beam-center
 * ground point with unit additional losses and the class-representative noise
 * temperature. Everything in it derives from user location, satellite
 * ephemeris, and terminal type only.
 */
CVec beam_center_channel_row(const Vec2& beam_center,
                             double representative_temperature,
                             const geometry::SatelliteState& sat,
                             const LinkContext& ctx);

/**
 * Scene at the transmission instant: satellite propagated by the delay budget,
 * users moved per their velocity, stochastic loss terms re-drawn independently
 * from per-user substreams of `rng`.
 */
SceneSnapshot evolve_scene(const SceneSnapshot& scene_t0,
                           const geometry::DelayBudget& budget,
                           Propagation propagation, Environment environment,
                           const LossTable& table, RandomStream& rng);

} // namespace leosim::channel

#endif // LEOSIM_CHANNEL_HPP
