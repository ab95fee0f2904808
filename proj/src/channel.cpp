// SPDX-License-Identifier: Apache-2.0
#include "leosim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "leosim/constants.hpp"

namespace leosim::channel {

LossTable::LossTable(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("loss table is empty");
  for (size_t i = 1; i < rows_.size(); ++i) {
    if (rows_[i].elevation_deg <= rows_[i - 1].elevation_deg)
      throw std::invalid_argument("loss table elevations must be increasing");
  }
}

LossTable LossTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open loss table: " + path);
  std::vector<Row> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    Row r{};
    if (fields >> r.elevation_deg >> r.shadow_sigma_db >> r.clutter_db >>
        r.atm_db >> r.scint_db) {
      rows.push_back(r);
    }
  }
  return LossTable(std::move(rows));
}

const LossTable& LossTable::ntn_suburban_s_band() {
  // S-band suburban NLOS statistics (shadow sigma and clutter loss per
  // TR 38.821 Table 6.6.2-3; atmospheric zenith loss 0.035 dB at 2 GHz per
  // ITU-R P.676 scaled by cosecant; scintillation per TR 38.811
  // Table 6.6.6.2.1-1). The data file under data/ mirrors these rows.
  static const LossTable table({
      {10.0, 8.93, 19.52, 0.202, 1.08},
      {20.0, 9.08, 18.17, 0.102, 0.48},
      {30.0, 8.78, 18.42, 0.070, 0.30},
      {40.0, 10.25, 18.28, 0.054, 0.22},
      {50.0, 10.56, 18.63, 0.046, 0.17},
      {60.0, 10.74, 17.68, 0.040, 0.13},
      {70.0, 10.17, 16.50, 0.037, 0.12},
      {80.0, 11.52, 16.30, 0.036, 0.12},
      {90.0, 11.52, 16.30, 0.035, 0.12},
  });
  return table;
}

LossTable::Row LossTable::at_elevation(double elevation_deg) const {
  if (elevation_deg <= rows_.front().elevation_deg) return rows_.front();
  if (elevation_deg >= rows_.back().elevation_deg) return rows_.back();
  size_t hi = 1;
  while (rows_[hi].elevation_deg < elevation_deg) ++hi;
  const Row& a = rows_[hi - 1];
  const Row& b = rows_[hi];
  const double t =
      (elevation_deg - a.elevation_deg) / (b.elevation_deg - a.elevation_deg);
  Row out;
  out.elevation_deg = elevation_deg;
  out.shadow_sigma_db = a.shadow_sigma_db + t * (b.shadow_sigma_db - a.shadow_sigma_db);
  out.clutter_db = a.clutter_db + t * (b.clutter_db - a.clutter_db);
  out.atm_db = a.atm_db + t * (b.atm_db - a.atm_db);
  out.scint_db = a.scint_db + t * (b.scint_db - a.scint_db);
  return out;
}

LossSample draw_losses(Propagation propagation, Environment environment,
                       double elevation_deg, const LossTable& table,
                       RandomStream& rng) {
  if (environment != Environment::Suburban)
    throw std::invalid_argument("unknown loss environment");
  LossSample s;
  if (propagation == Propagation::Plos) return s;

  const LossTable::Row row = table.at_elevation(elevation_deg);
  s.shadow_db = row.shadow_sigma_db * rng.normal();
  s.clutter_db = row.clutter_db;
  s.atmospheric_db = row.atm_db;
  s.scintillation_db = row.scint_db;
  return s;
}

namespace {

CVec channel_row(const Vec3& target, cplx rx_gain, double temperature,
                 double loss_db, const geometry::SatelliteState& sat,
                 const LinkContext& ctx) {
  const double d = geometry::slant_range(target, sat.position);
  if (d <= 0.0) throw std::domain_error("degenerate geometry: zero slant range");

  const Vec2 dir = geometry::uv_coordinates(target, sat);
  const double lambda = ctx.array.wavelength;
  const double loss_lin = db2lin(loss_db);
  const double noise = kBoltzmannJK * ctx.bandwidth_hz * temperature;
  const double denom = 4.0 * kPi * (d / lambda) * std::sqrt(loss_lin * noise);

  const double range_phase = -2.0 * kPi * d / lambda;
  const cplx common = (rx_gain / denom) *
                      cplx(std::cos(range_phase), std::sin(range_phase));

  const int n = ctx.array.n_feeds();
  CVec row(n);
  for (int f = 0; f < n; ++f)
    row(f) = common * antenna::tx_feed_gain(f, dir, ctx.array, *ctx.element);
  return row;
}

} // namespace

CVec feed_channel_row(const geometry::UserTerminal& user,
                      const geometry::SatelliteState& sat,
                      const LinkContext& ctx, const LossSample& loss) {
  const double elev = geometry::elevation_deg(user.position, sat.position);
  if (elev < ctx.min_elevation_deg)
    throw std::domain_error("terminal below the minimum elevation");

  const Vec3 to_sat = (sat.position - user.position).normalized();
  const double off_boresight =
      std::acos(std::clamp(user.rx_boresight.dot(to_sat), -1.0, 1.0));
  const cplx g_rx = antenna::rx_gain(ctx.terminal, off_boresight);

  return channel_row(user.position, g_rx, user.noise_temperature,
                     loss.total_db(), sat, ctx);
}

ChannelMatrix build_system_channel(const SceneSnapshot& scene,
                                   const LinkContext& ctx, Exec exec) {
  if (scene.users.empty()) throw std::invalid_argument("empty scene");
  if (scene.losses.size() != scene.users.size())
    throw std::invalid_argument("scene losses do not match users");

  const int n_users = static_cast<int>(scene.users.size());
  ChannelMatrix h;
  h.entries.resize(n_users, ctx.array.n_feeds());
  h.space = Space::Feed;
  h.epoch = scene.epoch;

  if (exec == Exec::Serial) {
    for (int i = 0; i < n_users; ++i)
      h.entries.row(i) =
          feed_channel_row(scene.users[i], scene.sat, ctx, scene.losses[i]);
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_users; ++i)
      h.entries.row(i) =
          feed_channel_row(scene.users[i], scene.sat, ctx, scene.losses[i]);
  }

  if (!h.entries.allFinite())
    throw std::runtime_error("channel matrix has non-finite entries");
  return h;
}

ChannelMatrix to_beam_space(const ChannelMatrix& feed_space, const CMat& b) {
  if (feed_space.space != Space::Feed)
    throw std::invalid_argument("input matrix is not in feed space");
  if (feed_space.entries.cols() != b.rows())
    throw std::invalid_argument("channel/beamforming dimension mismatch");

  ChannelMatrix out;
  out.entries = feed_space.entries * b;
  out.space = Space::Beam;
  out.epoch = feed_space.epoch;
  return out;
}

CVec beam_center_channel_row(const Vec2& beam_center,
                             double representative_temperature,
                             const geometry::SatelliteState& sat,
                             const LinkContext& ctx) {
  const Vec3 ground = geometry::uv_to_ground(beam_center, sat);
  // Receive gain at boresight: terminals track the satellite.
  const cplx g_rx = antenna::rx_gain(ctx.terminal, 0.0);
  return channel_row(ground, g_rx, representative_temperature,
                     /*loss_db=*/0.0, sat, ctx);
}

SceneSnapshot evolve_scene(const SceneSnapshot& scene_t0,
                           const geometry::DelayBudget& budget,
                           Propagation propagation, Environment environment,
                           const LossTable& table, RandomStream& rng) {
  if (budget.delta_t < 0.0) throw std::invalid_argument("delta_t must be >= 0");

  SceneSnapshot out;
  out.sat = geometry::propagate_satellite(scene_t0.sat, budget.delta_t);
  out.epoch = scene_t0.epoch + budget.delta_t;
  out.users.reserve(scene_t0.users.size());
  out.losses.reserve(scene_t0.users.size());

  RandomStream headings = rng.substream(0x6d6f7665);  // per-user move streams
  RandomStream losses = rng.substream(0x6c6f7373);    // per-user loss streams
  for (const geometry::UserTerminal& u : scene_t0.users) {
    RandomStream user_heading = headings.substream(static_cast<uint64_t>(u.id));
    out.users.push_back(geometry::move_user(u, budget.delta_t, user_heading));

    RandomStream user_loss = losses.substream(static_cast<uint64_t>(u.id));
    const double elev =
        geometry::elevation_deg(out.users.back().position, out.sat.position);
    out.losses.push_back(
        draw_losses(propagation, environment, elev, table, user_loss));
  }
  return out;
}

} // namespace leosim::channel
