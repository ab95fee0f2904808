// SPDX-License-Identifier: Apache-2.0
//
// Compares the serial reference implementations against the OpenMP paths:
// system-channel synthesis at a few scene sizes and a small end-to-end
// campaign. Verifies on the fly that both paths produce identical results.

#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "leosim/channel.hpp"
#include "leosim/constants.hpp"
#include "leosim/simulation.hpp"

using namespace leosim;

namespace {

double now_seconds() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return static_cast<double>(clock()) / CLOCKS_PER_SEC;
#endif
}

channel::SceneSnapshot make_scene(int n_users,
                                  const geometry::SatelliteState& sat) {
  channel::SceneSnapshot scene;
  scene.sat = sat;
  scene.epoch = 0.0;
  RandomStream rng(7);
  for (int i = 0; i < n_users; ++i) {
    geometry::UserTerminal u;
    u.id = i;
    const Vec2 uv(0.5 * (rng.uniform() - 0.5), 0.5 * (rng.uniform() - 0.5));
    u.position = geometry::uv_to_ground(uv, sat);
    u.velocity = Vec3::Zero();
    u.noise_temperature = 150.0;
    u.rx_boresight = (sat.position - u.position).normalized();
    scene.users.push_back(u);
    channel::LossSample loss;
    loss.shadow_db = 3.0 * rng.normal();
    scene.losses.push_back(loss);
  }
  return scene;
}

void bench_channel(int n_users, int nx, int repeats) {
  const auto sat = geometry::make_circular_orbit(600e3);
  channel::LinkContext ctx;
  ctx.array = antenna::make_planar_array(nx, nx, 0.5, kSpeedOfLightMS / 2e9);
  ctx.element = std::make_shared<antenna::CosQPattern>(10.7);
  ctx.terminal.terminal_class = TerminalClass::Vsat;
  ctx.terminal.peak_gain_dbi = 39.7;
  ctx.terminal.noise_temperature = 150.0;
  ctx.terminal.pattern = std::make_shared<antenna::ParabolicPattern>(39.7);
  const auto scene = make_scene(n_users, sat);

  double t0 = now_seconds();
  channel::ChannelMatrix serial;
  for (int r = 0; r < repeats; ++r)
    serial = channel::build_system_channel(scene, ctx, channel::Exec::Serial);
  const double serial_s = (now_seconds() - t0) / repeats;

  t0 = now_seconds();
  channel::ChannelMatrix parallel;
  for (int r = 0; r < repeats; ++r)
    parallel = channel::build_system_channel(scene, ctx, channel::Exec::OpenMP);
  const double parallel_s = (now_seconds() - t0) / repeats;

  const bool identical = serial.entries == parallel.entries;
  std::printf("channel %6d users x %4d feeds | serial %9.3f ms | omp %9.3f ms"
              " | speedup %5.2fx | identical %s\n",
              n_users, nx * nx, serial_s * 1e3, parallel_s * 1e3,
              serial_s / parallel_s, identical ? "yes" : "NO");
}

void bench_campaign() {
  config::CampaignConfig cfg;
  cfg.spaces = {Space::Beam, Space::Feed};
  cfg.terminals = {TerminalClass::Vsat};
  cfg.scenarios = {Scenario::Fixed};
  cfg.propagations = {Propagation::Plos, Propagation::Nlos};
  cfg.power_density_dbw_mhz = {0.0, 12.0};
  cfg.schemes = {Scheme::Mmse, Scheme::SsMmse, Scheme::Mb};
  cfg.normalizations = {Normalization::Spc, Normalization::Mpc};
  cfg.iterations = 10;
  cfg.seed = 31;
  cfg.n_rings = 2;
  cfg.beam_spacing_uv = 0.12;
  cfg.user_density_per_km2 = 1e-3;
  cfg.array_nx = 12;
  cfg.array_ny = 12;

  double t0 = now_seconds();
  const auto serial = sim::run_campaign(cfg, channel::Exec::Serial);
  const double serial_s = now_seconds() - t0;

  t0 = now_seconds();
  const auto parallel = sim::run_campaign(cfg, channel::Exec::OpenMP);
  const double parallel_s = now_seconds() - t0;

  bool identical = serial.records.size() == parallel.records.size();
  for (size_t i = 0; identical && i < serial.records.size(); ++i)
    identical = serial.records[i].sinr == parallel.records[i].sinr &&
                serial.records[i].sir == parallel.records[i].sir;

  std::printf("campaign %zu records           | serial %9.3f ms | omp %9.3f ms"
              " | speedup %5.2fx | identical %s\n",
              serial.records.size(), serial_s * 1e3, parallel_s * 1e3,
              serial_s / parallel_s, identical ? "yes" : "NO");
}

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both paths run serially\n");
#endif

  bench_channel(500, 8, 20);
  bench_channel(2000, 16, 5);
  bench_channel(8000, 16, 2);
  bench_campaign();
  return 0;
}
