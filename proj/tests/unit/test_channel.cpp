// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "leosim/channel.hpp"
#include "leosim/constants.hpp"

using namespace leosim;
using namespace leosim::channel;

namespace {

const double kLambda = kSpeedOfLightMS / 2e9;

geometry::SatelliteState sat600() { return geometry::make_circular_orbit(600e3); }

LinkContext make_context(int nx = 4, int ny = 4) {
  LinkContext ctx;
  ctx.array = antenna::make_planar_array(nx, ny, 0.5, kLambda);
  ctx.element = std::make_shared<antenna::IsotropicPattern>(0.0);
  ctx.terminal.terminal_class = TerminalClass::Handheld;
  ctx.terminal.peak_gain_dbi = 0.0;
  ctx.terminal.noise_temperature = 290.0;
  ctx.terminal.pattern = std::make_shared<antenna::IsotropicPattern>(0.0);
  ctx.bandwidth_hz = 30e6;
  ctx.min_elevation_deg = 10.0;
  return ctx;
}

geometry::UserTerminal user_at(const Vec3& pos, const geometry::SatelliteState& sat) {
  geometry::UserTerminal u;
  u.id = 0;
  u.position = pos;
  u.velocity = Vec3::Zero();
  u.noise_temperature = 290.0;
  u.rx_boresight = (sat.position - pos).normalized();
  return u;
}

SceneSnapshot single_user_scene(const geometry::SatelliteState& sat,
                                const Vec3& pos) {
  SceneSnapshot scene;
  scene.sat = sat;
  scene.users = {user_at(pos, sat)};
  scene.losses = {LossSample{}};
  scene.epoch = 0.0;
  return scene;
}

} // namespace

TEST_CASE("loss table interpolates linearly and clamps at the ends") {
  const LossTable& table = LossTable::ntn_suburban_s_band();
  const auto low = table.at_elevation(5.0);
  CHECK(low.shadow_sigma_db == doctest::Approx(8.93));
  const auto mid = table.at_elevation(15.0);
  CHECK(mid.shadow_sigma_db == doctest::Approx(0.5 * (8.93 + 9.08)));
  CHECK(mid.clutter_db == doctest::Approx(0.5 * (19.52 + 18.17)));
  const auto high = table.at_elevation(95.0);
  CHECK(high.clutter_db == doctest::Approx(16.30));
}

TEST_CASE("loss table loads from the shipped data file") {
  const LossTable table = LossTable::load(std::string(LEOSIM_SOURCE_DIR) +
                                          "/data/ntn_suburban_s_band.txt");
  const LossTable& builtin = LossTable::ntn_suburban_s_band();
  for (double elev = 10.0; elev <= 90.0; elev += 7.3) {
    CHECK(table.at_elevation(elev).shadow_sigma_db ==
          doctest::Approx(builtin.at_elevation(elev).shadow_sigma_db));
    CHECK(table.at_elevation(elev).clutter_db ==
          doctest::Approx(builtin.at_elevation(elev).clutter_db));
  }
  CHECK_THROWS_AS(LossTable::load("/nonexistent/table.txt"), std::runtime_error);
}

TEST_CASE("pLOS losses are identically zero") {
  RandomStream rng(1);
  const LossSample s = draw_losses(Propagation::Plos, Environment::Suburban,
                                   45.0, LossTable::ntn_suburban_s_band(), rng);
  CHECK(s.total_db() == 0.0);
  CHECK(s.shadow_db == 0.0);
  CHECK(s.clutter_db == 0.0);
}

TEST_CASE("NLOS shadow draws are deterministic and match the configured sigma") {
  const LossTable& table = LossTable::ntn_suburban_s_band();

  RandomStream a(9);
  RandomStream b(9);
  const LossSample s1 = draw_losses(Propagation::Nlos, Environment::Suburban, 40.0, table, a);
  const LossSample s2 = draw_losses(Propagation::Nlos, Environment::Suburban, 40.0, table, b);
  CHECK(s1.shadow_db == s2.shadow_db);
  CHECK(s1.total_db() == s1.shadow_db + s1.atmospheric_db + s1.scintillation_db + s1.clutter_db);

  // Sample variance over 1e4 independent draws within 5% of sigma^2.
  const double sigma = table.at_elevation(40.0).shadow_sigma_db;
  RandomStream root(31);
  const int n = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    RandomStream draw = root.substream(i);
    const double v = draw_losses(Propagation::Nlos, Environment::Suburban, 40.0, table, draw).shadow_db;
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(var - sigma * sigma) < 0.05 * sigma * sigma);
}

TEST_CASE("per-user loss substreams are uncorrelated") {
  const LossTable& table = LossTable::ntn_suburban_s_band();
  RandomStream root(17);
  const int n = 10000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    RandomStream scene = root.substream(i);
    RandomStream ua = scene.substream(0);
    RandomStream ub = scene.substream(1);
    const double x = draw_losses(Propagation::Nlos, Environment::Suburban, 40.0, table, ua).shadow_db;
    const double y = draw_losses(Propagation::Nlos, Environment::Suburban, 40.0, table, ub).shadow_db;
    sx += x; sy += y; sxx += x * x; syy += y * y; sxy += x * y;
  }
  const double corr = (sxy / n - (sx / n) * (sy / n)) /
                      std::sqrt((sxx / n - (sx / n) * (sx / n)) *
                                (syy / n - (sy / n) * (sy / n)));
  CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("feed channel row matches a per-entry scalar oracle") {
  const auto sat = sat600();
  const LinkContext ctx = make_context();
  const Vec3 pos = geometry::uv_to_ground(Vec2(0.12, -0.07), sat);
  const auto u = user_at(pos, sat);
  LossSample loss;
  loss.shadow_db = 3.0;
  loss.clutter_db = 17.1;
  loss.atmospheric_db = 0.05;
  loss.scintillation_db = 0.3;

  const CVec row = feed_channel_row(u, sat, ctx, loss);

  // Independent scalar evaluation of each entry.
  const double d = geometry::slant_range(pos, sat.position);
  const Vec2 dir = geometry::uv_coordinates(pos, sat);
  const double noise = kBoltzmannJK * ctx.bandwidth_hz * u.noise_temperature;
  const double denom = 4.0 * kPi * (d / kLambda) *
                       std::sqrt(db2lin(loss.total_db()) * noise);
  for (int n = 0; n < ctx.array.n_feeds(); ++n) {
    const cplx g_tx = antenna::tx_feed_gain(n, dir, ctx.array, *ctx.element);
    const cplx expected = g_tx * (1.0 / denom) *
                          std::exp(cplx(0.0, -2.0 * kPi * d / kLambda));
    CHECK(std::abs(row(n) - expected) <= 1e-12 * std::abs(expected));
  }
}

TEST_CASE("free-space scaling: doubling the range halves the magnitude") {
  const auto sat_a = sat600();
  const LinkContext ctx = make_context();
  const Vec3 ground = kEarthRadiusM * sat_a.position.normalized();

  // Same nadir geometry, twice the slant range.
  const CVec near_row = feed_channel_row(user_at(ground, sat_a), sat_a, ctx, LossSample{});
  geometry::SatelliteState far_sat = sat_a;
  far_sat.position = ground + 2.0 * (sat_a.position - ground);
  far_sat.altitude = 1200e3;
  const CVec far_row = feed_channel_row(user_at(ground, far_sat), far_sat, ctx, LossSample{});

  CHECK(std::abs(near_row(0)) / std::abs(far_row(0)) == doctest::Approx(2.0).epsilon(1e-12));

  const double phase_delta = std::arg(near_row(0) * std::conj(far_row(0)));
  const double expected = std::remainder(2.0 * kPi * 600e3 / kLambda, 2.0 * kPi);
  CHECK(std::abs(std::remainder(phase_delta - expected, 2.0 * kPi)) < 1e-6);
}

TEST_CASE("3 dB of additional loss scales the row by 1/sqrt(2)") {
  const auto sat = sat600();
  const LinkContext ctx = make_context();
  const Vec3 ground = kEarthRadiusM * sat.position.normalized();
  const auto u = user_at(ground, sat);

  const CVec base = feed_channel_row(u, sat, ctx, LossSample{});
  LossSample loss;
  loss.clutter_db = 3.0103;
  const CVec attenuated = feed_channel_row(u, sat, ctx, loss);

  const double ratio = std::abs(attenuated(0)) / std::abs(base(0));
  CHECK(ratio == doctest::Approx(1.0 / std::sqrt(db2lin(3.0103))).epsilon(1e-12));
  CHECK(ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("noise normalization scales as 1/sqrt(T)") {
  const auto sat = sat600();
  const LinkContext ctx = make_context();
  const Vec3 ground = kEarthRadiusM * sat.position.normalized();
  auto u = user_at(ground, sat);

  const CVec base = feed_channel_row(u, sat, ctx, LossSample{});
  u.noise_temperature *= 4.0;
  const CVec hot = feed_channel_row(u, sat, ctx, LossSample{});
  for (int n = 0; n < base.size(); ++n) CHECK(hot(n) == 0.5 * base(n));
}

TEST_CASE("terminals below the minimum elevation are rejected") {
  const auto sat = sat600();
  const LinkContext ctx = make_context();
  // A point 40 degrees of central angle away is far below the horizon mask.
  const Vec3 nadir = sat.position.normalized();
  const Vec3 east = sat.velocity.normalized();
  const Vec3 far_pos = kEarthRadiusM * (nadir * std::cos(0.7) + east * std::sin(0.7));
  CHECK_THROWS_AS(feed_channel_row(user_at(far_pos, sat), sat, ctx, LossSample{}),
                  std::domain_error);
}

TEST_CASE("system channel equals stacked per-user rows, serial and parallel") {
  const auto sat = sat600();
  const LinkContext ctx = make_context();

  SceneSnapshot scene;
  scene.sat = sat;
  scene.epoch = 0.0;
  RandomStream rng(3);
  for (int i = 0; i < 12; ++i) {
    const Vec2 uv(0.25 * (rng.uniform() - 0.5), 0.25 * (rng.uniform() - 0.5));
    auto u = user_at(geometry::uv_to_ground(uv, sat), sat);
    u.id = i;
    scene.users.push_back(u);
    LossSample loss;
    loss.shadow_db = rng.normal();
    scene.losses.push_back(loss);
  }

  const ChannelMatrix serial = build_system_channel(scene, ctx, Exec::Serial);
  const ChannelMatrix parallel = build_system_channel(scene, ctx, Exec::OpenMP);
  CHECK(serial.entries == parallel.entries);
  CHECK(serial.space == Space::Feed);
  CHECK(serial.noise_normalized);

  for (int i = 0; i < 12; ++i) {
    const CVec row = feed_channel_row(scene.users[i], sat, ctx, scene.losses[i]);
    CHECK((serial.entries.row(i).transpose() - row).norm() == 0.0);
  }

  // Permuting users permutes rows identically.
  SceneSnapshot permuted = scene;
  std::swap(permuted.users[2], permuted.users[7]);
  std::swap(permuted.losses[2], permuted.losses[7]);
  const ChannelMatrix shuffled = build_system_channel(permuted, ctx, Exec::Serial);
  CHECK((shuffled.entries.row(2) - serial.entries.row(7)).norm() == 0.0);
  CHECK((shuffled.entries.row(7) - serial.entries.row(2)).norm() == 0.0);
}

TEST_CASE("beam-space conversion matches the naive triple loop") {
  const auto sat = sat600();
  const LinkContext ctx = make_context();
  const auto lattice = geometry::build_beam_lattice(1, 0.2);
  const CMat b = antenna::beamforming_matrix(lattice, ctx.array);

  SceneSnapshot scene = single_user_scene(sat, geometry::uv_to_ground(Vec2(0.1, 0.05), sat));
  RandomStream rng(8);
  for (int i = 1; i < 5; ++i) {
    auto u = user_at(geometry::uv_to_ground(Vec2(0.3 * (rng.uniform() - 0.5),
                                                 0.3 * (rng.uniform() - 0.5)), sat), sat);
    u.id = i;
    scene.users.push_back(u);
    scene.losses.push_back(LossSample{});
  }

  const ChannelMatrix feed = build_system_channel(scene, ctx, Exec::Serial);
  const ChannelMatrix beam = to_beam_space(feed, b);
  CHECK(beam.space == Space::Beam);
  REQUIRE(beam.entries.rows() == feed.entries.rows());
  REQUIRE(beam.entries.cols() == b.cols());

  for (int i = 0; i < beam.entries.rows(); ++i) {
    for (int l = 0; l < beam.entries.cols(); ++l) {
      cplx acc = 0.0;
      for (int n = 0; n < feed.entries.cols(); ++n)
        acc += feed.entries(i, n) * b(n, l);
      CHECK(std::abs(beam.entries(i, l) - acc) <= 1e-12 * std::abs(acc) + 1e-15);
    }
    // Cauchy-Schwarz against the unit-norm beam columns.
    for (int l = 0; l < beam.entries.cols(); ++l)
      CHECK(std::abs(beam.entries(i, l)) <= feed.entries.row(i).norm() * (1 + 1e-12));
  }
}

TEST_CASE("identity beamforming leaves the channel unchanged") {
  const auto sat = sat600();
  const LinkContext ctx = make_context();
  SceneSnapshot scene = single_user_scene(sat, kEarthRadiusM * sat.position.normalized());
  const ChannelMatrix feed = build_system_channel(scene, ctx, Exec::Serial);
  const CMat identity = CMat::Identity(ctx.array.n_feeds(), ctx.array.n_feeds());
  const ChannelMatrix beam = to_beam_space(feed, identity);
  CHECK((beam.entries - feed.entries).norm() == 0.0);

  CHECK_THROWS_AS(to_beam_space(beam, identity), std::invalid_argument);
  CHECK_THROWS_AS(to_beam_space(feed, CMat::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("boresight user sums coherently into the boresight beam") {
  const auto sat = sat600();
  const LinkContext ctx = make_context();
  SceneSnapshot scene = single_user_scene(sat, kEarthRadiusM * sat.position.normalized());
  const ChannelMatrix feed = build_system_channel(scene, ctx, Exec::Serial);

  const auto lattice = geometry::build_beam_lattice(0, 0.1);
  const CMat b = antenna::beamforming_matrix(lattice, ctx.array);
  const ChannelMatrix beam = to_beam_space(feed, b);

  const double n_feeds = static_cast<double>(ctx.array.n_feeds());
  CHECK(std::abs(beam.entries(0, 0)) ==
        doctest::Approx(std::sqrt(n_feeds) * std::abs(feed.entries(0, 0))).epsilon(1e-12));
}

TEST_CASE("off-boresight users combine coherently into their own beam") {
  const auto sat = sat600();
  const LinkContext ctx = make_context(8, 8);
  const auto lattice = geometry::build_beam_lattice(1, 0.25);
  const CMat b = antenna::beamforming_matrix(lattice, ctx.array);

  for (int l = 0; l < lattice.n_beams(); ++l) {
    SceneSnapshot scene =
        single_user_scene(sat, geometry::uv_to_ground(lattice.centers[l], sat));
    const ChannelMatrix feed = build_system_channel(scene, ctx, Exec::Serial);
    const ChannelMatrix beam = to_beam_space(feed, b);

    // Unit-modulus per-feed phases times the matched steering vector sum to
    // sqrt(N_F) times the per-feed magnitude, and the own beam dominates.
    const double expected =
        std::sqrt(static_cast<double>(ctx.array.n_feeds())) *
        std::abs(feed.entries(0, 0));
    CHECK(std::abs(beam.entries(0, l)) == doctest::Approx(expected).epsilon(1e-9));
    for (int other = 0; other < lattice.n_beams(); ++other) {
      if (other != l)
        CHECK(std::abs(beam.entries(0, other)) < std::abs(beam.entries(0, l)));
    }
  }
}

TEST_CASE("beam-center row equals the row of a user exactly at the center") {
  const auto sat = sat600();
  LinkContext ctx = make_context();
  ctx.terminal.noise_temperature = 200.0;
  const Vec2 center(0.15, -0.1);

  const CVec approx = beam_center_channel_row(center, 200.0, sat, ctx);

  auto u = user_at(geometry::uv_to_ground(center, sat), sat);
  u.noise_temperature = 200.0;
  const CVec exact = feed_channel_row(u, sat, ctx, LossSample{});
  CHECK((approx - exact).norm() <= 1e-12 * exact.norm());
}

TEST_CASE("beam-center row at nadir carries the slant-range phase") {
  const auto sat = sat600();
  const LinkContext ctx = make_context();
  const CVec row = beam_center_channel_row(Vec2(0.0, 0.0), 290.0, sat, ctx);
  const double expected = std::remainder(-2.0 * kPi * 600e3 / kLambda, 2.0 * kPi);
  CHECK(std::abs(std::remainder(std::arg(row(0)) - expected, 2.0 * kPi)) < 1e-6);
}

TEST_CASE("scene evolution isolates the motion and loss sources") {
  const auto sat = sat600();
  const LinkContext ctx = make_context();
  const auto lattice = geometry::build_beam_lattice(1, 0.1);

  geometry::DropOptions options;
  options.density_per_km2 = 0.005;
  RandomStream drop_rng(21);
  SceneSnapshot scene;
  scene.sat = sat;
  scene.users = geometry::drop_users(lattice, sat, options, drop_rng);
  scene.losses.assign(scene.users.size(), LossSample{});
  scene.epoch = 0.0;

  SUBCASE("zero delay, pLOS, fixed users: identical scene") {
    geometry::DelayBudget budget;  // all zero
    RandomStream rng(1);
    const SceneSnapshot evolved =
        evolve_scene(scene, budget, Propagation::Plos, Environment::Suburban,
                     LossTable::ntn_suburban_s_band(), rng);
    CHECK(evolved.epoch == 0.0);
    CHECK(evolved.sat.position == scene.sat.position);
    for (size_t i = 0; i < scene.users.size(); ++i) {
      CHECK(evolved.users[i].position == scene.users[i].position);
      CHECK(evolved.losses[i].total_db() == 0.0);
    }
  }

  SUBCASE("pLOS fixed users: only the satellite differs") {
    const geometry::DelayBudget budget = geometry::compute_delay_budget(
        sat, scene.users, kEarthRadiusM * sat.position.normalized(), 1e-3,
        1e-3, ArchitectureMode::Cpc);
    RandomStream rng(2);
    const SceneSnapshot evolved =
        evolve_scene(scene, budget, Propagation::Plos, Environment::Suburban,
                     LossTable::ntn_suburban_s_band(), rng);
    CHECK(evolved.sat.position != scene.sat.position);
    CHECK(evolved.epoch == doctest::Approx(budget.delta_t));
    for (size_t i = 0; i < scene.users.size(); ++i) {
      CHECK(evolved.users[i].position == scene.users[i].position);
      CHECK(evolved.users[i].rx_boresight == scene.users[i].rx_boresight);
      CHECK(evolved.losses[i].total_db() == 0.0);
    }

    // Freezing the satellite reproduces the t0 channel bit-exactly.
    SceneSnapshot frozen = evolved;
    frozen.sat = scene.sat;
    const ChannelMatrix h0 = build_system_channel(scene, ctx, Exec::Serial);
    const ChannelMatrix h1 = build_system_channel(frozen, ctx, Exec::Serial);
    CHECK(h0.entries == h1.entries);
  }

  SUBCASE("public-safety users displace by speed times delta_t") {
    SceneSnapshot moving = scene;
    const double speed = 250.0 / 3.6;
    for (auto& u : moving.users) {
      u.scenario = Scenario::PublicSafety;
      u.velocity = speed * u.position.normalized().cross(Vec3::UnitZ()).normalized();
    }
    geometry::DelayBudget budget;
    budget.t_p = 16.6464e-3;
    budget.delta_t = 16.6464e-3;
    RandomStream rng(3);
    const SceneSnapshot evolved =
        evolve_scene(moving, budget, Propagation::Plos, Environment::Suburban,
                     LossTable::ntn_suburban_s_band(), rng);
    for (size_t i = 0; i < moving.users.size(); ++i) {
      const double displacement =
          (evolved.users[i].position - moving.users[i].position).norm();
      CHECK(displacement == doctest::Approx(1.156).epsilon(1e-3));
    }
  }

  SUBCASE("NLOS losses are re-drawn per user") {
    const geometry::DelayBudget budget = geometry::compute_delay_budget(
        sat, scene.users, kEarthRadiusM * sat.position.normalized(), 1e-3,
        1e-3, ArchitectureMode::Cpc);
    RandomStream rng(4);
    const SceneSnapshot evolved =
        evolve_scene(scene, budget, Propagation::Nlos, Environment::Suburban,
                     LossTable::ntn_suburban_s_band(), rng);
    RandomStream rng2(4);
    const SceneSnapshot replay =
        evolve_scene(scene, budget, Propagation::Nlos, Environment::Suburban,
                     LossTable::ntn_suburban_s_band(), rng2);
    for (size_t i = 0; i < scene.users.size(); ++i) {
      CHECK(evolved.losses[i].shadow_db != 0.0);
      CHECK(evolved.losses[i].shadow_db == replay.losses[i].shadow_db);
      CHECK(evolved.losses[i].clutter_db > 10.0);
    }
  }
}
