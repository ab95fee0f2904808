// SPDX-License-Identifier: Apache-2.0
#include "leosim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "leosim/constants.hpp"

namespace leosim::geometry {

namespace {

// Rodrigues rotation of v about unit axis k by angle a.
Vec3 rotate_about(const Vec3& v, const Vec3& k, double a) {
  const double c = std::cos(a);
  const double s = std::sin(a);
  return v * c + k.cross(v) * s + k * (k.dot(v) * (1.0 - c));
}

// Any unit vector orthogonal to the given unit axis.
Vec3 orthogonal_unit(const Vec3& axis) {
  const Vec3 probe = std::abs(axis.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return axis.cross(probe).normalized();
}

// Uniform point on the spherical cap of angular radius alpha about axis.
Vec3 uniform_cap_point(const Vec3& axis, double alpha, RandomStream& rng) {
  const double cos_theta = 1.0 - rng.uniform() * (1.0 - std::cos(alpha));
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  const double phi = 2.0 * kPi * rng.uniform();
  const Vec3 t1 = orthogonal_unit(axis);
  const Vec3 t2 = axis.cross(t1);
  const Vec3 dir =
      axis * cos_theta + (t1 * std::cos(phi) + t2 * std::sin(phi)) * sin_theta;
  return dir * kEarthRadiusM;
}

} // namespace

AntennaFrame antenna_frame(const SatelliteState& sat) {
  AntennaFrame f;
  f.z = sat.boresight.normalized();
  Vec3 along = sat.velocity - sat.velocity.dot(f.z) * f.z;
  if (along.norm() < 1e-9) along = orthogonal_unit(f.z);
  f.x = along.normalized();
  f.y = f.z.cross(f.x);
  return f;
}

SatelliteState make_circular_orbit(double altitude_m, double epoch) {
  if (altitude_m <= 0.0) throw std::invalid_argument("altitude must be > 0");
  const double a = kEarthRadiusM + altitude_m;
  SatelliteState s;
  s.epoch = epoch;
  s.position = Vec3(a, 0.0, 0.0);
  s.velocity = Vec3(0.0, std::sqrt(kEarthMuM3S2 / a), 0.0);
  s.altitude = altitude_m;
  s.boresight = Vec3(-1.0, 0.0, 0.0);
  return s;
}

SatelliteState propagate_satellite(const SatelliteState& state, double dt) {
  if (dt < 0.0) throw std::invalid_argument("propagation dt must be >= 0");
  if (dt == 0.0) return state;

  const double a = state.orbit_radius();
  const double omega = std::sqrt(kEarthMuM3S2 / (a * a * a));
  const Vec3 normal = state.position.cross(state.velocity).normalized();
  const double angle = omega * dt;

  SatelliteState out = state;
  out.epoch = state.epoch + dt;
  out.position = rotate_about(state.position, normal, angle);
  out.velocity = rotate_about(state.velocity, normal, angle);
  out.boresight = -out.position.normalized();
  return out;
}

double slant_range(const Vec3& user_position, const Vec3& sat_position) {
  return (sat_position - user_position).norm();
}

double elevation_deg(const Vec3& user_position, const Vec3& sat_position) {
  const Vec3 up = user_position.normalized();
  const Vec3 to_sat = (sat_position - user_position).normalized();
  return rad2deg(std::asin(std::clamp(up.dot(to_sat), -1.0, 1.0)));
}

Vec2 uv_coordinates(const Vec3& target_position, const SatelliteState& sat) {
  const AntennaFrame f = antenna_frame(sat);
  const Vec3 dir = (target_position - sat.position).normalized();
  if (dir.dot(f.z) < 0.0)
    throw std::domain_error("target is behind the satellite array plane");
  return Vec2(dir.dot(f.x), dir.dot(f.y));
}

Vec3 uv_to_ground(const Vec2& uv, const SatelliteState& sat) {
  const double uv2 = uv.squaredNorm();
  if (uv2 > 1.0) throw std::domain_error("uv direction outside visible space");
  const AntennaFrame f = antenna_frame(sat);
  const Vec3 dir = f.x * uv.x() + f.y * uv.y() + f.z * std::sqrt(1.0 - uv2);

  const double b = sat.position.dot(dir);
  const double c = sat.position.squaredNorm() - kEarthRadiusM * kEarthRadiusM;
  const double disc = b * b - c;
  if (disc < 0.0) throw std::domain_error("beam direction misses the Earth");
  const double t = -b - std::sqrt(disc);
  if (t <= 0.0) throw std::domain_error("beam direction points away from Earth");
  return sat.position + t * dir;
}

BeamLattice build_beam_lattice(int n_rings, double spacing) {
  if (n_rings < 0) throw std::invalid_argument("n_rings must be >= 0");
  if (spacing <= 0.0) throw std::invalid_argument("lattice spacing must be > 0");

  // Axial hex coordinates: basis (1,0) and (1/2, sqrt(3)/2).
  const Vec2 a1 = spacing * Vec2(1.0, 0.0);
  const Vec2 a2 = spacing * Vec2(0.5, std::sqrt(3.0) / 2.0);

  BeamLattice lattice;
  lattice.spacing = spacing;
  lattice.centers.push_back(Vec2(0.0, 0.0));
  for (int ring = 1; ring <= n_rings; ++ring) {
    // Start at the ring corner (ring, -ring) in axial coordinates and walk
    // the six edges.
    int q = ring;
    int r = -ring;
    static const int steps[6][2] = {{0, 1},  {-1, 1}, {-1, 0},
                                    {0, -1}, {1, -1}, {1, 0}};
    for (const auto& step : steps) {
      for (int i = 0; i < ring; ++i) {
        lattice.centers.push_back(q * a1 + r * a2);
        q += step[0];
        r += step[1];
      }
    }
  }
  for (const Vec2& c : lattice.centers) {
    if (c.norm() > 1.0)
      throw std::domain_error("beam lattice extends outside visible uv space");
  }
  return lattice;
}

int closest_beam(const Vec2& uv, const BeamLattice& lattice) {
  int best = 0;
  double best_d2 = (uv - lattice.centers[0]).squaredNorm();
  for (int i = 1; i < lattice.n_beams(); ++i) {
    const double d2 = (uv - lattice.centers[i]).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

double spherical_cap_area_km2(double arc_radius_m) {
  const double alpha = arc_radius_m / kEarthRadiusM;
  const double area_m2 =
      2.0 * kPi * kEarthRadiusM * kEarthRadiusM * (1.0 - std::cos(alpha));
  return area_m2 * 1e-6;
}

double beam_cap_radius_m(const BeamLattice& lattice, int beam,
                         const SatelliteState& sat, double overlap_factor) {
  const Vec2 c = lattice.centers.at(beam);
  const Vec3 center_ground = uv_to_ground(c, sat);
  const Vec3 center_dir = center_ground.normalized();

  // Probe the four uv-axis neighbours; footprints stretch off-nadir, so take
  // the largest half ground spacing.
  double max_half = 0.0;
  const Vec2 probes[4] = {Vec2(lattice.spacing, 0.0), Vec2(-lattice.spacing, 0.0),
                          Vec2(0.0, lattice.spacing), Vec2(0.0, -lattice.spacing)};
  for (const Vec2& p : probes) {
    const Vec2 n = c + p;
    if (n.norm() >= 1.0) continue;
    try {
      const Vec3 g = uv_to_ground(n, sat);
      const double arc = kEarthRadiusM *
                         std::acos(std::clamp(center_dir.dot(g.normalized()),
                                              -1.0, 1.0));
      max_half = std::max(max_half, 0.5 * arc);
    } catch (const std::domain_error&) {
      // Neighbour probe misses the Earth; skip it.
    }
  }
  if (max_half <= 0.0)
    throw std::domain_error("degenerate beam footprint (zero ground spacing)");
  return overlap_factor * max_half;
}

std::vector<UserTerminal> drop_users(const BeamLattice& lattice,
                                     const SatelliteState& sat,
                                     const DropOptions& options,
                                     RandomStream& rng) {
  if (options.density_per_km2 <= 0.0)
    throw std::invalid_argument("user density must be > 0");
  if (lattice.n_beams() == 0)
    throw std::invalid_argument("beam lattice is empty");

  const int n_beams = lattice.n_beams();
  std::vector<Vec3> cap_axes(n_beams);
  std::vector<double> cap_alphas(n_beams);
  double max_extent = 0.0;

  const Vec3 nadir_dir = sat.position.normalized();
  for (int b = 0; b < n_beams; ++b) {
    const Vec3 g = uv_to_ground(lattice.centers[b], sat);
    cap_axes[b] = g.normalized();
    cap_alphas[b] =
        beam_cap_radius_m(lattice, b, sat, options.footprint_overlap) /
        kEarthRadiusM;
    const double center_angle =
        std::acos(std::clamp(nadir_dir.dot(cap_axes[b]), -1.0, 1.0));
    max_extent = std::max(max_extent, center_angle + cap_alphas[b]);
  }
  if (max_extent <= 0.0) throw std::domain_error("zero-area footprint");

  const auto in_footprint = [&](const Vec3& p) {
    const Vec3 dir = p.normalized();
    for (int b = 0; b < n_beams; ++b) {
      const double ang =
          std::acos(std::clamp(cap_axes[b].dot(dir), -1.0, 1.0));
      if (ang <= cap_alphas[b]) return true;
    }
    return false;
  };

  // Initial headings come from per-id substreams so that the candidate
  // position sequence is identical whether or not the scenario draws them;
  // matched-seed campaigns rely on fixed and moving cells sharing positions.
  const RandomStream heading_root = rng.substream(0x68656164696e67ull);
  const auto make_user = [&](int id, const Vec3& pos) {
    UserTerminal u;
    u.id = id;
    u.position = pos;
    u.terminal_class = options.terminal_class;
    u.scenario = options.scenario;
    u.noise_temperature = options.noise_temperature;
    u.rx_boresight = (sat.position - pos).normalized();
    if (options.scenario == Scenario::PublicSafety && options.speed_mps > 0.0) {
      RandomStream hs = heading_root.substream(static_cast<uint64_t>(id));
      const double heading = 2.0 * kPi * hs.uniform();
      const Vec3 up = pos.normalized();
      const Vec3 east = orthogonal_unit(up);
      const Vec3 north = up.cross(east);
      u.velocity =
          options.speed_mps * (east * std::cos(heading) + north * std::sin(heading));
    } else {
      u.velocity = Vec3::Zero();
    }
    return u;
  };

  // Poisson candidates over the bounding cap, thinned to the footprint union.
  const double bound_area_km2 =
      spherical_cap_area_km2(max_extent * kEarthRadiusM);
  const long n_candidates = rng.poisson(options.density_per_km2 * bound_area_km2);

  std::vector<UserTerminal> users;
  for (long i = 0; i < n_candidates; ++i) {
    const Vec3 p = uniform_cap_point(nadir_dir, max_extent, rng);
    if (!in_footprint(p)) continue;
    if (elevation_deg(p, sat.position) < options.min_elevation_deg) continue;
    users.push_back(make_user(static_cast<int>(users.size()), p));
  }

  // Guarantee at least one user per beam so the per-beam scheduler is total.
  std::vector<bool> beam_has_user(n_beams, false);
  for (const UserTerminal& u : users) {
    beam_has_user[closest_beam(uv_coordinates(u.position, sat), lattice)] = true;
  }
  for (int b = 0; b < n_beams; ++b) {
    if (beam_has_user[b]) continue;
    bool seeded = false;
    for (int attempt = 0; attempt < 10000 && !seeded; ++attempt) {
      const Vec3 p = uniform_cap_point(cap_axes[b], cap_alphas[b], rng);
      if (elevation_deg(p, sat.position) < options.min_elevation_deg) continue;
      if (closest_beam(uv_coordinates(p, sat), lattice) != b) continue;
      users.push_back(make_user(static_cast<int>(users.size()), p));
      seeded = true;
    }
    if (!seeded)
      throw std::runtime_error("failed to seed an empty beam footprint");
  }
  return users;
}

UserTerminal move_user(const UserTerminal& user, double dt, RandomStream& rng) {
  if (dt < 0.0) throw std::invalid_argument("move dt must be >= 0");
  const double speed = user.velocity.norm();
  if (speed == 0.0 || dt == 0.0) return user;

  // Fresh heading at the start of the interval, held constant over dt.
  const double heading = 2.0 * kPi * rng.uniform();
  const Vec3 up = user.position.normalized();
  const Vec3 east = orthogonal_unit(up);
  const Vec3 north = up.cross(east);
  const Vec3 dir = east * std::cos(heading) + north * std::sin(heading);

  // Great-circle step of arc length speed * dt keeps the user on the sphere.
  const double arc = speed * dt / kEarthRadiusM;
  const Vec3 axis = up.cross(dir).normalized();

  UserTerminal out = user;
  out.position = rotate_about(user.position, axis, arc);
  out.velocity = speed * rotate_about(dir, axis, arc);
  return out;
}

DelayBudget compute_delay_budget(const SatelliteState& sat,
                                 const std::vector<UserTerminal>& users,
                                 const Vec3& gw_position, double t_p,
                                 double t_ad, ArchitectureMode mode) {
  if (users.empty()) throw std::invalid_argument("delay budget needs users");
  if (t_p < 0.0 || t_ad < 0.0)
    throw std::invalid_argument("delay components must be >= 0");

  double max_range = 0.0;
  for (const UserTerminal& u : users)
    max_range = std::max(max_range, slant_range(u.position, sat.position));

  DelayBudget b;
  b.t_ut_max = max_range / kSpeedOfLightMS;
  b.t_feeder = slant_range(gw_position, sat.position) / kSpeedOfLightMS;
  b.t_p = t_p;
  b.t_ad = t_ad;
  b.delta_t = b.t_ut_max + 2.0 * b.t_feeder + b.t_p + b.t_ad;
  b.mode = mode;
  return b;
}

} // namespace leosim::geometry
