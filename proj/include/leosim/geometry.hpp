// SPDX-License-Identifier: Apache-2.0
#ifndef LEOSIM_GEOMETRY_HPP
#define LEOSIM_GEOMETRY_HPP

#include <vector>

#include "leosim/rng.hpp"
#include "leosim/types.hpp"

namespace leosim::geometry {

/**
 * Satellite state on a circular Keplerian orbit around a spherical Earth.
 * Positions and velocities are ECEF meters; Earth rotation is neglected
 * (sub-beam-scale over the delay budgets this simulator covers).
 */
struct SatelliteState {
  double epoch = 0.0;       // seconds
  Vec3 position;            // ECEF meters
  Vec3 velocity;            // ECEF meters/second
  double altitude = 0.0;    // meters above the spherical Earth
  Vec3 boresight;           // unit vector, nadir-pointing

  double orbit_radius() const { return position.norm(); }
};

struct UserTerminal {
  int id = -1;
  Vec3 position;            // ECEF meters, on the sphere
  Vec3 velocity;            // ECEF meters/second, tangent to the sphere
  TerminalClass terminal_class = TerminalClass::Vsat;
  Scenario scenario = Scenario::Fixed;
  double noise_temperature = 290.0;  // kelvin
  Vec3 rx_boresight;        // unit vector, receive antenna pointing
};

/// Hexagonal lattice of beam centers in uv-space, centered at boresight.
struct BeamLattice {
  std::vector<Vec2> centers;
  double spacing = 0.0;     // uv distance between adjacent centers

  int n_beams() const { return static_cast<int>(centers.size()); }
};

struct DelayBudget {
  double t_ut_max = 0.0;    // max user propagation delay, seconds
  double t_feeder = 0.0;    // feeder-link delay, seconds
  double t_p = 0.0;         // precoder processing delay, seconds
  double t_ad = 0.0;        // additional delays, seconds
  double delta_t = 0.0;     // estimation-to-transmission latency, seconds
  ArchitectureMode mode = ArchitectureMode::Cpc;
};

/// Orthonormal satellite antenna frame: z = boresight (nadir), x = along-track.
struct AntennaFrame {
  Vec3 x;
  Vec3 y;
  Vec3 z;
};

AntennaFrame antenna_frame(const SatelliteState& sat);

/// Circular equatorial-plane orbit at the given altitude, nadir boresight.
SatelliteState make_circular_orbit(double altitude_m, double epoch = 0.0);

/// Advance along the circular orbit by dt seconds. Rejects dt < 0.
SatelliteState propagate_satellite(const SatelliteState& state, double dt);

double slant_range(const Vec3& user_position, const Vec3& sat_position);

/// Elevation of the satellite above the user's local horizon, degrees.
double elevation_deg(const Vec3& user_position, const Vec3& sat_position);

/**
 * Direction cosines (u, v) of a target seen from the satellite antenna frame.
 * Throws if the target is behind the array plane (w <= 0).
 */
Vec2 uv_coordinates(const Vec3& target_position, const SatelliteState& sat);

/**
 * Ground point hit by the ray leaving the satellite toward uv direction (u, v).
 * Throws if |uv| > 1 or the ray misses the Earth.
 */
Vec3 uv_to_ground(const Vec2& uv, const SatelliteState& sat);

/// Hexagonal beam lattice with 1 + 3 n (n + 1) centers.
BeamLattice build_beam_lattice(int n_rings, double spacing);

/// Index of the uv-closest beam center; ties break to the lowest index.
int closest_beam(const Vec2& uv, const BeamLattice& lattice);

struct DropOptions {
  double density_per_km2 = 0.5;
  TerminalClass terminal_class = TerminalClass::Vsat;
  Scenario scenario = Scenario::Fixed;
  double speed_mps = 0.0;           // per-user speed for moving scenarios
  double noise_temperature = 290.0;
  double min_elevation_deg = 10.0;
  double footprint_overlap = 1.15;  // beam cap radius inflation factor
};

/**
 * Uniformly distributed terminals over the beam-lattice footprint (union of
 * spherical caps around the beam-center ground projections). Beams left empty
 * by the draw are re-seeded with one uniform user so every beam can always be
 * scheduled. Expected count = density x footprint area.
 */
std::vector<UserTerminal> drop_users(const BeamLattice& lattice,
                                     const SatelliteState& sat,
                                     const DropOptions& options,
                                     RandomStream& rng);

/**
 * Displace a terminal by |velocity| * dt along a heading drawn uniformly at
 * the start of the interval. Motion follows the great circle so the terminal
 * stays on the sphere; fixed terminals are returned unchanged.
 */
UserTerminal move_user(const UserTerminal& user, double dt, RandomStream& rng);

DelayBudget compute_delay_budget(const SatelliteState& sat,
                                 const std::vector<UserTerminal>& users,
                                 const Vec3& gw_position, double t_p,
                                 double t_ad, ArchitectureMode mode);

/// Ground cap radius (meters of arc) used by the drop footprint for one beam.
double beam_cap_radius_m(const BeamLattice& lattice, int beam,
                         const SatelliteState& sat, double overlap_factor);

/// Area of a spherical cap with the given arc radius, km^2.
double spherical_cap_area_km2(double arc_radius_m);

} // namespace leosim::geometry

#endif // LEOSIM_GEOMETRY_HPP
