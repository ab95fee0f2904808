// SPDX-License-Identifier: Apache-2.0
#ifndef LEOSIM_ANTENNA_HPP
#define LEOSIM_ANTENNA_HPP

#include <memory>
#include <string>
#include <vector>

#include "leosim/geometry.hpp"
#include "leosim/types.hpp"

namespace leosim::antenna {

/// Planar array in the antenna frame; origin at the array centroid.
struct ArrayGeometry {
  std::vector<Vec3> element_positions;  // meters
  double element_spacing = 0.0;         // meters
  double wavelength = 0.0;              // meters

  int n_feeds() const { return static_cast<int>(element_positions.size()); }
  double wavenumber() const;
};

/// nx-by-ny square-lattice planar array, spacing given in wavelengths.
ArrayGeometry make_planar_array(int nx, int ny, double spacing_wavelengths,
                                double wavelength);

/**
 * Amplitude pattern versus off-boresight angle. Implementations are pure and
 * immutable; theta is in radians from boresight.
 */
class Pattern {
 public:
  virtual ~Pattern() = default;
  virtual double amplitude(double theta) const = 0;
};

/// Flat pattern with the given peak gain.
class IsotropicPattern final : public Pattern {
 public:
  explicit IsotropicPattern(double gain_dbi = 0.0);
  double amplitude(double theta) const override;

 private:
  double amp_;
};

/**
 * cos^q amplitude taper; q is derived from the requested element gain so the
 * pattern integrates to the right directivity over the forward hemisphere.
 */
class CosQPattern final : public Pattern {
 public:
  explicit CosQPattern(double gain_dbi);
  double amplitude(double theta) const override;
  double exponent() const { return q_; }

 private:
  double peak_amp_;
  double q_;
};

/// Circular-aperture (2 J1(x)/x) pattern for directive reflector terminals.
/// The beamwidth follows from the gain: k a = sqrt(G / efficiency).
class ParabolicPattern final : public Pattern {
 public:
  explicit ParabolicPattern(double gain_dbi, double aperture_efficiency = 0.65);
  double amplitude(double theta) const override;

 private:
  double peak_amp_;
  double ka_;  // wavenumber times aperture radius
};

/**
 * Pattern sampled from a plain-text table of "angle_deg gain_db" rows.
 * Linear interpolation in dB between rows, clamped at the ends.
 */
class TablePattern final : public Pattern {
 public:
  static TablePattern load(const std::string& path);
  TablePattern(std::vector<double> angles_deg, std::vector<double> gains_db);
  double amplitude(double theta) const override;

 private:
  std::vector<double> angles_deg_;
  std::vector<double> gains_db_;
};

struct TerminalRadioProfile {
  TerminalClass terminal_class = TerminalClass::Vsat;
  double peak_gain_dbi = 0.0;
  double noise_temperature = 290.0;  // kelvin
  std::shared_ptr<const Pattern> pattern;
};

/// Eq.-style steering vector toward the uv direction c; unit Euclidean norm.
CVec beamforming_vector(const Vec2& c, const ArrayGeometry& array);

/// N_F x N_B matrix whose columns steer toward each lattice beam center.
CMat beamforming_matrix(const geometry::BeamLattice& lattice,
                        const ArrayGeometry& array);

/**
 * Complex transmit gain of one feed toward a uv direction: element amplitude
 * times the per-element plane-wave phase (the conjugate of the steering
 * phase). All array geometry phase lives here; the propagation term carries
 * only the common slant-range phase.
 */
cplx tx_feed_gain(int feed, const Vec2& direction, const ArrayGeometry& array,
                  const Pattern& element);

/// Complex receive gain at the given off-boresight angle (radians).
cplx rx_gain(const TerminalRadioProfile& profile, double off_boresight);

} // namespace leosim::antenna

#endif // LEOSIM_ANTENNA_HPP
