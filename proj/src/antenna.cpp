// SPDX-License-Identifier: Apache-2.0
#include "leosim/antenna.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "leosim/constants.hpp"

namespace leosim::antenna {

double ArrayGeometry::wavenumber() const { return 2.0 * kPi / wavelength; }

ArrayGeometry make_planar_array(int nx, int ny, double spacing_wavelengths,
                                double wavelength) {
  if (nx <= 0 || ny <= 0) throw std::invalid_argument("array size must be > 0");
  if (spacing_wavelengths <= 0.0 || wavelength <= 0.0)
    throw std::invalid_argument("array spacing and wavelength must be > 0");

  ArrayGeometry array;
  array.wavelength = wavelength;
  array.element_spacing = spacing_wavelengths * wavelength;
  array.element_positions.reserve(static_cast<size_t>(nx) * ny);
  const double ox = 0.5 * (nx - 1);
  const double oy = 0.5 * (ny - 1);
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      array.element_positions.emplace_back((ix - ox) * array.element_spacing,
                                           (iy - oy) * array.element_spacing,
                                           0.0);
    }
  }
  return array;
}

IsotropicPattern::IsotropicPattern(double gain_dbi)
    : amp_(std::sqrt(db2lin(gain_dbi))) {}

double IsotropicPattern::amplitude(double) const { return amp_; }

CosQPattern::CosQPattern(double gain_dbi) {
  // Hemispherical cos^p power pattern has directivity 2 (p + 1); amplitude
  // exponent is half the power exponent.
  const double d_lin = db2lin(gain_dbi);
  if (d_lin < 2.0)
    throw std::invalid_argument("cos^q element gain must be >= 3 dBi");
  peak_amp_ = std::sqrt(d_lin);
  q_ = 0.5 * (d_lin / 2.0 - 1.0);
}

double CosQPattern::amplitude(double theta) const {
  if (theta >= kPi / 2.0) return 0.0;
  return peak_amp_ * std::pow(std::cos(theta), q_);
}

ParabolicPattern::ParabolicPattern(double gain_dbi, double aperture_efficiency) {
  const double g_lin = db2lin(gain_dbi);
  peak_amp_ = std::sqrt(g_lin);
  // G = eta (pi D / lambda)^2, so ka = pi D / lambda = sqrt(G / eta).
  ka_ = std::sqrt(g_lin / aperture_efficiency);
}

double ParabolicPattern::amplitude(double theta) const {
  const double x = ka_ * std::sin(std::min(theta, kPi / 2.0));
  if (x < 1e-9) return peak_amp_;
  return peak_amp_ * std::abs(2.0 * std::cyl_bessel_j(1, x) / x);
}

TablePattern::TablePattern(std::vector<double> angles_deg,
                           std::vector<double> gains_db)
    : angles_deg_(std::move(angles_deg)), gains_db_(std::move(gains_db)) {
  if (angles_deg_.size() != gains_db_.size() || angles_deg_.empty())
    throw std::invalid_argument("pattern table needs matching, nonempty columns");
  for (size_t i = 1; i < angles_deg_.size(); ++i) {
    if (angles_deg_[i] <= angles_deg_[i - 1])
      throw std::invalid_argument("pattern table angles must be increasing");
  }
}

TablePattern TablePattern::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pattern table: " + path);
  std::vector<double> angles, gains;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double a, g;
    if (row >> a >> g) {
      angles.push_back(a);
      gains.push_back(g);
    }
  }
  return TablePattern(std::move(angles), std::move(gains));
}

double TablePattern::amplitude(double theta) const {
  const double deg = rad2deg(theta);
  if (deg <= angles_deg_.front()) return std::sqrt(db2lin(gains_db_.front()));
  if (deg >= angles_deg_.back()) return std::sqrt(db2lin(gains_db_.back()));
  size_t hi = 1;
  while (angles_deg_[hi] < deg) ++hi;
  const double t =
      (deg - angles_deg_[hi - 1]) / (angles_deg_[hi] - angles_deg_[hi - 1]);
  const double g = gains_db_[hi - 1] + t * (gains_db_[hi] - gains_db_[hi - 1]);
  return std::sqrt(db2lin(g));
}

CVec beamforming_vector(const Vec2& c, const ArrayGeometry& array) {
  if (c.norm() > 1.0)
    throw std::domain_error("steering direction outside visible uv space");
  const int n = array.n_feeds();
  const double k0 = array.wavenumber();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const Vec3 c3(c.x(), c.y(), 0.0);

  CVec b(n);
  for (int i = 0; i < n; ++i) {
    const double phase = -k0 * array.element_positions[i].dot(c3);
    b(i) = scale * cplx(std::cos(phase), std::sin(phase));
  }
  return b;
}

CMat beamforming_matrix(const geometry::BeamLattice& lattice,
                        const ArrayGeometry& array) {
  if (lattice.n_beams() == 0) throw std::invalid_argument("empty beam lattice");
  CMat b(array.n_feeds(), lattice.n_beams());
  for (int l = 0; l < lattice.n_beams(); ++l)
    b.col(l) = beamforming_vector(lattice.centers[l], array);
  return b;
}

cplx tx_feed_gain(int feed, const Vec2& direction, const ArrayGeometry& array,
                  const Pattern& element) {
  const double uv2 = direction.squaredNorm();
  if (uv2 > 1.0)
    throw std::domain_error("tx direction outside visible uv space");
  const double w = std::sqrt(1.0 - uv2);
  const double theta = std::acos(std::min(1.0, w));
  const double amp = element.amplitude(theta);

  // Plane-wave phase advance of the element relative to the array center;
  // the conjugate of the steering phase, so that channel-times-beamforming
  // products combine coherently at the steered direction.
  const Vec3 dir3(direction.x(), direction.y(), 0.0);
  const double phase =
      array.wavenumber() * array.element_positions.at(feed).dot(dir3);
  return amp * cplx(std::cos(phase), std::sin(phase));
}

cplx rx_gain(const TerminalRadioProfile& profile, double off_boresight) {
  if (off_boresight < 0.0 || off_boresight > kPi)
    throw std::domain_error("off-boresight angle outside [0, pi]");
  return cplx(profile.pattern->amplitude(off_boresight), 0.0);
}

} // namespace leosim::antenna
