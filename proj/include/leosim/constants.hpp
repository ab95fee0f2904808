// SPDX-License-Identifier: Apache-2.0
#ifndef LEOSIM_CONSTANTS_HPP
#define LEOSIM_CONSTANTS_HPP

#include <cmath>

namespace leosim {

// Spherical Earth model (mean radius) and Keplerian gravitational parameter.
inline constexpr double kEarthRadiusM = 6371.0e3;
inline constexpr double kEarthMuM3S2 = 3.986004418e14;

inline constexpr double kSpeedOfLightMS = 299792458.0;
inline constexpr double kBoltzmannJK = 1.380649e-23;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / kPi); }

inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin2db(double lin) { return 10.0 * std::log10(lin); }

} // namespace leosim

#endif // LEOSIM_CONSTANTS_HPP
