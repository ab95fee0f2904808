// SPDX-License-Identifier: Apache-2.0
#ifndef LEOSIM_TYPES_HPP
#define LEOSIM_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace leosim {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using cplx = std::complex<double>;

enum class Space { Feed, Beam };
enum class TerminalClass { Vsat, Handheld };
enum class Scenario { Fixed, PublicSafety };
enum class Propagation { Plos, Nlos };
enum class Environment { Suburban };
enum class Scheme { Mb, SsMmse, Mmse, None };
enum class Normalization { Spc, Pac, Mpc, Raw };
enum class ArchitectureMode { Cpc, Dpc };

std::string to_string(Space v);
std::string to_string(TerminalClass v);
std::string to_string(Scenario v);
std::string to_string(Propagation v);
std::string to_string(Environment v);
std::string to_string(Scheme v);
std::string to_string(Normalization v);
std::string to_string(ArchitectureMode v);

// Parsers throw std::invalid_argument naming the offending value.
Space space_from_string(const std::string& s);
TerminalClass terminal_from_string(const std::string& s);
Scenario scenario_from_string(const std::string& s);
Propagation propagation_from_string(const std::string& s);
Environment environment_from_string(const std::string& s);
Scheme scheme_from_string(const std::string& s);
Normalization normalization_from_string(const std::string& s);
ArchitectureMode architecture_from_string(const std::string& s);

} // namespace leosim

#endif // LEOSIM_TYPES_HPP
