// SPDX-License-Identifier: Apache-2.0
#include "leosim/types.hpp"

namespace leosim {

namespace {

[[noreturn]] void bad_enum(const char* what, const std::string& s) {
  throw std::invalid_argument(std::string("unknown ") + what + ": '" + s + "'");
}

} // namespace

std::string to_string(Space v) { return v == Space::Feed ? "feed" : "beam"; }

std::string to_string(TerminalClass v) {
  return v == TerminalClass::Vsat ? "vsat" : "handheld";
}

std::string to_string(Scenario v) {
  return v == Scenario::Fixed ? "fixed" : "public_safety";
}

std::string to_string(Propagation v) {
  return v == Propagation::Plos ? "plos" : "nlos";
}

std::string to_string(Environment v) {
  (void)v;
  return "suburban";
}

std::string to_string(Scheme v) {
  switch (v) {
    case Scheme::Mb: return "mb";
    case Scheme::SsMmse: return "ss-mmse";
    case Scheme::Mmse: return "mmse";
    case Scheme::None: return "none";
  }
  return "?";
}

std::string to_string(Normalization v) {
  switch (v) {
    case Normalization::Spc: return "spc";
    case Normalization::Pac: return "pac";
    case Normalization::Mpc: return "mpc";
    case Normalization::Raw: return "raw";
  }
  return "?";
}

std::string to_string(ArchitectureMode v) {
  return v == ArchitectureMode::Cpc ? "cpc" : "dpc";
}

Space space_from_string(const std::string& s) {
  if (s == "feed") return Space::Feed;
  if (s == "beam") return Space::Beam;
  bad_enum("space", s);
}

TerminalClass terminal_from_string(const std::string& s) {
  if (s == "vsat") return TerminalClass::Vsat;
  if (s == "handheld" || s == "hh") return TerminalClass::Handheld;
  bad_enum("terminal", s);
}

Scenario scenario_from_string(const std::string& s) {
  if (s == "fixed") return Scenario::Fixed;
  if (s == "public_safety" || s == "public-safety") return Scenario::PublicSafety;
  bad_enum("scenario", s);
}

Propagation propagation_from_string(const std::string& s) {
  if (s == "plos") return Propagation::Plos;
  if (s == "nlos") return Propagation::Nlos;
  bad_enum("propagation", s);
}

Environment environment_from_string(const std::string& s) {
  if (s == "suburban") return Environment::Suburban;
  bad_enum("environment", s);
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "mb") return Scheme::Mb;
  if (s == "ss-mmse" || s == "ss_mmse") return Scheme::SsMmse;
  if (s == "mmse") return Scheme::Mmse;
  if (s == "none") return Scheme::None;
  bad_enum("scheme", s);
}

Normalization normalization_from_string(const std::string& s) {
  if (s == "spc") return Normalization::Spc;
  if (s == "pac") return Normalization::Pac;
  if (s == "mpc") return Normalization::Mpc;
  if (s == "raw") return Normalization::Raw;
  bad_enum("normalization", s);
}

ArchitectureMode architecture_from_string(const std::string& s) {
  if (s == "cpc") return ArchitectureMode::Cpc;
  if (s == "dpc") return ArchitectureMode::Dpc;
  bad_enum("architecture", s);
}

} // namespace leosim
