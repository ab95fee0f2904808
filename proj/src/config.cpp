// SPDX-License-Identifier: Apache-2.0
#include "leosim/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "leosim/constants.hpp"

namespace leosim::config {

double CampaignConfig::wavelength() const {
  return kSpeedOfLightMS / (carrier_ghz * 1e9);
}

double CampaignConfig::total_power_w(double power_density) const {
  return db2lin(power_density + 10.0 * std::log10(bandwidth_mhz));
}

void CampaignConfig::validate() const {
  const auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
  };
  // Empty axis lists are allowed and yield an empty experiment matrix.
  for (Normalization n : normalizations)
    require(n != Normalization::Raw,
            "normalization 'raw' is not a campaign normalization");
  require(iterations >= 1, "iterations must be >= 1 (got " +
                               std::to_string(iterations) + ")");
  require(threads >= 0, "threads must be >= 0");
  require(altitude_km > 0.0, "altitude_km must be > 0");
  require(n_rings >= 0, "n_rings must be >= 0");
  require(beam_spacing_uv > 0.0, "beam_spacing_uv must be > 0");
  require(user_density_per_km2 > 0.0, "user_density_per_km2 must be > 0");
  require(min_elevation_deg >= 0.0 && min_elevation_deg < 90.0,
          "min_elevation_deg must be in [0, 90)");
  require(footprint_overlap >= 1.0, "footprint_overlap must be >= 1");
  require(ue_speed_kmh >= 0.0, "ue_speed_kmh must be >= 0");
  require(array_nx > 0 && array_ny > 0, "array size must be > 0");
  require(element_spacing_wavelengths > 0.0,
          "element_spacing_wavelengths must be > 0");
  require(carrier_ghz > 0.0, "carrier_ghz must be > 0");
  require(bandwidth_mhz > 0.0, "bandwidth_mhz must be > 0");
  require(vsat_temperature_k > 0.0, "vsat_temperature_k must be > 0");
  require(handheld_temperature_k > 0.0, "handheld_temperature_k must be > 0");
  require(processing_delay_ms >= 0.0, "processing_delay_ms must be >= 0");
  require(additional_delay_ms >= 0.0, "additional_delay_ms must be >= 0");
  environment_from_string(environment);
  architecture_from_string(architecture);
  const auto model_ok = [](const std::string& m, bool allow_cos_q,
                           bool allow_parabolic) {
    if (m == "isotropic") return true;
    if (allow_cos_q && m == "cos_q") return true;
    if (allow_parabolic && m == "parabolic") return true;
    return m.rfind("table:", 0) == 0;
  };
  require(model_ok(element_model, true, false),
          "element_model must be cos_q, isotropic, or table:<path> (got '" +
              element_model + "')");
  require(model_ok(vsat_pattern, false, true),
          "vsat_pattern must be parabolic, isotropic, or table:<path> (got '" +
              vsat_pattern + "')");
  require(model_ok(handheld_pattern, false, true),
          "handheld_pattern must be parabolic, isotropic, or table:<path> "
          "(got '" + handheld_pattern + "')");
}

std::string Cell::id() const {
  char power[32];
  std::snprintf(power, sizeof(power), "p%g", power_density_dbw_mhz);
  return to_string(space) + "|" + to_string(terminal) + "|" +
         to_string(scenario) + "|" + to_string(propagation) + "|" + power +
         "|" + to_string(scheme) + "|" + to_string(normalization);
}

std::vector<Cell> enumerate_cells(const CampaignConfig& cfg) {
  std::vector<Cell> cells;
  int index = 0;
  for (Space sp : cfg.spaces)
    for (TerminalClass t : cfg.terminals)
      for (Scenario sc : cfg.scenarios)
        for (Propagation p : cfg.propagations)
          for (double pw : cfg.power_density_dbw_mhz)
            for (Scheme sch : cfg.schemes)
              for (Normalization n : cfg.normalizations) {
                Cell c;
                c.index = index++;
                c.space = sp;
                c.terminal = t;
                c.scenario = sc;
                c.propagation = p;
                c.power_density_dbw_mhz = pw;
                c.scheme = sch;
                c.normalization = n;
                cells.push_back(c);
              }
  return cells;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value, int line_no) {
  std::string body = trim(value);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw std::invalid_argument("expected a [a, b, ...] list on line " +
                                std::to_string(line_no));
  body = body.substr(1, body.size() - 2);
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(body);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double parse_number(const std::string& s, const std::string& key) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key + "' expects a number (got '" +
                                s + "')");
  }
  if (pos != s.size())
    throw std::invalid_argument("key '" + key + "' expects a number (got '" +
                                s + "')");
  return v;
}

long parse_integer(const std::string& s, const std::string& key) {
  const double v = parse_number(s, key);
  if (v != std::floor(v))
    throw std::invalid_argument("key '" + key + "' expects an integer (got '" +
                                s + "')");
  return static_cast<long>(v);
}

struct KeySpec {
  std::string section;
  std::function<void(CampaignConfig&, const std::string&, int)> set;
  std::function<std::string(const CampaignConfig&)> get;
};

template <typename Enum>
std::string join_enum_list(const std::vector<Enum>& values) {
  std::string out = "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += to_string(values[i]);
  }
  return out + "]";
}

std::string join_number_list(const std::vector<double>& values) {
  std::string out = "[";
  char buf[32];
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    std::snprintf(buf, sizeof(buf), "%g", values[i]);
    out += buf;
  }
  return out + "]";
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

const std::vector<std::pair<std::string, KeySpec>>& key_registry() {
  using Cfg = CampaignConfig;
  static const std::vector<std::pair<std::string, KeySpec>> registry = [] {
    std::vector<std::pair<std::string, KeySpec>> reg;

    auto add = [&reg](const std::string& name, const std::string& section,
                      auto set, auto get) {
      reg.push_back({name, KeySpec{section, set, get}});
    };

    auto number_key = [&](const std::string& name, const std::string& section,
                          double Cfg::* field) {
      add(name, section,
          [field, name](Cfg& c, const std::string& v, int) {
            c.*field = parse_number(v, name);
          },
          [field](const Cfg& c) { return format_number(c.*field); });
    };
    auto int_key = [&](const std::string& name, const std::string& section,
                       int Cfg::* field) {
      add(name, section,
          [field, name](Cfg& c, const std::string& v, int) {
            c.*field = static_cast<int>(parse_integer(v, name));
          },
          [field](const Cfg& c) { return std::to_string(c.*field); });
    };
    auto string_key = [&](const std::string& name, const std::string& section,
                          std::string Cfg::* field) {
      add(name, section,
          [field](Cfg& c, const std::string& v, int) { c.*field = v; },
          [field](const Cfg& c) { return c.*field; });
    };

    // [axes]
    add("space", "axes",
        [](Cfg& c, const std::string& v, int line) {
          c.spaces.clear();
          for (const auto& s : split_list(v, line))
            c.spaces.push_back(space_from_string(s));
        },
        [](const Cfg& c) { return join_enum_list(c.spaces); });
    add("terminal", "axes",
        [](Cfg& c, const std::string& v, int line) {
          c.terminals.clear();
          for (const auto& s : split_list(v, line))
            c.terminals.push_back(terminal_from_string(s));
        },
        [](const Cfg& c) { return join_enum_list(c.terminals); });
    add("scenario", "axes",
        [](Cfg& c, const std::string& v, int line) {
          c.scenarios.clear();
          for (const auto& s : split_list(v, line))
            c.scenarios.push_back(scenario_from_string(s));
        },
        [](const Cfg& c) { return join_enum_list(c.scenarios); });
    add("propagation", "axes",
        [](Cfg& c, const std::string& v, int line) {
          c.propagations.clear();
          for (const auto& s : split_list(v, line))
            c.propagations.push_back(propagation_from_string(s));
        },
        [](const Cfg& c) { return join_enum_list(c.propagations); });
    add("power_density_dbw_mhz", "axes",
        [](Cfg& c, const std::string& v, int line) {
          c.power_density_dbw_mhz.clear();
          for (const auto& s : split_list(v, line))
            c.power_density_dbw_mhz.push_back(
                parse_number(s, "power_density_dbw_mhz"));
        },
        [](const Cfg& c) { return join_number_list(c.power_density_dbw_mhz); });
    add("scheme", "axes",
        [](Cfg& c, const std::string& v, int line) {
          c.schemes.clear();
          for (const auto& s : split_list(v, line))
            c.schemes.push_back(scheme_from_string(s));
        },
        [](const Cfg& c) { return join_enum_list(c.schemes); });
    add("normalization", "axes",
        [](Cfg& c, const std::string& v, int line) {
          c.normalizations.clear();
          for (const auto& s : split_list(v, line))
            c.normalizations.push_back(normalization_from_string(s));
        },
        [](const Cfg& c) { return join_enum_list(c.normalizations); });

    // [campaign]
    int_key("iterations", "campaign", &Cfg::iterations);
    add("seed", "campaign",
        [](Cfg& c, const std::string& v, int) {
          c.seed = static_cast<uint64_t>(parse_integer(v, "seed"));
        },
        [](const Cfg& c) { return std::to_string(c.seed); });
    int_key("threads", "campaign", &Cfg::threads);

    // [geometry]
    number_key("altitude_km", "geometry", &Cfg::altitude_km);
    int_key("n_rings", "geometry", &Cfg::n_rings);
    number_key("beam_spacing_uv", "geometry", &Cfg::beam_spacing_uv);
    number_key("user_density_per_km2", "geometry", &Cfg::user_density_per_km2);
    number_key("min_elevation_deg", "geometry", &Cfg::min_elevation_deg);
    number_key("footprint_overlap", "geometry", &Cfg::footprint_overlap);
    number_key("ue_speed_kmh", "geometry", &Cfg::ue_speed_kmh);

    // [array]
    int_key("array_nx", "array", &Cfg::array_nx);
    int_key("array_ny", "array", &Cfg::array_ny);
    number_key("element_spacing_wavelengths", "array",
               &Cfg::element_spacing_wavelengths);
    number_key("carrier_ghz", "array", &Cfg::carrier_ghz);
    string_key("element_model", "array", &Cfg::element_model);
    number_key("element_gain_dbi", "array", &Cfg::element_gain_dbi);

    // [terminals]
    number_key("vsat_gain_dbi", "terminals", &Cfg::vsat_gain_dbi);
    number_key("vsat_temperature_k", "terminals", &Cfg::vsat_temperature_k);
    string_key("vsat_pattern", "terminals", &Cfg::vsat_pattern);
    number_key("handheld_gain_dbi", "terminals", &Cfg::handheld_gain_dbi);
    number_key("handheld_temperature_k", "terminals",
               &Cfg::handheld_temperature_k);
    string_key("handheld_pattern", "terminals", &Cfg::handheld_pattern);
    number_key("ss_mmse_temperature_error_db", "terminals",
               &Cfg::ss_mmse_temperature_error_db);

    // [channel]
    number_key("bandwidth_mhz", "channel", &Cfg::bandwidth_mhz);
    string_key("environment", "channel", &Cfg::environment);
    string_key("loss_table", "channel", &Cfg::loss_table);

    // [delays]
    number_key("processing_delay_ms", "delays", &Cfg::processing_delay_ms);
    number_key("additional_delay_ms", "delays", &Cfg::additional_delay_ms);
    string_key("architecture", "delays", &Cfg::architecture);
    number_key("gw_along_track_km", "delays", &Cfg::gw_along_track_km);

    return reg;
  }();
  return registry;
}

const KeySpec* find_key(const std::string& name) {
  for (const auto& [key, spec] : key_registry())
    if (key == name) return &spec;
  return nullptr;
}

bool is_path_key(const std::string& key) { return key == "loss_table"; }

bool is_pattern_key(const std::string& key) {
  return key == "element_model" || key == "vsat_pattern" ||
         key == "handheld_pattern";
}

std::string resolve_path(const std::string& value, const std::string& base_dir) {
  if (value.empty() || value.front() == '/' || base_dir.empty()) return value;
  return base_dir + "/" + value;
}

} // namespace

CampaignConfig parse_config_text(const std::string& text,
                                 const std::string& base_dir) {
  CampaignConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;

  static const std::vector<std::string> known_sections = {
      "axes", "campaign", "geometry", "array", "terminals", "channel",
      "delays"};

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      if (std::find(known_sections.begin(), known_sections.end(), section) ==
          known_sections.end())
        throw std::invalid_argument("unknown config section '[" + section +
                                    "]' on line " + std::to_string(line_no));
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("expected 'key: value' on line " +
                                  std::to_string(line_no));
    const std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));

    const KeySpec* spec = find_key(key);
    if (spec == nullptr)
      throw std::invalid_argument("unknown config key '" + key + "' on line " +
                                  std::to_string(line_no));
    if (!section.empty() && spec->section != section)
      throw std::invalid_argument("key '" + key + "' does not belong to [" +
                                  section + "] (line " +
                                  std::to_string(line_no) + ")");
    if (is_path_key(key)) value = resolve_path(value, base_dir);
    if (is_pattern_key(key) && value.rfind("table:", 0) == 0)
      value = "table:" + resolve_path(value.substr(6), base_dir);
    spec->set(cfg, value, line_no);
  }

  cfg.validate();
  return cfg;
}

CampaignConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  const auto slash = path.find_last_of('/');
  const std::string base_dir =
      slash == std::string::npos ? std::string(".") : path.substr(0, slash);
  return parse_config_text(text.str(), base_dir);
}

std::string echo_config(const CampaignConfig& cfg) {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>>
      by_section;
  for (const auto& [key, spec] : key_registry())
    by_section[spec.section].push_back({key, spec.get(cfg)});

  static const char* section_order[] = {"campaign", "axes",     "geometry",
                                        "array",    "terminals", "channel",
                                        "delays"};
  std::ostringstream out;
  for (const char* section : section_order) {
    out << "[" << section << "]\n";
    for (const auto& [key, value] : by_section[section])
      out << key << ": " << value << "\n";
    out << "\n";
  }
  return out.str();
}

} // namespace leosim::config
