// SPDX-License-Identifier: Apache-2.0
#include "leosim/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "leosim/constants.hpp"

namespace leosim::exporter {

namespace {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::stod(s);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

std::string row_csv(const config::Cell& cell, const sim::KpiRecord& r) {
  std::ostringstream line;
  line << cell.id() << ',' << to_string(cell.space) << ','
       << to_string(cell.terminal) << ',' << to_string(cell.scenario) << ','
       << to_string(cell.propagation) << ','
       << format_double(cell.power_density_dbw_mhz) << ','
       << to_string(cell.scheme) << ',' << to_string(cell.normalization) << ','
       << r.iteration << ',' << r.frame << ',' << r.user_id << ','
       << format_double(lin2db(r.sinr)) << ',' << format_double(lin2db(r.sir))
       << ',' << format_double(r.se);
  return line.str();
}

std::string row_jsonl(const config::Cell& cell, const sim::KpiRecord& r) {
  const double sir_db = lin2db(r.sir);
  std::ostringstream line;
  line << "{\"cell_id\":\"" << cell.id() << "\",\"space\":\""
       << to_string(cell.space) << "\",\"terminal\":\""
       << to_string(cell.terminal) << "\",\"scenario\":\""
       << to_string(cell.scenario) << "\",\"propagation\":\""
       << to_string(cell.propagation) << "\",\"power_dbw_mhz\":"
       << format_double(cell.power_density_dbw_mhz) << ",\"scheme\":\""
       << to_string(cell.scheme) << "\",\"normalization\":\""
       << to_string(cell.normalization) << "\",\"iteration\":" << r.iteration
       << ",\"frame\":" << r.frame << ",\"user_id\":" << r.user_id
       << ",\"sinr_db\":" << format_double(lin2db(r.sinr)) << ",\"sir_db\":"
       << (std::isinf(sir_db) ? std::string("null") : format_double(sir_db))
       << ",\"se_bps_hz\":" << format_double(r.se) << "}";
  return line.str();
}

} // namespace

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "jsonl") return Format::Jsonl;
  throw std::invalid_argument("unknown export format '" + s + "'");
}

void export_records(const sim::CampaignResult& result, const std::string& path,
                    Format format) {
  std::ofstream out = open_out(path);
  if (format == Format::Csv) out << kRecordHeader << "\n";
  for (const sim::KpiRecord& r : result.records) {
    const config::Cell& cell = result.cells.at(static_cast<size_t>(r.cell));
    out << (format == Format::Csv ? row_csv(cell, r) : row_jsonl(cell, r))
        << "\n";
  }
  if (!out) throw std::runtime_error("failed writing records to " + path);
}

void export_summary(const sim::CampaignResult& result,
                    const std::string& path) {
  std::ofstream out = open_out(path);
  out << "cell_id,space,terminal,scenario,propagation,power_dbw_mhz,scheme,"
         "normalization,n_records,mean_se_bps_hz,mean_sinr_db,"
         "mean_finite_sir_db,n_infinite_sir\n";
  for (const sim::CellSummary& s : result.summaries) {
    const config::Cell& cell = result.cells.at(static_cast<size_t>(s.cell));
    out << cell.id() << ',' << to_string(cell.space) << ','
        << to_string(cell.terminal) << ',' << to_string(cell.scenario) << ','
        << to_string(cell.propagation) << ','
        << format_double(cell.power_density_dbw_mhz) << ','
        << to_string(cell.scheme) << ',' << to_string(cell.normalization)
        << ',' << s.n_records << ',' << format_double(s.mean_se) << ','
        << format_double(lin2db(s.mean_sinr)) << ','
        << format_double(s.n_records - s.n_infinite_sir > 0
                             ? lin2db(s.mean_finite_sir)
                             : 0.0)
        << ',' << s.n_infinite_sir << "\n";
  }
  if (!out) throw std::runtime_error("failed writing summary to " + path);
}

std::vector<ExportedRow> import_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open records file: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("records file is empty: " + path);
  if (line != kRecordHeader)
    throw std::runtime_error("unexpected records header in " + path);

  std::vector<ExportedRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream split(line);
    while (std::getline(split, field, ',')) fields.push_back(field);
    if (fields.size() != 14)
      throw std::runtime_error("malformed record row: " + line);

    ExportedRow r;
    r.cell_id = fields[0];
    r.space = fields[1];
    r.terminal = fields[2];
    r.scenario = fields[3];
    r.propagation = fields[4];
    r.power_dbw_mhz = parse_double(fields[5]);
    r.scheme = fields[6];
    r.normalization = fields[7];
    r.iteration = std::stoi(fields[8]);
    r.frame = std::stoi(fields[9]);
    r.user_id = std::stoi(fields[10]);
    r.sinr_db = parse_double(fields[11]);
    r.sir_db = parse_double(fields[12]);
    r.se_bps_hz = parse_double(fields[13]);
    rows.push_back(r);
  }
  return rows;
}

void export_rows_csv(const std::vector<ExportedRow>& rows,
                     const std::string& path) {
  std::ofstream out = open_out(path);
  out << kRecordHeader << "\n";
  for (const ExportedRow& r : rows) {
    out << r.cell_id << ',' << r.space << ',' << r.terminal << ','
        << r.scenario << ',' << r.propagation << ','
        << format_double(r.power_dbw_mhz) << ',' << r.scheme << ','
        << r.normalization << ',' << r.iteration << ',' << r.frame << ','
        << r.user_id << ',' << format_double(r.sinr_db) << ','
        << format_double(r.sir_db) << ',' << format_double(r.se_bps_hz)
        << "\n";
  }
  if (!out) throw std::runtime_error("failed writing records to " + path);
}

} // namespace leosim::exporter
