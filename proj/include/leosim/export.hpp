// SPDX-License-Identifier: Apache-2.0
#ifndef LEOSIM_EXPORT_HPP
#define LEOSIM_EXPORT_HPP

#include <string>
#include <vector>

#include "leosim/config.hpp"
#include "leosim/simulation.hpp"

namespace leosim::exporter {

enum class Format { Csv, Jsonl };

Format format_from_string(const std::string& s);

/// Stable, versioned record schema; one row per KPI record.
inline constexpr const char* kRecordHeader =
    "cell_id,space,terminal,scenario,propagation,power_dbw_mhz,scheme,"
    "normalization,iteration,frame,user_id,sinr_db,sir_db,se_bps_hz";
inline constexpr int kRecordSchemaVersion = 1;

/**
 * Serialize records in their deterministic (cell, iteration, frame, user)
 * order. Doubles print with round-trip precision, so identical campaigns
 * yield byte-identical files. Infinite SIR prints as "inf" in CSV and null
 * in JSONL.
 */
void export_records(const sim::CampaignResult& result, const std::string& path,
                    Format format);

/// Per-cell aggregate table.
void export_summary(const sim::CampaignResult& result, const std::string& path);

/// One parsed row of a record file; values keep their exported units.
struct ExportedRow {
  std::string cell_id;
  std::string space;
  std::string terminal;
  std::string scenario;
  std::string propagation;
  double power_dbw_mhz = 0.0;
  std::string scheme;
  std::string normalization;
  int iteration = 0;
  int frame = 0;
  int user_id = 0;
  double sinr_db = 0.0;
  double sir_db = 0.0;  // +inf representable
  double se_bps_hz = 0.0;
};

std::vector<ExportedRow> import_records_csv(const std::string& path);

/// Re-serialize imported rows; export/import/export is byte-idempotent.
void export_rows_csv(const std::vector<ExportedRow>& rows,
                     const std::string& path);

} // namespace leosim::exporter

#endif // LEOSIM_EXPORT_HPP
