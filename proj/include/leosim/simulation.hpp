// SPDX-License-Identifier: Apache-2.0
#ifndef LEOSIM_SIMULATION_HPP
#define LEOSIM_SIMULATION_HPP

#include <cstdint>
#include <vector>

#include "leosim/channel.hpp"
#include "leosim/config.hpp"
#include "leosim/rng.hpp"
#include "leosim/types.hpp"

namespace leosim::sim {

/// One time frame: the user scheduled on each beam (slot k serves beam k).
struct FrameSchedule {
  int frame_index = 0;
  std::vector<int> user_per_beam;
};

/**
 * Random per-beam scheduling: each frame draws one not-yet-served user per
 * beam, uniformly; beams that run out of unserved users re-serve a uniformly
 * drawn already-served one so every beam transmits in every frame. The frame
 * count is the largest beam occupancy, which guarantees that every user is
 * served exactly once.
 */
std::vector<FrameSchedule> schedule_frames(
    const std::vector<std::vector<int>>& users_by_beam, RandomStream& rng);

struct FrameMetrics {
  RVec sinr;  // linear
  RVec sir;   // linear; +inf when a user sees zero interference
};

/**
 * Per-user SINR and SIR of one frame: channel rows at the transmission
 * instant against precoder columns computed at the estimation instant. Noise
 * power is unity because channel rows are noise-normalized.
 */
FrameMetrics frame_metrics(const CMat& h_t1, const CMat& w_t0);

inline double spectral_efficiency(double sinr_linear) {
  return std::log2(1.0 + sinr_linear);
}

struct KpiRecord {
  int cell = 0;  // index into enumerate_cells(config)
  int iteration = 0;
  int frame = 0;
  int user_id = 0;
  double sinr = 0.0;  // linear
  double sir = 0.0;   // linear, +inf representable
  double se = 0.0;    // bits/s/Hz
};

struct EmpiricalCdf {
  std::vector<double> values;         // sorted ascending
  std::vector<double> probabilities;  // (i+1)/n, ends at 1

  static EmpiricalCdf from_samples(std::vector<double> samples);
};

struct CellSummary {
  int cell = 0;
  long n_records = 0;
  double mean_se = 0.0;
  double mean_sinr = 0.0;      // linear
  double mean_finite_sir = 0.0;  // linear, over finite samples
  long n_infinite_sir = 0;
};

struct CampaignResult {
  std::vector<config::Cell> cells;
  std::vector<KpiRecord> records;  // sorted by (cell, iteration, frame, user)
  std::vector<CellSummary> summaries;
  std::vector<std::string> skipped;  // "<cell>@<iteration>: reason" entries
};

/**
 * All records of one Monte Carlo iteration across every cell of the config.
 * Randomness is keyed by (seed, iteration) and purpose only, so cells that
 * share a user drop, schedule, or loss realization see identical draws;
 * normalization- and scheme-level comparisons are therefore matched-seed.
 */
std::vector<KpiRecord> run_iteration(const config::CampaignConfig& cfg,
                                     int iteration);

/**
 * Full campaign; Exec::OpenMP parallelizes over scene-group iterations and is
 * record-for-record identical to the serial path. `cell_filter` restricts
 * execution to cells whose id contains the substring; cells whose precoder
 * preconditions fail are reported in `skipped` and produce no records.
 */
CampaignResult run_campaign(const config::CampaignConfig& cfg,
                            channel::Exec exec = channel::Exec::OpenMP,
                            const std::string& cell_filter = "");

std::vector<CellSummary> summarize(const std::vector<config::Cell>& cells,
                                   const std::vector<KpiRecord>& records);

} // namespace leosim::sim

#endif // LEOSIM_SIMULATION_HPP
