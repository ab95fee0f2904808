// SPDX-License-Identifier: Apache-2.0
#include "leosim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "leosim/constants.hpp"
#include "leosim/precoding.hpp"

namespace leosim::sim {

namespace {

// Purpose tags for the per-iteration random streams. Draws are keyed by
// (seed, iteration, purpose, entity), never by the experiment cell, so cells
// compare matched realizations.
constexpr uint64_t kIterationTag = 0x69746572;
constexpr uint64_t kDropTag = 0x64726f70;
constexpr uint64_t kLossT0Tag = 0x6c307373;
constexpr uint64_t kEvolveTag = 0x65766f6c;
constexpr uint64_t kScheduleTag = 0x73636864;

struct Setup {
  geometry::SatelliteState sat0;
  geometry::BeamLattice lattice;
  antenna::ArrayGeometry array;
  std::shared_ptr<const antenna::Pattern> element;
  CMat codebook_feed;  // beamforming matrix, N_F x N_B
  std::shared_ptr<const channel::LossTable> loss_table;
  Vec3 gw_position;
  antenna::TerminalRadioProfile vsat;
  antenna::TerminalRadioProfile handheld;
  Environment environment = Environment::Suburban;
  ArchitectureMode architecture = ArchitectureMode::Cpc;
};

std::shared_ptr<const antenna::Pattern> make_pattern(const std::string& model,
                                                     double gain_dbi,
                                                     bool cos_q_allowed) {
  if (model == "isotropic")
    return std::make_shared<antenna::IsotropicPattern>(gain_dbi);
  if (cos_q_allowed && model == "cos_q")
    return std::make_shared<antenna::CosQPattern>(gain_dbi);
  if (!cos_q_allowed && model == "parabolic")
    return std::make_shared<antenna::ParabolicPattern>(gain_dbi);
  if (model.rfind("table:", 0) == 0)
    return std::make_shared<antenna::TablePattern>(
        antenna::TablePattern::load(model.substr(6)));
  throw std::invalid_argument("unknown pattern model '" + model + "'");
}

Setup build_setup(const config::CampaignConfig& cfg) {
  Setup s;
  s.sat0 = geometry::make_circular_orbit(cfg.altitude_km * 1e3);
  s.lattice = geometry::build_beam_lattice(cfg.n_rings, cfg.beam_spacing_uv);
  s.array = antenna::make_planar_array(cfg.array_nx, cfg.array_ny,
                                       cfg.element_spacing_wavelengths,
                                       cfg.wavelength());
  s.element = make_pattern(cfg.element_model, cfg.element_gain_dbi,
                           /*cos_q_allowed=*/true);
  s.codebook_feed = antenna::beamforming_matrix(s.lattice, s.array);

  if (cfg.loss_table.empty()) {
    s.loss_table = std::shared_ptr<const channel::LossTable>(
        &channel::LossTable::ntn_suburban_s_band(), [](const channel::LossTable*) {});
  } else {
    s.loss_table = std::make_shared<const channel::LossTable>(
        channel::LossTable::load(cfg.loss_table));
  }

  // Gateway on the ground at the initial nadir point, optionally offset
  // along-track.
  const Vec3 nadir_dir = s.sat0.position.normalized();
  if (cfg.gw_along_track_km == 0.0) {
    s.gw_position = kEarthRadiusM * nadir_dir;
  } else {
    const Vec3 normal =
        s.sat0.position.cross(s.sat0.velocity).normalized();
    const double arc = cfg.gw_along_track_km * 1e3 / kEarthRadiusM;
    const Eigen::AngleAxisd rot(arc, normal);
    s.gw_position = kEarthRadiusM * (rot * nadir_dir);
  }

  s.vsat.terminal_class = TerminalClass::Vsat;
  s.vsat.peak_gain_dbi = cfg.vsat_gain_dbi;
  s.vsat.noise_temperature = cfg.vsat_temperature_k;
  s.vsat.pattern = make_pattern(cfg.vsat_pattern, cfg.vsat_gain_dbi,
                                /*cos_q_allowed=*/false);

  s.handheld.terminal_class = TerminalClass::Handheld;
  s.handheld.peak_gain_dbi = cfg.handheld_gain_dbi;
  s.handheld.noise_temperature = cfg.handheld_temperature_k;
  s.handheld.pattern = make_pattern(cfg.handheld_pattern,
                                    cfg.handheld_gain_dbi,
                                    /*cos_q_allowed=*/false);

  s.environment = environment_from_string(cfg.environment);
  s.architecture = architecture_from_string(cfg.architecture);
  return s;
}

/// Scene axes shared by all cells that reuse one random environment.
struct SceneGroup {
  int terminal_pos = 0;
  int scenario_pos = 0;
  int propagation_pos = 0;
  TerminalClass terminal = TerminalClass::Vsat;
  Scenario scenario = Scenario::Fixed;
  Propagation propagation = Propagation::Plos;
};

std::vector<SceneGroup> enumerate_groups(const config::CampaignConfig& cfg) {
  std::vector<SceneGroup> groups;
  for (size_t t = 0; t < cfg.terminals.size(); ++t)
    for (size_t sc = 0; sc < cfg.scenarios.size(); ++sc)
      for (size_t p = 0; p < cfg.propagations.size(); ++p)
        groups.push_back({static_cast<int>(t), static_cast<int>(sc),
                          static_cast<int>(p), cfg.terminals[t],
                          cfg.scenarios[sc], cfg.propagations[p]});
  return groups;
}

int cell_index(const config::CampaignConfig& cfg, int si, int ti, int sci,
               int pi, int pwi, int schi, int ni) {
  int idx = si;
  idx = idx * static_cast<int>(cfg.terminals.size()) + ti;
  idx = idx * static_cast<int>(cfg.scenarios.size()) + sci;
  idx = idx * static_cast<int>(cfg.propagations.size()) + pi;
  idx = idx * static_cast<int>(cfg.power_density_dbw_mhz.size()) + pwi;
  idx = idx * static_cast<int>(cfg.schemes.size()) + schi;
  idx = idx * static_cast<int>(cfg.normalizations.size()) + ni;
  return idx;
}

bool record_order(const KpiRecord& a, const KpiRecord& b) {
  if (a.cell != b.cell) return a.cell < b.cell;
  if (a.iteration != b.iteration) return a.iteration < b.iteration;
  if (a.frame != b.frame) return a.frame < b.frame;
  return a.user_id < b.user_id;
}

struct GroupOutput {
  std::vector<KpiRecord> records;
  std::vector<std::string> skipped;
};

GroupOutput run_group_iteration(const config::CampaignConfig& cfg,
                                const Setup& setup, const SceneGroup& group,
                                int iteration,
                                const std::vector<bool>* cell_mask) {
  const int n_beams = setup.lattice.n_beams();
  const antenna::TerminalRadioProfile& profile =
      group.terminal == TerminalClass::Vsat ? setup.vsat : setup.handheld;

  RandomStream iter_stream =
      RandomStream(cfg.seed).substream(kIterationTag).substream(
          static_cast<uint64_t>(iteration));

  // User drop at the estimation instant; identical across every scene group
  // of the iteration.
  geometry::DropOptions drop_options;
  drop_options.density_per_km2 = cfg.user_density_per_km2;
  drop_options.terminal_class = group.terminal;
  drop_options.scenario = group.scenario;
  drop_options.speed_mps =
      group.scenario == Scenario::PublicSafety ? cfg.ue_speed_kmh / 3.6 : 0.0;
  drop_options.noise_temperature = profile.noise_temperature;
  drop_options.min_elevation_deg = cfg.min_elevation_deg;
  drop_options.footprint_overlap = cfg.footprint_overlap;

  RandomStream drop_rng = iter_stream.substream(kDropTag);
  std::vector<geometry::UserTerminal> users =
      geometry::drop_users(setup.lattice, setup.sat0, drop_options, drop_rng);

  std::vector<std::vector<int>> users_by_beam(n_beams);
  for (const geometry::UserTerminal& u : users) {
    const Vec2 uv = geometry::uv_coordinates(u.position, setup.sat0);
    users_by_beam[geometry::closest_beam(uv, setup.lattice)].push_back(u.id);
  }

  // Scene at t0 with that instant's loss realizations.
  channel::SceneSnapshot scene0;
  scene0.sat = setup.sat0;
  scene0.users = std::move(users);
  scene0.epoch = 0.0;
  RandomStream loss0_root = iter_stream.substream(kLossT0Tag);
  scene0.losses.reserve(scene0.users.size());
  for (const geometry::UserTerminal& u : scene0.users) {
    RandomStream user_loss = loss0_root.substream(static_cast<uint64_t>(u.id));
    const double elev =
        geometry::elevation_deg(u.position, setup.sat0.position);
    scene0.losses.push_back(channel::draw_losses(group.propagation,
                                                 setup.environment, elev,
                                                 *setup.loss_table, user_loss));
  }

  const geometry::DelayBudget budget = geometry::compute_delay_budget(
      setup.sat0, scene0.users, setup.gw_position,
      cfg.processing_delay_ms * 1e-3, cfg.additional_delay_ms * 1e-3,
      setup.architecture);

  RandomStream evolve_rng = iter_stream.substream(kEvolveTag);
  const channel::SceneSnapshot scene1 =
      channel::evolve_scene(scene0, budget, group.propagation,
                            setup.environment, *setup.loss_table, evolve_rng);

  RandomStream schedule_rng = iter_stream.substream(kScheduleTag);
  const std::vector<FrameSchedule> schedule =
      schedule_frames(users_by_beam, schedule_rng);

  channel::LinkContext ctx;
  ctx.array = setup.array;
  ctx.element = setup.element;
  ctx.terminal = profile;
  ctx.bandwidth_hz = cfg.bandwidth_hz();
  ctx.min_elevation_deg = cfg.min_elevation_deg;

  // Transmitter-side approximate channel at the beam centers; frame
  // independent, used by SS-MMSE in both spaces.
  const double t_rep =
      profile.noise_temperature * db2lin(cfg.ss_mmse_temperature_error_db);
  CMat hhat_feed(n_beams, setup.array.n_feeds());
  for (int l = 0; l < n_beams; ++l)
    hhat_feed.row(l) = channel::beam_center_channel_row(
        setup.lattice.centers[l], t_rep, setup.sat0, ctx);
  const CMat hhat_beam = hhat_feed * setup.codebook_feed;

  // Regularization: reciprocal of the expected per-user SNR in the
  // noise-normalized signal model, i.e. the power allocated to each of the
  // N_sch scheduled users over the unit noise variance. This is the classic
  // MMSE factor N_sch / P_t; a received-SNR reading (which folds the channel
  // gain into alpha) degenerates to plain zero forcing at realistic link
  // budgets and collapses under the beam-space conditioning of full
  // lattices.
  const int n_powers = static_cast<int>(cfg.power_density_dbw_mhz.size());
  std::vector<double> total_power(n_powers);
  std::vector<RVec> alpha(n_powers);
  for (int pwi = 0; pwi < n_powers; ++pwi) {
    total_power[pwi] = cfg.total_power_w(cfg.power_density_dbw_mhz[pwi]);
    alpha[pwi] = precoding::regularization_from_snr(
        RVec::Constant(n_beams, total_power[pwi] / n_beams));
  }

  std::vector<int> identity_schedule(n_beams);
  std::iota(identity_schedule.begin(), identity_schedule.end(), 0);

  // Helpers over the (space, power, scheme, norm) sub-cells of this group.
  const auto cell_of = [&](int si, int pwi, int schi, int ni) {
    return cell_index(cfg, si, group.terminal_pos, group.scenario_pos,
                      group.propagation_pos, pwi, schi, ni);
  };
  const auto cell_enabled = [&](int si, int pwi, int schi, int ni) {
    if (cell_mask == nullptr) return true;
    return (*cell_mask)[static_cast<size_t>(cell_of(si, pwi, schi, ni))];
  };
  const auto scheme_enabled = [&](int si, int pwi, int schi) {
    for (size_t ni = 0; ni < cfg.normalizations.size(); ++ni)
      if (cell_enabled(si, pwi, schi, static_cast<int>(ni))) return true;
    return false;
  };

  struct SpaceData {
    CMat codebook;
    precoding::PrecodingMatrix w_mb;  // shared by mb and none
    std::vector<std::optional<precoding::PrecodingMatrix>> w_ss;  // per power
    std::vector<std::string> ss_errors;
  };
  const int n_spaces = static_cast<int>(cfg.spaces.size());
  std::vector<SpaceData> space_data(n_spaces);
  GroupOutput out;
  for (int si = 0; si < n_spaces; ++si) {
    SpaceData& sd = space_data[si];
    const Space space = cfg.spaces[si];
    sd.codebook = space == Space::Feed
                      ? setup.codebook_feed
                      : CMat(CMat::Identity(n_beams, n_beams));
    sd.w_mb = precoding::mb_precoder(sd.codebook, identity_schedule, space);
    const CMat& hhat = space == Space::Feed ? hhat_feed : hhat_beam;
    sd.w_ss.resize(n_powers);
    sd.ss_errors.resize(n_powers);
    for (int pwi = 0; pwi < n_powers; ++pwi) {
      try {
        sd.w_ss[pwi] = precoding::ss_mmse_precoder(hhat, alpha[pwi], space);
      } catch (const std::exception& e) {
        sd.ss_errors[pwi] = e.what();
      }
    }
  }
  out.records.reserve(schedule.size() * n_beams * cfg.spaces.size() *
                      n_powers * cfg.schemes.size() *
                      cfg.normalizations.size());

  CMat rows0_feed(n_beams, setup.array.n_feeds());
  CMat rows1_feed(n_beams, setup.array.n_feeds());
  for (const FrameSchedule& frame : schedule) {
    for (int k = 0; k < n_beams; ++k) {
      const int uid = frame.user_per_beam[k];
      rows0_feed.row(k) = channel::feed_channel_row(
          scene0.users[uid], scene0.sat, ctx, scene0.losses[uid]);
      rows1_feed.row(k) = channel::feed_channel_row(
          scene1.users[uid], scene1.sat, ctx, scene1.losses[uid]);
    }

    for (int si = 0; si < n_spaces; ++si) {
      const Space space = cfg.spaces[si];
      const SpaceData& sd = space_data[si];
      const CMat h0 = space == Space::Feed
                          ? rows0_feed
                          : CMat(rows0_feed * setup.codebook_feed);
      const CMat h1 = space == Space::Feed
                          ? rows1_feed
                          : CMat(rows1_feed * setup.codebook_feed);

      for (int pwi = 0; pwi < n_powers; ++pwi) {
        for (size_t schi = 0; schi < cfg.schemes.size(); ++schi) {
          if (!scheme_enabled(si, pwi, static_cast<int>(schi))) continue;
          const Scheme scheme = cfg.schemes[schi];

          const auto note_skip = [&](const std::string& reason) {
            const std::vector<config::Cell> all = config::enumerate_cells(cfg);
            for (size_t ni = 0; ni < cfg.normalizations.size(); ++ni) {
              if (!cell_enabled(si, pwi, static_cast<int>(schi),
                                static_cast<int>(ni)))
                continue;
              const int cell =
                  cell_of(si, pwi, static_cast<int>(schi), static_cast<int>(ni));
              out.skipped.push_back(all[cell].id() + "@" +
                                    std::to_string(iteration) + " frame " +
                                    std::to_string(frame.frame_index) + ": " +
                                    reason);
            }
          };

          const precoding::PrecodingMatrix* w_raw = nullptr;
          precoding::PrecodingMatrix w_mmse;
          switch (scheme) {
            case Scheme::Mmse:
              try {
                w_mmse = precoding::mmse_precoder(h0, alpha[pwi], space);
              } catch (const std::exception& e) {
                note_skip(e.what());
                continue;
              }
              w_raw = &w_mmse;
              break;
            case Scheme::SsMmse:
              if (!sd.w_ss[pwi]) {
                if (frame.frame_index == 0) note_skip(sd.ss_errors[pwi]);
                continue;
              }
              w_raw = &*sd.w_ss[pwi];
              break;
            case Scheme::Mb:
            case Scheme::None:
              // The non-precoded baseline transmits the beam codebook with
              // uniform power, which is exactly the MB precoder.
              w_raw = &sd.w_mb;
              break;
          }

          for (size_t ni = 0; ni < cfg.normalizations.size(); ++ni) {
            if (!cell_enabled(si, pwi, static_cast<int>(schi),
                              static_cast<int>(ni)))
              continue;
            const precoding::PrecodingMatrix w = precoding::normalize(
                *w_raw, cfg.normalizations[ni], total_power[pwi]);
            const FrameMetrics m = frame_metrics(h1, w.entries);

            const int cell =
                cell_of(si, pwi, static_cast<int>(schi), static_cast<int>(ni));
            for (int k = 0; k < n_beams; ++k) {
              KpiRecord r;
              r.cell = cell;
              r.iteration = iteration;
              r.frame = frame.frame_index;
              r.user_id = frame.user_per_beam[k];
              r.sinr = m.sinr(k);
              r.sir = m.sir(k);
              r.se = spectral_efficiency(m.sinr(k));
              out.records.push_back(r);
            }
          }
        }
      }
    }
  }
  return out;
}

} // namespace

std::vector<FrameSchedule> schedule_frames(
    const std::vector<std::vector<int>>& users_by_beam, RandomStream& rng) {
  if (users_by_beam.empty()) throw std::invalid_argument("no beams to schedule");
  size_t n_frames = 0;
  for (const auto& beam_users : users_by_beam) {
    if (beam_users.empty())
      throw std::invalid_argument("schedule requires every beam nonempty");
    n_frames = std::max(n_frames, beam_users.size());
  }

  const size_t n_beams = users_by_beam.size();
  std::vector<std::vector<int>> unserved = users_by_beam;
  std::vector<FrameSchedule> frames(n_frames);
  for (size_t f = 0; f < n_frames; ++f) {
    frames[f].frame_index = static_cast<int>(f);
    frames[f].user_per_beam.resize(n_beams);
    for (size_t b = 0; b < n_beams; ++b) {
      if (!unserved[b].empty()) {
        const long pick = rng.uniform_int(static_cast<long>(unserved[b].size()));
        frames[f].user_per_beam[b] = unserved[b][pick];
        unserved[b].erase(unserved[b].begin() + pick);
      } else {
        // Beam exhausted: re-serve a uniformly drawn already-served user so
        // every beam still transmits this frame.
        const auto& all = users_by_beam[b];
        frames[f].user_per_beam[b] =
            all[rng.uniform_int(static_cast<long>(all.size()))];
      }
    }
  }
  return frames;
}

FrameMetrics frame_metrics(const CMat& h_t1, const CMat& w_t0) {
  if (h_t1.cols() != w_t0.rows())
    throw std::invalid_argument("channel/precoder inner dimension mismatch");
  if (h_t1.rows() != w_t0.cols())
    throw std::invalid_argument("scheduled users do not match precoder columns");

  const Eigen::Index n = h_t1.rows();
  const CMat coupling = h_t1 * w_t0;

  FrameMetrics m;
  m.sinr.resize(n);
  m.sir.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double signal = std::norm(coupling(k, k));
    double interference = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != k) interference += std::norm(coupling(k, i));
    }
    m.sinr(k) = signal / (1.0 + interference);
    m.sir(k) = interference > 0.0
                   ? signal / interference
                   : std::numeric_limits<double>::infinity();
  }
  return m;
}

EmpiricalCdf EmpiricalCdf::from_samples(std::vector<double> samples) {
  if (samples.empty())
    throw std::invalid_argument("empirical CDF needs at least one sample");
  std::sort(samples.begin(), samples.end());
  EmpiricalCdf cdf;
  const double n = static_cast<double>(samples.size());
  cdf.values = std::move(samples);
  cdf.probabilities.resize(cdf.values.size());
  for (size_t i = 0; i < cdf.values.size(); ++i)
    cdf.probabilities[i] = static_cast<double>(i + 1) / n;
  return cdf;
}

std::vector<KpiRecord> run_iteration(const config::CampaignConfig& cfg,
                                     int iteration) {
  cfg.validate();
  const Setup setup = build_setup(cfg);
  std::vector<KpiRecord> records;
  for (const SceneGroup& group : enumerate_groups(cfg)) {
    GroupOutput block =
        run_group_iteration(cfg, setup, group, iteration, nullptr);
    records.insert(records.end(), block.records.begin(), block.records.end());
  }
  std::sort(records.begin(), records.end(), record_order);
  return records;
}

CampaignResult run_campaign(const config::CampaignConfig& cfg,
                            channel::Exec exec,
                            const std::string& cell_filter) {
  cfg.validate();
  const Setup setup = build_setup(cfg);
  const std::vector<SceneGroup> groups = enumerate_groups(cfg);

  CampaignResult result;
  result.cells = config::enumerate_cells(cfg);

  std::vector<bool> mask;
  const std::vector<bool>* mask_ptr = nullptr;
  if (!cell_filter.empty()) {
    mask.resize(result.cells.size());
    bool any = false;
    for (size_t i = 0; i < result.cells.size(); ++i) {
      mask[i] = result.cells[i].id().find(cell_filter) != std::string::npos;
      any = any || mask[i];
    }
    if (!any)
      throw std::invalid_argument("cell filter '" + cell_filter +
                                  "' matches no cells");
    mask_ptr = &mask;
  }

#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

  const int n_units = static_cast<int>(groups.size()) * cfg.iterations;
  std::vector<GroupOutput> blocks(n_units);
  std::exception_ptr first_error;

  if (exec == channel::Exec::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (int unit = 0; unit < n_units; ++unit) {
      try {
        const SceneGroup& group = groups[unit / cfg.iterations];
        const int iteration = unit % cfg.iterations;
        blocks[unit] =
            run_group_iteration(cfg, setup, group, iteration, mask_ptr);
      } catch (...) {
#pragma omp critical
        if (!first_error) first_error = std::current_exception();
      }
    }
  } else {
    for (int unit = 0; unit < n_units; ++unit) {
      const SceneGroup& group = groups[unit / cfg.iterations];
      const int iteration = unit % cfg.iterations;
      blocks[unit] =
          run_group_iteration(cfg, setup, group, iteration, mask_ptr);
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  size_t total = 0;
  for (const auto& b : blocks) total += b.records.size();
  result.records.reserve(total);
  for (auto& b : blocks) {
    result.records.insert(result.records.end(), b.records.begin(),
                          b.records.end());
    result.skipped.insert(result.skipped.end(), b.skipped.begin(),
                          b.skipped.end());
  }
  std::sort(result.records.begin(), result.records.end(), record_order);
  std::sort(result.skipped.begin(), result.skipped.end());
  result.summaries = summarize(result.cells, result.records);
  return result;
}

std::vector<CellSummary> summarize(const std::vector<config::Cell>& cells,
                                   const std::vector<KpiRecord>& records) {
  std::vector<CellSummary> summaries(cells.size());
  std::vector<double> finite_sir_sum(cells.size(), 0.0);
  for (size_t i = 0; i < cells.size(); ++i) summaries[i].cell = static_cast<int>(i);

  for (const KpiRecord& r : records) {
    CellSummary& s = summaries.at(static_cast<size_t>(r.cell));
    s.n_records += 1;
    s.mean_se += r.se;
    s.mean_sinr += r.sinr;
    if (std::isinf(r.sir)) {
      s.n_infinite_sir += 1;
    } else {
      finite_sir_sum[static_cast<size_t>(r.cell)] += r.sir;
    }
  }
  for (size_t i = 0; i < summaries.size(); ++i) {
    CellSummary& s = summaries[i];
    if (s.n_records > 0) {
      s.mean_se /= static_cast<double>(s.n_records);
      s.mean_sinr /= static_cast<double>(s.n_records);
    }
    const long n_finite = s.n_records - s.n_infinite_sir;
    s.mean_finite_sir = n_finite > 0 ? finite_sir_sum[i] / n_finite : 0.0;
  }
  return summaries;
}

} // namespace leosim::sim
