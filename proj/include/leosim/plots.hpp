// SPDX-License-Identifier: Apache-2.0
#ifndef LEOSIM_PLOTS_HPP
#define LEOSIM_PLOTS_HPP

#include <string>
#include <vector>

#include "leosim/export.hpp"

namespace leosim::plots {

enum class PlotKind { MeanSeHistogram, SinrCdf, SirCdf };

PlotKind plot_kind_from_string(const std::string& s);

struct PlotOptions {
  std::string filter;        // substring match on cell_id; empty = all
  double sir_cap_db = 80.0;  // SIR samples above the cap stay out of CDF data
};

/**
 * Write plot-ready data from exported record rows: mean-SE histograms grouped
 * by (scheme, normalization, power) or sorted (value, probability) CDF pairs.
 * Throws if the filter selects no records.
 */
void emit_plot_data(const std::vector<exporter::ExportedRow>& rows,
                    PlotKind kind, const PlotOptions& options,
                    const std::string& out_path);

/// gnuplot script that renders the emitted data files found in `data_dir`.
void write_gnuplot_script(const std::string& data_dir,
                          const std::vector<std::string>& data_files,
                          const std::string& script_path);

} // namespace leosim::plots

#endif // LEOSIM_PLOTS_HPP
