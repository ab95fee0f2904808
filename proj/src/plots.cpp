// SPDX-License-Identifier: Apache-2.0
#include "leosim/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <tuple>

namespace leosim::plots {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<const exporter::ExportedRow*> apply_filter(
    const std::vector<exporter::ExportedRow>& rows, const std::string& filter) {
  std::vector<const exporter::ExportedRow*> selected;
  for (const auto& r : rows) {
    if (filter.empty() || r.cell_id.find(filter) != std::string::npos)
      selected.push_back(&r);
  }
  if (selected.empty())
    throw std::invalid_argument("plot filter '" + filter +
                                "' selects no records");
  return selected;
}

void write_cdf(const std::vector<const exporter::ExportedRow*>& rows,
               bool use_sir, double sir_cap_db, const std::string& out_path) {
  std::vector<double> samples;
  samples.reserve(rows.size());
  for (const auto* r : rows) {
    const double v = use_sir ? r->sir_db : r->sinr_db;
    if (use_sir && (std::isinf(v) || v > sir_cap_db)) continue;
    samples.push_back(v);
  }
  if (samples.empty())
    throw std::invalid_argument("no finite samples for the requested CDF");
  std::sort(samples.begin(), samples.end());

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open plot file: " + out_path);
  out << "# value_db probability\n";
  const double n = static_cast<double>(samples.size());
  for (size_t i = 0; i < samples.size(); ++i)
    out << format_double(samples[i]) << ' '
        << format_double(static_cast<double>(i + 1) / n) << "\n";
}

void write_histogram(const std::vector<const exporter::ExportedRow*>& rows,
                     const std::string& out_path) {
  // Mean spectral efficiency per (scheme, normalization, power).
  struct Bucket {
    double sum = 0.0;
    long n = 0;
  };
  std::map<std::tuple<std::string, std::string, double>, Bucket> buckets;
  for (const auto* r : rows) {
    Bucket& b = buckets[{r->scheme, r->normalization, r->power_dbw_mhz}];
    b.sum += r->se_bps_hz;
    b.n += 1;
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open plot file: " + out_path);
  out << "# scheme normalization power_dbw_mhz mean_se_bps_hz n\n";
  for (const auto& [key, bucket] : buckets) {
    out << std::get<0>(key) << ' ' << std::get<1>(key) << ' '
        << format_double(std::get<2>(key)) << ' '
        << format_double(bucket.sum / static_cast<double>(bucket.n)) << ' '
        << bucket.n << "\n";
  }
}

} // namespace

PlotKind plot_kind_from_string(const std::string& s) {
  if (s == "mean_se_histogram") return PlotKind::MeanSeHistogram;
  if (s == "sinr_cdf") return PlotKind::SinrCdf;
  if (s == "sir_cdf") return PlotKind::SirCdf;
  throw std::invalid_argument("unknown plot kind '" + s + "'");
}

void emit_plot_data(const std::vector<exporter::ExportedRow>& rows,
                    PlotKind kind, const PlotOptions& options,
                    const std::string& out_path) {
  const auto selected = apply_filter(rows, options.filter);
  switch (kind) {
    case PlotKind::MeanSeHistogram:
      write_histogram(selected, out_path);
      break;
    case PlotKind::SinrCdf:
      write_cdf(selected, /*use_sir=*/false, options.sir_cap_db, out_path);
      break;
    case PlotKind::SirCdf:
      write_cdf(selected, /*use_sir=*/true, options.sir_cap_db, out_path);
      break;
  }
}

void write_gnuplot_script(const std::string& data_dir,
                          const std::vector<std::string>& data_files,
                          const std::string& script_path) {
  std::ofstream out(script_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open script file: " + script_path);

  out << "# Renders the emitted plot data files; run with: gnuplot plots.gp\n";
  out << "set terminal pngcairo size 900,600\n";
  out << "set grid\n\n";
  for (const std::string& file : data_files) {
    const std::string base =
        file.substr(0, file.find_last_of('.') == std::string::npos
                           ? file.size()
                           : file.find_last_of('.'));
    out << "set output '" << data_dir << "/" << base << ".png'\n";
    if (file.find("histogram") != std::string::npos) {
      out << "set style data histogram\n";
      out << "set style fill solid 0.8\n";
      out << "set ylabel 'mean spectral efficiency [bit/s/Hz]'\n";
      out << "plot '" << data_dir << "/" << file
          << "' using 4:xtic(sprintf('%s/%s/%s', "
             "stringcolumn(1), stringcolumn(2), stringcolumn(3))) notitle\n\n";
    } else {
      out << "set style data lines\n";
      out << "set xlabel 'value [dB]'\n";
      out << "set ylabel 'CDF'\n";
      out << "plot '" << data_dir << "/" << file
          << "' using 1:2 title '" << base << "'\n\n";
    }
  }
}

} // namespace leosim::plots
