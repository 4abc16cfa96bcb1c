// vlrot command line driver.
//
//   vlrot run <config>
//   vlrot converge <config> --h 0.2,0.1,0.05,0.025 --href 0.0025
//   vlrot spectrum <series-dir> --axis y [--no-hann]
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical abort.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include "vlrot/csv.hpp"
#include "vlrot/diagnostics.hpp"
#include "vlrot/errors.hpp"
#include "vlrot/runner.hpp"

namespace {

std::vector<double> parse_h_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw vlrot::config_error("--h: cannot parse '" + item + "' as a real number");
    }
  }
  if (out.empty()) throw vlrot::config_error("--h: empty list");
  return out;
}

int cmd_run(const std::string& config_path) {
  const vlrot::RunConfig cfg = vlrot::parse_config(config_path);
  const vlrot::RunResult result = vlrot::run(cfg);
  std::cout << "run complete: " << result.times.size() << " output rows, final t = "
            << result.times.back() << ", artifacts in " << cfg.output.directory << "\n";
  return 0;
}

int cmd_converge(const std::string& config_path, const std::string& h_text, double h_ref) {
  const vlrot::RunConfig cfg = vlrot::parse_config(config_path);
  const auto h_list = parse_h_list(h_text);
  const auto result = vlrot::convergence_study(cfg, h_list, h_ref);
  for (const auto& [h, err] : result.samples)
    std::cout << "h = " << vlrot::format_double(h) << "  err = " << vlrot::format_double(err)
              << "\n";
  if (std::isnan(result.report.two_point_m))
    std::cout << "two-point m = undefined (single h)\n";
  else
    std::cout << "two-point m = " << vlrot::format_double(result.report.two_point_m)
              << "  (least-squares m = " << vlrot::format_double(result.report.least_squares_m)
              << ")\n";
  std::cout << "wrote " << cfg.output.directory << "/convergence.csv\n";
  return 0;
}

// Rebuilds the density time series from n_XXXXXX.csv snapshots: per snapshot
// the density is averaged over the other spatial axes, giving n(axis, t).
vlrot::TimeSeries load_density_series(const std::filesystem::path& dir, const std::string& axis,
                                      double& length_out) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(dir))
    throw vlrot::config_error("spectrum: " + dir.string() + " is not a directory");
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("n_", 0) == 0 && e.path().extension() == ".csv") files.push_back(e.path());
  }
  if (files.empty())
    throw vlrot::config_error("spectrum: no n_XXXXXX.csv snapshots in " + dir.string() +
                              " (run with output.emit_density = true)");
  std::sort(files.begin(), files.end());

  vlrot::TimeSeries series;
  std::vector<double> coords;
  for (const auto& path : files) {
    const auto rows = vlrot::read_csv(path);
    if (rows.size() < 2) throw vlrot::config_error("spectrum: empty snapshot " + path.string());
    const auto& header = rows.front();
    const auto axis_it = std::find(header.begin(), header.end(), axis);
    const auto n_it = std::find(header.begin(), header.end(), "n");
    if (axis_it == header.end())
      throw vlrot::config_error("spectrum: snapshot has no '" + axis + "' column: " +
                                path.string());
    if (n_it == header.end())
      throw vlrot::config_error("spectrum: snapshot has no 'n' column: " + path.string());
    const std::size_t axis_col = axis_it - header.begin();
    const std::size_t n_col = n_it - header.begin();

    std::map<double, std::pair<double, std::size_t>> acc;  // coord -> (sum, count)
    double t = 0.0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      t = std::stod(rows[r].at(0));
      auto& slot = acc[std::stod(rows[r].at(axis_col))];
      slot.first += std::stod(rows[r].at(n_col));
      slot.second += 1;
    }
    std::vector<double> frame;
    std::vector<double> cs;
    for (const auto& [c, sum_count] : acc) {
      cs.push_back(c);
      frame.push_back(sum_count.first / sum_count.second);
    }
    if (coords.empty())
      coords = cs;
    else if (coords != cs)
      throw vlrot::config_error("spectrum: snapshot grids differ: " + path.string());
    series.times.push_back(t);
    series.frames.push_back(std::move(frame));
  }
  if (coords.size() < 2) throw vlrot::config_error("spectrum: axis '" + axis + "' is degenerate");
  length_out = (coords[1] - coords[0]) * coords.size();
  return series;
}

int cmd_spectrum(const std::string& dir, const std::string& axis, bool hann) {
  double length = 0.0;
  const vlrot::TimeSeries series = load_density_series(dir, axis, length);
  vlrot::SpectrumOptions opt;
  opt.hann_window = hann;
  const vlrot::SpectrumGrid spec = vlrot::dispersion_spectrum(series, length, opt);

  vlrot::CsvWriter w(std::filesystem::path(dir) / "spectrum.csv", {"k", "omega", "magnitude"});
  for (std::size_t ik = 0; ik < spec.k.size(); ++ik)
    for (std::size_t iw = 0; iw < spec.omega.size(); ++iw)
      w.row({spec.k[ik], spec.omega[iw], spec.at(ik, iw)});
  w.commit();
  std::cout << "wrote " << dir << "/spectrum.csv (" << spec.k.size() << " k bins x "
            << spec.omega.size() << " omega bins)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-Lagrangian Vlasov solver with a rotating velocity grid"};
  app.require_subcommand(1);

  std::string config_path, h_text = "0.2,0.1,0.05,0.025", series_dir, axis = "y";
  double h_ref = 0.0025;
  bool no_hann = false;

  auto* run_cmd = app.add_subcommand("run", "Execute a configured experiment");
  run_cmd->add_option("config", config_path, "Run configuration file")->required();

  auto* conv_cmd = app.add_subcommand("converge", "Convergence study over a list of time steps");
  conv_cmd->add_option("config", config_path, "Run configuration file")->required();
  conv_cmd->add_option("--h", h_text, "Comma-separated list of time steps");
  conv_cmd->add_option("--href", h_ref, "Reference (converged) time step");

  auto* spec_cmd = app.add_subcommand("spectrum", "Dispersion spectrum from density snapshots");
  spec_cmd->add_option("series-dir", series_dir, "Directory with n_XXXXXX.csv snapshots")
      ->required();
  spec_cmd->add_option("--axis", axis, "Spatial axis of the wavenumber (default y)");
  spec_cmd->add_flag("--no-hann", no_hann, "Disable the temporal Hann window");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path);
    if (conv_cmd->parsed()) return cmd_converge(config_path, h_text, h_ref);
    if (spec_cmd->parsed()) return cmd_spectrum(series_dir, axis, !no_hann);
  } catch (const vlrot::config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const vlrot::numerical_error& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
