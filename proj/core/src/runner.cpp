#include "vlrot/runner.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "vlrot/cases.hpp"
#include "vlrot/csv.hpp"
#include "vlrot/errors.hpp"
#include "vlrot/propagator.hpp"
#include "vlrot/snapshot.hpp"

namespace vlrot {

DistributionFunction initial_condition(const RunConfig& cfg) {
  const CaseParams& cp = cfg.case_params;
  const PhaseSpaceGrid& grid = cfg.grid;
  switch (cp.kind) {
    case CaseKind::rotation_only:
      return sample(grid, [](Vec3, Vec3 v) { return maxwellian_ic(v); });
    case CaseKind::const_fields: {
      const Vec3 k0 = cfg.smallest_modes();
      const double eps = cp.epsilon;
      return sample(grid, [k0, eps](Vec3 x, Vec3 v) {
        return plane_wave_ic(x, k0, eps) * maxwellian_ic(v);
      });
    }
    case CaseKind::nibw_stable:
    case CaseKind::nibw_unstable:
      return sample(grid, [&cp, &grid](Vec3 x, Vec3 v) { return nibw_ic(x, v, cp, grid); });
  }
  throw config_error("initial_condition: unknown case");
}

std::unique_ptr<FieldSolver> make_field_solver(const RunConfig& cfg) {
  switch (cfg.case_params.kind) {
    case CaseKind::rotation_only:
      return std::make_unique<ConstFieldSolver>(Vec3{});
    case CaseKind::const_fields:
      return std::make_unique<ConstFieldSolver>(cfg.case_params.E0);
    case CaseKind::nibw_stable:
    case CaseKind::nibw_unstable:
      return std::make_unique<QuasineutralSolver>();
  }
  throw config_error("make_field_solver: unknown case");
}

std::function<double(Vec3, Vec3)> analytic_reference(const RunConfig& cfg, double t) {
  const double omega = cfg.scheme.omega_c;
  const Frame frame = cfg.scheme.frame;
  switch (cfg.case_params.kind) {
    case CaseKind::rotation_only:
      return [t, frame, omega](Vec3, Vec3 v) { return analytic_rotation(v, t, frame, omega); };
    case CaseKind::const_fields: {
      const Vec3 e0 = cfg.case_params.E0;
      const Vec3 k0 = cfg.smallest_modes();
      const double eps = cfg.case_params.epsilon;
      return [t, frame, omega, e0, k0, eps](Vec3 x, Vec3 v) {
        return analytic_const_fields(x, v, t, frame, e0, omega, k0, eps);
      };
    }
    default:
      return nullptr;
  }
}

std::function<double(Vec3, Vec3)> reference_background(const RunConfig& cfg) {
  switch (cfg.case_params.kind) {
    case CaseKind::const_fields:
      // Unperturbed product state 1 * f0(v).
      return [](Vec3, Vec3 v) { return maxwellian_ic(v); };
    default:
      return nullptr;
  }
}

namespace {

struct EmitContext {
  const RunConfig* cfg = nullptr;
  CsvWriter* series = nullptr;
  bool to_disk = false;
};

void emit_output(const RunConfig& cfg, EmitContext& ctx, RunResult& result,
                 const DistributionFunction& f, const FieldState& fields, double t, int step) {
  const bool has_ref = static_cast<bool>(analytic_reference(cfg, 0.0));
  const double mass = total_mass(f);
  if (!std::isfinite(mass)) {
    std::ostringstream os;
    os << "non-finite mass at step " << step << " (t = " << t << ")";
    throw numerical_error(os.str());
  }

  result.times.push_back(t);
  result.mass.push_back(mass);
  const double energy = field_energy(fields, cfg.grid);
  result.field_energy.push_back(energy);

  double l2 = 0.0;
  if (has_ref) {
    l2 = l2_relative_error(f, analytic_reference(cfg, t), reference_background(cfg));
    result.l2_error.push_back(l2);
  }

  const auto n = density(f);
  result.density_series.times.push_back(t);
  result.density_series.frames.push_back(n);

  if (!ctx.to_disk) return;

  if (has_ref)
    ctx.series->row({t, mass, l2, energy});
  else
    ctx.series->row({t, mass, energy});

  std::ostringstream tag;
  tag << std::setw(6) << std::setfill('0') << step;
  const std::filesystem::path dir = cfg.output.directory;

  if (cfg.output.emit_density) {
    std::vector<std::string> header{"t"};
    for (int a = 0; a < 3; ++a)
      if (!cfg.grid.axes[a].degenerate()) header.push_back(axis_name(static_cast<Axis>(a)));
    header.push_back("n");
    CsvWriter w(dir / ("n_" + tag.str() + ".csv"), header);
    MultiIndex idx{};
    std::size_t xs = 0;
    for (idx[0] = 0; idx[0] < cfg.grid.axes[0].n_points; ++idx[0])
      for (idx[1] = 0; idx[1] < cfg.grid.axes[1].n_points; ++idx[1])
        for (idx[2] = 0; idx[2] < cfg.grid.axes[2].n_points; ++idx[2], ++xs) {
          std::vector<double> row{t};
          for (int a = 0; a < 3; ++a)
            if (!cfg.grid.axes[a].degenerate())
              row.push_back(cfg.grid.coordinate(static_cast<Axis>(a), idx[a]));
          row.push_back(n[xs]);
          w.row(row);
        }
    w.commit();
  }

  if (cfg.output.emit_snapshots) write_snapshot(dir / ("f_" + tag.str() + ".vlr"), f);
}

RunResult run_impl(const RunConfig& cfg, bool to_disk) {
  const int n_steps = cfg.n_steps();
  const int cadence = cfg.output.cadence_steps;

  DistributionFunction f = initial_condition(cfg);
  auto solver = make_field_solver(cfg);
  GradientSourceParams source;
  if (cfg.case_params.kind == CaseKind::nibw_unstable &&
      (cfg.case_params.kappa_n != 0.0 || cfg.case_params.kappa_T != 0.0)) {
    source.enabled = true;
    source.kappa_n = cfg.case_params.kappa_n;
    source.kappa_T = cfg.case_params.kappa_T;
  }
  Propagator prop(cfg.grid, cfg.scheme, *solver, source);
  prop.initialize_fields(f);

  RunResult result;
  std::unique_ptr<CsvWriter> series;
  EmitContext ctx{&cfg, nullptr, to_disk};
  if (to_disk) {
    std::filesystem::create_directories(cfg.output.directory);
    const bool has_ref = static_cast<bool>(analytic_reference(cfg, 0.0));
    std::vector<std::string> header =
        has_ref ? std::vector<std::string>{"t", "mass", "l2_error", "field_energy"}
                : std::vector<std::string>{"t", "mass", "field_energy"};
    series = std::make_unique<CsvWriter>(std::filesystem::path(cfg.output.directory) / "series.csv",
                                         header);
    ctx.series = series.get();
  }

  emit_output(cfg, ctx, result, f, prop.fields(), 0.0, 0);

  const double h = cfg.scheme.h;
  int step = 0;
  while (step < n_steps) {
    const int seg = std::min(cadence, n_steps - step);
    prop.advance(f, step * h, seg);
    step += seg;
    emit_output(cfg, ctx, result, f, prop.fields(), step * h, step);
  }

  if (to_disk) series->commit();
  result.f.emplace(std::move(f));
  return result;
}

}  // namespace

RunResult run_in_memory(const RunConfig& cfg) { return run_impl(cfg, false); }

RunResult run(const RunConfig& cfg) { return run_impl(cfg, true); }

ConvergenceStudyResult convergence_study(const RunConfig& cfg, const std::vector<double>& h_list,
                                         double h_ref, bool emit_artifacts) {
  if (h_list.empty()) throw config_error("convergence_study: empty h list");
  for (double h : h_list)
    if (!(h_ref < h)) throw config_error("convergence_study: h_ref must be below every h");

  auto run_at = [&cfg](double h) {
    RunConfig c = cfg;
    c.scheme.h = h;
    c.output.emit_density = false;
    c.output.emit_snapshots = false;
    c.n_steps();  // commensurability check, errors on non-dividing h
    return run_in_memory(c);
  };

  const RunResult ref = run_at(h_ref);
  const auto& f_ref = ref.final_state();

  // Error against the converged reference, normalized by the reference's own
  // perturbation relative to the background state.
  const auto background = reference_background(cfg);
  std::vector<double> ref_vals(f_ref.values().begin(), f_ref.values().end());
  std::vector<double> bg_vals;
  if (background) {
    DistributionFunction bg = sample(cfg.grid, background);
    bg_vals.assign(bg.values().begin(), bg.values().end());
  }

  ConvergenceStudyResult out;
  for (double h : h_list) {
    const RunResult r = run_at(h);
    out.samples.emplace_back(h, l2_relative_error(r.final_state(), ref_vals, bg_vals));
  }
  if (out.samples.size() >= 2) {
    out.report = convergence_order(out.samples);
  } else {
    // A single h gives no slope; flagged as undefined.
    out.report.two_point_m = std::numeric_limits<double>::quiet_NaN();
    out.report.least_squares_m = std::numeric_limits<double>::quiet_NaN();
  }

  if (emit_artifacts) {
    std::filesystem::create_directories(cfg.output.directory);
    CsvWriter w(std::filesystem::path(cfg.output.directory) / "convergence.csv",
                {"h", "err", "pairwise_order"});
    auto sorted = out.samples;
    std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return a.first > b.first; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double order = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                                  : (std::log(sorted[i - 1].second) - std::log(sorted[i].second)) /
                                        (std::log(sorted[i - 1].first) - std::log(sorted[i].first));
      w.row({sorted[i].first, sorted[i].second, order});
    }
    w.commit();
  }
  return out;
}

}  // namespace vlrot
