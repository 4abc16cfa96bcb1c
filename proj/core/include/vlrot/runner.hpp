#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "vlrot/config.hpp"
#include "vlrot/diagnostics.hpp"
#include "vlrot/fields.hpp"
#include "vlrot/grid.hpp"

// Experiment orchestration: initial condition, time loop with per-step field
// solve, diagnostics at the output cadence, artifact emission. All outputs
// are deterministic (no clocks, no RNG).

namespace vlrot {

struct RunResult {
  std::optional<DistributionFunction> f;  // final state
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> l2_error;  // empty unless the case has a reference solution
  std::vector<double> field_energy;
  TimeSeries density_series;  // density frames at cadence (spatial grid, flattened)

  const DistributionFunction& final_state() const { return *f; }
};

/// Initial condition of the configured case, sampled on the grid. At t = 0
/// the physical and rotating coordinates coincide, so both frames share it.
DistributionFunction initial_condition(const RunConfig& cfg);

/// The field closure of the configured case.
std::unique_ptr<FieldSolver> make_field_solver(const RunConfig& cfg);

/// Reference solution evaluator at time t, if the case has one.
std::function<double(Vec3, Vec3)> analytic_reference(const RunConfig& cfg, double t);

/// The background state the error normalization subtracts, if any.
std::function<double(Vec3, Vec3)> reference_background(const RunConfig& cfg);

/// Time loop without artifact emission.
RunResult run_in_memory(const RunConfig& cfg);

/// Time loop plus artifacts under cfg.output.directory: series.csv, and at
/// cadence optionally n_XXXXXX.csv density snapshots and f_XXXXXX.vlr binary
/// snapshots. Returns the in-memory result as well.
RunResult run(const RunConfig& cfg);

struct ConvergenceStudyResult {
  std::vector<std::pair<double, double>> samples;  // (h, error vs reference)
  ConvergenceReport report;
};

/// Runs the configured scheme at each h plus the reference step size, then
/// measures L2 errors against the converged reference at t_final, normalized
/// by the reference's own deviation from the background state. Emits
/// convergence.csv when emit_artifacts is set.
ConvergenceStudyResult convergence_study(const RunConfig& cfg, const std::vector<double>& h_list,
                                         double h_ref, bool emit_artifacts = true);

}  // namespace vlrot
