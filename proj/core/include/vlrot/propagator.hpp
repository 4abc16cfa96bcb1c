#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vlrot/fields.hpp"
#include "vlrot/grid.hpp"
#include "vlrot/interpolation.hpp"
#include "vlrot/rotation.hpp"

// The splitting integrators. One Strang step advances f by h through nine 1-D
// advections (three half steps in v, three full steps in x, field solve,
// three half steps in v), each a constant-shift semi-Lagrangian update on
// pencils. In the physical frame the shifts are
//   c_x = v_x, ..., c_vx = E_x + w*v_y, c_vy = E_y - w*v_x, c_vz = E_z,
// frozen per stage. On the rotating grid the shifts come from the entrywise
// time integrals of D over the stage's absolute interval:
//   x-shift  = (int_{ta}^{tb} D^{-1}(t) dt . v_rot)_axis,
//   v-shift  = (int_{ta}^{tb} D(t) dt . E(x))_axis,
// so stages must carry absolute times, never step-local ones.

namespace vlrot {

enum class SchemeOrder { strang, fourth };

struct SchemeConfig {
  Frame frame = Frame::physical;
  SchemeOrder order = SchemeOrder::strang;
  InterpMethod interp{};
  double h = 0.0;
  double omega_c = 0.0;
  bool merge = true;  // rotating Strang only: fuse v half-steps across steps
};

/// Triple-jump composition coefficients; 2*gamma1 + gamma2 = 1.
double kraus_gamma1();
double kraus_gamma2();

enum class StageKind { advect, field_solve, source };

struct Stage {
  StageKind kind = StageKind::advect;
  Axis axis = Axis::x;  // advect only
  double t_a = 0.0;     // absolute stage interval; for field_solve/source
  double t_b = 0.0;     // stages this is the enclosing step interval
};

struct StagePlan {
  std::vector<Stage> stages;
  bool merged = false;
  int n_steps = 0;

  std::size_t advection_stage_count() const;
  std::size_t field_solve_count() const;
};

/// Stage sequence for n_steps steps starting at absolute time t0. The
/// physical-frame Strang plan has 9 advection stages per step; the merged
/// rotating plan fuses the trailing/leading v half-steps of adjacent steps
/// (9n - 3(n-1) advections over n steps). Fourth order concatenates Strang
/// sub-steps of lengths gamma1*h, gamma2*h, gamma1*h and is never merged.
StagePlan plan_stages(const SchemeConfig& scheme, int n_steps, double t0 = 0.0,
                      bool with_source = false);

/// One 1-D semi-Lagrangian advection: every pencil along `axis` is shifted by
/// its own constant shift (front buffer read, back buffer written, buffers
/// swapped). Lagrange interpolation enforces |shift| < spacing.
void advect_axis(DistributionFunction& f, Axis axis,
                 const std::function<double(const MultiIndex&)>& shift_of_pencil,
                 const InterpMethod& interp, const std::string& stage_tag = {});

struct GradientSourceParams {
  bool enabled = false;
  double kappa_n = 0.0;
  double kappa_T = 0.0;
};

/// Drift velocity of the gradient source term,
/// v* = B0 x (grad n / n) - B0 x (grad T / T * (3 - (v_perp^2 + v_z^2))/2)
/// with both gradients along e_x and B0 = omega_c*e_z (q = m = 1).
Vec3 gradient_drift_velocity(Vec3 v, double kappa_n, double kappa_T, double omega_c);

/// Executes the stage plans and owns the field state between stages.
class Propagator {
 public:
  Propagator(PhaseSpaceGrid grid, SchemeConfig scheme, const FieldSolver& solver,
             GradientSourceParams source = {});

  /// Solve fields from the initial condition (the leading v half-steps of the
  /// first step read them).
  void initialize_fields(const DistributionFunction& f);

  /// Advance n_steps from absolute time t0 (merged if the scheme says so).
  void advance(DistributionFunction& f, double t0, int n_steps);

  /// One unmerged scheme step (Strang or fourth-order composition).
  void step(DistributionFunction& f, double t0);

  void execute(DistributionFunction& f, const StagePlan& plan);

  const FieldState& fields() const { return fields_; }
  void set_fields(FieldState fields);
  const SchemeConfig& scheme() const { return scheme_; }

 private:
  void run_advect_stage(DistributionFunction& f, const Stage& st);
  void run_source_stage(DistributionFunction& f, const Stage& st);

  PhaseSpaceGrid grid_;
  SchemeConfig scheme_;
  const FieldSolver* solver_;
  GradientSourceParams source_;
  FieldState fields_;
  std::vector<double> source_fm_;      // background Maxwellian per velocity cell
  std::vector<double> source_vstar_;   // v*_y per velocity cell (|v|-dependent only)
};

/// Strang step in the physical frame (Algorithm form: v-halves, x-fulls,
/// field solve, v-halves). Convenience wrapper over Propagator.
void strang_step_physical(DistributionFunction& f, double h, double t0, double omega_c,
                          const FieldSolver& solver, FieldState& fields,
                          const InterpMethod& interp);

/// Strang step on the rotating grid with integrated-rotation shifts.
void strang_step_rotating(DistributionFunction& f, double h, double t0, double omega_c,
                          const FieldSolver& solver, FieldState& fields,
                          const InterpMethod& interp);

/// Triple-jump composition of an arbitrary base step.
void fourth_order_step(const std::function<void(DistributionFunction&, double, double)>& base_step,
                       DistributionFunction& f, double h, double t0);

/// Total mass sum(f) * prod(spacings) over non-degenerate axes.
double total_mass(const DistributionFunction& f);

}  // namespace vlrot
