#include "vlrot/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "vlrot/cases.hpp"
#include "vlrot/errors.hpp"
#include "vlrot/fft.hpp"
#include "vlrot/parallel.hpp"

namespace vlrot {

double kraus_gamma1() { return 1.0 / (2.0 - std::cbrt(2.0)); }
double kraus_gamma2() { return -std::cbrt(2.0) / (2.0 - std::cbrt(2.0)); }

std::size_t StagePlan::advection_stage_count() const {
  std::size_t c = 0;
  for (const auto& s : stages)
    if (s.kind == StageKind::advect) ++c;
  return c;
}

std::size_t StagePlan::field_solve_count() const {
  std::size_t c = 0;
  for (const auto& s : stages)
    if (s.kind == StageKind::field_solve) ++c;
  return c;
}

namespace {

constexpr Axis kVelLeading[3] = {Axis::vx, Axis::vy, Axis::vz};
constexpr Axis kVelTrailing[3] = {Axis::vz, Axis::vy, Axis::vx};
constexpr Axis kSpatial[3] = {Axis::x, Axis::y, Axis::z};

void append_strang_step(StagePlan& plan, double t0, double h, bool with_source) {
  const double tm = t0 + 0.5 * h, t1 = t0 + h;
  for (Axis a : kVelLeading) plan.stages.push_back({StageKind::advect, a, t0, tm});
  for (Axis a : kSpatial) plan.stages.push_back({StageKind::advect, a, t0, t1});
  plan.stages.push_back({StageKind::field_solve, Axis::x, t0, t1});
  if (with_source) plan.stages.push_back({StageKind::source, Axis::x, t0, t1});
  for (Axis a : kVelTrailing) plan.stages.push_back({StageKind::advect, a, tm, t1});
}

}  // namespace

StagePlan plan_stages(const SchemeConfig& scheme, int n_steps, double t0, bool with_source) {
  if (n_steps < 1) throw config_error("plan_stages: n_steps must be >= 1");
  StagePlan plan;
  plan.n_steps = n_steps;
  const double h = scheme.h;

  if (scheme.order == SchemeOrder::fourth) {
    const double g1 = kraus_gamma1(), g2 = kraus_gamma2();
    double t = t0;
    for (int k = 0; k < n_steps; ++k) {
      for (double g : {g1, g2, g1}) {
        append_strang_step(plan, t, g * h, with_source);
        t += g * h;
      }
    }
    return plan;
  }

  const bool merge = scheme.frame == Frame::rotating && scheme.merge;
  if (!merge) {
    for (int k = 0; k < n_steps; ++k) append_strang_step(plan, t0 + k * h, h, with_source);
    return plan;
  }

  // First-same-as-last: the trailing v half-step of step k and the leading v
  // half-step of step k+1 act on the same axes over adjacent intervals, and
  // on the rotating grid all v flows commute, so they fuse into one stage
  // spanning [t_k + h/2, t_{k+1} + h/2].
  plan.merged = true;
  for (Axis a : kVelLeading) plan.stages.push_back({StageKind::advect, a, t0, t0 + 0.5 * h});
  for (int k = 0; k < n_steps; ++k) {
    const double tk = t0 + k * h, tk1 = tk + h;
    for (Axis a : kSpatial) plan.stages.push_back({StageKind::advect, a, tk, tk1});
    plan.stages.push_back({StageKind::field_solve, Axis::x, tk, tk1});
    if (with_source) plan.stages.push_back({StageKind::source, Axis::x, tk, tk1});
    const double vb = tk + 0.5 * h;
    const double ve = (k + 1 < n_steps) ? tk1 + 0.5 * h : tk1;
    for (Axis a : kVelTrailing) plan.stages.push_back({StageKind::advect, a, vb, ve});
  }
  return plan;
}

namespace {

StridedRealFFT& axis_engine(int n, std::size_t inner, std::size_t outer) {
  static std::map<std::tuple<int, std::size_t, std::size_t>, std::unique_ptr<StridedRealFFT>>
      cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_tuple(n, inner, outer);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<StridedRealFFT>(n, inner, outer)).first;
  return *it->second;
}

std::string pencil_context(const std::string& tag, const MultiIndex& base, double shift) {
  std::ostringstream os;
  if (!tag.empty()) os << tag << ": ";
  os << "pencil base (";
  for (int a = 0; a < 6; ++a) os << (a ? "," : "") << base[a];
  os << "), shift = " << shift;
  return os.str();
}

}  // namespace

void advect_axis(DistributionFunction& f, Axis axis,
                 const std::function<double(const MultiIndex&)>& shift_of_pencil,
                 const InterpMethod& interp, const std::string& stage_tag) {
  const PhaseSpaceGrid& grid = f.grid();
  const AxisSpec& ax = grid.axis(axis);
  if (ax.degenerate())
    throw numerical_error(std::string("advect_axis: degenerate axis ") + axis_name(axis));

  const int n = ax.n_points;
  const double spacing = ax.spacing();
  PencilSet ps(grid, axis);
  const std::size_t count = ps.count(), inner = ps.inner_count(), outer = ps.outer_count();

  std::vector<double> shifts(count);
  std::exception_ptr err;
  std::mutex err_mutex;
  parallel_for(count, [&](std::size_t b, std::size_t e) {
    try {
      for (std::size_t p = b; p < e; ++p) {
        const MultiIndex base = ps.base_index(p);
        const double s = shift_of_pencil(base);
        if (!std::isfinite(s))
          throw numerical_error("advect_axis: non-finite shift, " +
                                pencil_context(stage_tag, base, s));
        if (interp.kind == InterpKind::lagrange && !(std::abs(s) < spacing))
          throw numerical_error("advect_axis: CFL violation (|shift| >= spacing), " +
                                pencil_context(stage_tag, base, s));
        shifts[p] = s;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!err) err = std::current_exception();
    }
  });
  if (err) std::rethrow_exception(err);

  // A stage whose shifts all vanish is the identity; skip it.
  if (std::all_of(shifts.begin(), shifts.end(), [](double s) { return s == 0.0; })) return;

  auto front = f.values();
  auto back = f.back_values();

  if (interp.kind == InterpKind::trig) {
    StridedRealFFT& engine = axis_engine(n, inner, outer);
    thread_local std::vector<cplx> scratch;
    scratch.resize(engine.complex_size());
    engine.forward(front.data(), scratch.data());
    const std::size_t bins_per_outer = static_cast<std::size_t>(n / 2 + 1) * inner;
    const double phase_scale = 2.0 * std::numbers::pi / (n * spacing);
    const double norm = 1.0 / n;
    parallel_for(count, [&](std::size_t b, std::size_t e) {
      for (std::size_t p = b; p < e; ++p) {
        const std::size_t o = p / inner, i = p % inner;
        apply_spectral_shift(scratch.data() + o * bins_per_outer + i, n, inner,
                             shifts[p] * phase_scale, norm);
      }
    });
    engine.inverse(scratch.data(), back.data());
  } else {
    if (n < interp.q)
      throw numerical_error(std::string("advect_axis: axis ") + axis_name(axis) +
                            " has fewer points than the Lagrange stencil");
    parallel_for(count, [&](std::size_t b, std::size_t e) {
      std::vector<double> line(n), out(n);
      for (std::size_t p = b; p < e; ++p) {
        const std::size_t base_off = ps.base_offset(p);
        for (int j = 0; j < n; ++j) line[j] = front[base_off + j * inner];
        shift_line_lagrange(line, shifts[p], interp.q, spacing, out);
        for (int j = 0; j < n; ++j) back[base_off + j * inner] = out[j];
      }
    });
  }
  f.swap_buffers();
}

Vec3 gradient_drift_velocity(Vec3 v, double kappa_n, double kappa_T, double omega_c) {
  const Vec3 b0{0.0, 0.0, omega_c};
  const Vec3 grad_n_over_n{kappa_n, 0.0, 0.0};
  const Vec3 grad_T_over_T{kappa_T, 0.0, 0.0};
  const double vperp2_plus_vz2 = v.x * v.x + v.y * v.y + v.z * v.z;
  const double temp_factor = 0.5 * (3.0 - vperp2_plus_vz2);
  return cross(b0, grad_n_over_n) - temp_factor * cross(b0, grad_T_over_T);
}

Propagator::Propagator(PhaseSpaceGrid grid, SchemeConfig scheme, const FieldSolver& solver,
                       GradientSourceParams source)
    : grid_(std::move(grid)),
      scheme_(scheme),
      solver_(&solver),
      source_(source),
      fields_(FieldState::zero(grid_)) {
  if (!(scheme_.h > 0.0)) throw config_error("Propagator: time step must be > 0");
}

void Propagator::initialize_fields(const DistributionFunction& f) { solver_->solve(f, fields_); }

void Propagator::set_fields(FieldState fields) { fields_ = std::move(fields); }

void Propagator::advance(DistributionFunction& f, double t0, int n_steps) {
  execute(f, plan_stages(scheme_, n_steps, t0, source_.enabled));
}

void Propagator::step(DistributionFunction& f, double t0) { advance(f, t0, 1); }

void Propagator::execute(DistributionFunction& f, const StagePlan& plan) {
  for (const Stage& st : plan.stages) {
    switch (st.kind) {
      case StageKind::advect:
        run_advect_stage(f, st);
        break;
      case StageKind::field_solve:
        solver_->solve(f, fields_);
        break;
      case StageKind::source:
        run_source_stage(f, st);
        break;
    }
  }
}

void Propagator::run_advect_stage(DistributionFunction& f, const Stage& st) {
  if (grid_.axis(st.axis).degenerate()) return;  // degenerate axes carry no advection

  const int a = static_cast<int>(st.axis);
  const double dt = st.t_b - st.t_a;
  const double omega = scheme_.omega_c;
  std::function<double(const MultiIndex&)> shift_fn;

  if (scheme_.frame == Frame::physical) {
    if (a < 3) {
      // c_x = v_x etc.: the conjugate velocity coordinate, frozen per pencil.
      const Axis va = static_cast<Axis>(a + 3);
      shift_fn = [this, dt, va](const MultiIndex& base) {
        return dt * grid_.coordinate(va, base[static_cast<int>(va)]);
      };
    } else if (st.axis == Axis::vx) {
      shift_fn = [this, dt, omega](const MultiIndex& base) {
        const std::size_t xs = grid_.spatial_flat_index(base);
        return dt * (fields_.E[0][xs] + omega * grid_.coordinate(Axis::vy, base[4]));
      };
    } else if (st.axis == Axis::vy) {
      shift_fn = [this, dt, omega](const MultiIndex& base) {
        const std::size_t xs = grid_.spatial_flat_index(base);
        return dt * (fields_.E[1][xs] - omega * grid_.coordinate(Axis::vx, base[3]));
      };
    } else {
      shift_fn = [this, dt](const MultiIndex& base) {
        return dt * fields_.E[2][grid_.spatial_flat_index(base)];
      };
    }
  } else {
    if (a < 3) {
      const RotationMatrix idinv = integrated_rotation(omega, st.t_a, st.t_b, true);
      shift_fn = [this, idinv, a](const MultiIndex& base) {
        return (idinv * grid_.velocity(base))[a];
      };
    } else {
      const RotationMatrix id = integrated_rotation(omega, st.t_a, st.t_b, false);
      shift_fn = [this, id, a](const MultiIndex& base) {
        const std::size_t xs = grid_.spatial_flat_index(base);
        const Vec3 e{fields_.E[0][xs], fields_.E[1][xs], fields_.E[2][xs]};
        return (id * e)[a - 3];
      };
    }
  }

  std::ostringstream tag;
  tag << "stage advect " << axis_name(st.axis) << " [" << st.t_a << "," << st.t_b << "]";
  advect_axis(f, st.axis, shift_fn, scheme_.interp, tag.str());
}

void Propagator::run_source_stage(DistributionFunction& f, const Stage& st) {
  const std::size_t ns = grid_.spatial_size(), nv = grid_.velocity_size();
  if (fields_.phi.size() != ns)
    throw numerical_error("source stage requires a potential (quasi-neutral field solve)");

  if (source_fm_.empty()) {
    source_fm_.resize(nv);
    source_vstar_.resize(nv);
    const int vdims = active_velocity_dims(grid_);
    MultiIndex idx{};
    std::size_t j = 0;
    for (idx[3] = 0; idx[3] < grid_.axes[3].n_points; ++idx[3])
      for (idx[4] = 0; idx[4] < grid_.axes[4].n_points; ++idx[4])
        for (idx[5] = 0; idx[5] < grid_.axes[5].n_points; ++idx[5], ++j) {
          const Vec3 v = grid_.velocity(idx);
          source_fm_[j] = centered_maxwellian(v, vdims);
          // v* depends on v only through v_perp^2 + v_z^2 = |v|^2, which the
          // frame map D^{-1}(t) preserves, so physical and rotating
          // coordinates give the same factor.
          source_vstar_[j] =
              gradient_drift_velocity(v, source_.kappa_n, source_.kappa_T, scheme_.omega_c).y;
        }
  }

  const double h = st.t_b - st.t_a;
  const auto grad = spatial_gradient(fields_.phi, grid_);
  auto vals = f.values();
  parallel_for(ns, [&](std::size_t b, std::size_t e) {
    for (std::size_t xs = b; xs < e; ++xs) {
      const double gy = grad[1][xs];
      double* block = vals.data() + xs * nv;
      for (std::size_t j = 0; j < nv; ++j)
        block[j] += h * source_vstar_[j] * gy * source_fm_[j];
    }
  });
}

void strang_step_physical(DistributionFunction& f, double h, double t0, double omega_c,
                          const FieldSolver& solver, FieldState& fields,
                          const InterpMethod& interp) {
  SchemeConfig sc{Frame::physical, SchemeOrder::strang, interp, h, omega_c, false};
  Propagator prop(f.grid(), sc, solver);
  prop.set_fields(fields);
  prop.advance(f, t0, 1);
  fields = prop.fields();
}

void strang_step_rotating(DistributionFunction& f, double h, double t0, double omega_c,
                          const FieldSolver& solver, FieldState& fields,
                          const InterpMethod& interp) {
  SchemeConfig sc{Frame::rotating, SchemeOrder::strang, interp, h, omega_c, false};
  Propagator prop(f.grid(), sc, solver);
  prop.set_fields(fields);
  prop.advance(f, t0, 1);
  fields = prop.fields();
}

void fourth_order_step(const std::function<void(DistributionFunction&, double, double)>& base_step,
                       DistributionFunction& f, double h, double t0) {
  const double g1 = kraus_gamma1(), g2 = kraus_gamma2();
  base_step(f, t0, g1 * h);
  base_step(f, t0 + g1 * h, g2 * h);
  base_step(f, t0 + (g1 + g2) * h, g1 * h);
}

double total_mass(const DistributionFunction& f) {
  const double w = f.grid().cell_measure();
  double acc = 0.0;
  for (double v : f.values()) acc += v;
  return acc * w;
}

}  // namespace vlrot
