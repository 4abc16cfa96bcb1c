#include "vlrot/grid.hpp"

#include <cmath>
#include <sstream>

#include "vlrot/errors.hpp"

namespace vlrot {

const char* axis_name(Axis a) {
  static const char* names[6] = {"x", "y", "z", "vx", "vy", "vz"};
  return names[static_cast<int>(a)];
}

bool is_velocity_axis(Axis a) { return static_cast<int>(a) >= 3; }

std::size_t PhaseSpaceGrid::total() const {
  std::size_t t = 1;
  for (const auto& ax : axes) t *= static_cast<std::size_t>(ax.n_points);
  return t;
}

std::size_t PhaseSpaceGrid::spatial_size() const {
  return static_cast<std::size_t>(axes[0].n_points) * axes[1].n_points * axes[2].n_points;
}

std::size_t PhaseSpaceGrid::velocity_size() const {
  return static_cast<std::size_t>(axes[3].n_points) * axes[4].n_points * axes[5].n_points;
}

Vec3 PhaseSpaceGrid::position(const MultiIndex& idx) const {
  return {coordinate(Axis::x, idx[0]), coordinate(Axis::y, idx[1]), coordinate(Axis::z, idx[2])};
}

Vec3 PhaseSpaceGrid::velocity(const MultiIndex& idx) const {
  return {coordinate(Axis::vx, idx[3]), coordinate(Axis::vy, idx[4]), coordinate(Axis::vz, idx[5])};
}

std::size_t PhaseSpaceGrid::flat_index(const MultiIndex& idx) const {
  std::size_t f = 0;
  for (int a = 0; a < 6; ++a) f = f * axes[a].n_points + idx[a];
  return f;
}

std::size_t PhaseSpaceGrid::stride(Axis a) const {
  std::size_t s = 1;
  for (int b = static_cast<int>(a) + 1; b < 6; ++b) s *= axes[b].n_points;
  return s;
}

std::size_t PhaseSpaceGrid::spatial_flat_index(const MultiIndex& idx) const {
  return (static_cast<std::size_t>(idx[0]) * axes[1].n_points + idx[1]) * axes[2].n_points + idx[2];
}

double PhaseSpaceGrid::cell_measure(AxisKind kind) const {
  double m = 1.0;
  for (const auto& ax : axes)
    if (ax.kind == kind && !ax.degenerate()) m *= ax.spacing();
  return m;
}

double PhaseSpaceGrid::cell_measure() const {
  return cell_measure(AxisKind::spatial) * cell_measure(AxisKind::velocity);
}

PhaseSpaceGrid make_grid(const std::array<AxisSpec, 6>& axes) {
  for (int a = 0; a < 6; ++a) {
    const AxisSpec& ax = axes[a];
    if (static_cast<int>(ax.label) != a)
      throw config_error("grid axes must be ordered x,y,z,vx,vy,vz");
    if (ax.kind != (a < 3 ? AxisKind::spatial : AxisKind::velocity))
      throw config_error(std::string("axis ") + axis_name(ax.label) + " has the wrong kind");
    if (ax.n_points < 1)
      throw config_error(std::string("axis ") + axis_name(ax.label) + ": n_points must be >= 1");
    if (!(ax.length > 0.0) || !std::isfinite(ax.length))
      throw config_error(std::string("axis ") + axis_name(ax.label) + ": length must be > 0");
    if (!std::isfinite(ax.min))
      throw config_error(std::string("axis ") + axis_name(ax.label) + ": min must be finite");
  }
  PhaseSpaceGrid g;
  g.axes = axes;
  return g;
}

PhaseSpaceGrid make_grid(const std::array<int, 6>& n, const std::array<double, 6>& min,
                         const std::array<double, 6>& length) {
  std::array<AxisSpec, 6> axes;
  for (int a = 0; a < 6; ++a) {
    axes[a].kind = a < 3 ? AxisKind::spatial : AxisKind::velocity;
    axes[a].label = static_cast<Axis>(a);
    axes[a].n_points = n[a];
    axes[a].min = min[a];
    axes[a].length = length[a];
  }
  return make_grid(axes);
}

DistributionFunction::DistributionFunction(PhaseSpaceGrid grid)
    : grid_(std::move(grid)), buf0_(grid_.total(), 0.0), buf1_(grid_.total(), 0.0) {}

DistributionFunction sample(const PhaseSpaceGrid& grid,
                            const std::function<double(Vec3, Vec3)>& fn) {
  DistributionFunction f(grid);
  auto vals = f.values();
  MultiIndex idx{};
  const auto& ax = grid.axes;
  std::size_t flat = 0;
  for (idx[0] = 0; idx[0] < ax[0].n_points; ++idx[0])
    for (idx[1] = 0; idx[1] < ax[1].n_points; ++idx[1])
      for (idx[2] = 0; idx[2] < ax[2].n_points; ++idx[2]) {
        const Vec3 x = grid.position(idx);
        for (idx[3] = 0; idx[3] < ax[3].n_points; ++idx[3])
          for (idx[4] = 0; idx[4] < ax[4].n_points; ++idx[4])
            for (idx[5] = 0; idx[5] < ax[5].n_points; ++idx[5]) {
              const double v = fn(x, grid.velocity(idx));
              if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "sample: non-finite value at node (";
                for (int a = 0; a < 6; ++a) os << (a ? "," : "") << idx[a];
                os << ")";
                throw numerical_error(os.str());
              }
              vals[flat++] = v;
            }
      }
  return f;
}

PencilSet::PencilSet(const PhaseSpaceGrid& grid, Axis axis) : grid_(&grid), axis_(axis) {
  if (grid.axis(axis).degenerate())
    throw numerical_error(std::string("pencil access along degenerate axis ") + axis_name(axis));
  n_ = grid.extent(axis);
  stride_ = grid.stride(axis);
  inner_count_ = stride_;
  outer_count_ = grid.total() / (n_ * inner_count_);
}

MultiIndex PencilSet::base_index(std::size_t p) const {
  std::size_t off = base_offset(p);
  MultiIndex idx{};
  for (int a = 5; a >= 0; --a) {
    const int n = grid_->axes[a].n_points;
    idx[a] = static_cast<int>(off % n);
    off /= n;
  }
  idx[static_cast<int>(axis_)] = 0;
  return idx;
}

namespace {

std::size_t pencil_base_offset(const PhaseSpaceGrid& g, Axis axis, MultiIndex base) {
  base[static_cast<int>(axis)] = 0;
  return g.flat_index(base);
}

}  // namespace

void read_pencil(const DistributionFunction& f, Axis axis, const MultiIndex& base,
                 std::span<double> out) {
  const PhaseSpaceGrid& g = f.grid();
  if (g.axis(axis).degenerate())
    throw numerical_error(std::string("read_pencil along degenerate axis ") + axis_name(axis));
  const std::size_t stride = g.stride(axis);
  const std::size_t n = g.extent(axis);
  const std::size_t off = pencil_base_offset(g, axis, base);
  auto vals = f.values();
  for (std::size_t j = 0; j < n; ++j) out[j] = vals[off + j * stride];
}

void write_pencil(DistributionFunction& f, Axis axis, const MultiIndex& base,
                  std::span<const double> in) {
  const PhaseSpaceGrid& g = f.grid();
  if (g.axis(axis).degenerate())
    throw numerical_error(std::string("write_pencil along degenerate axis ") + axis_name(axis));
  const std::size_t stride = g.stride(axis);
  const std::size_t n = g.extent(axis);
  const std::size_t off = pencil_base_offset(g, axis, base);
  auto back = f.back_values();
  for (std::size_t j = 0; j < n; ++j) back[off + j * stride] = in[j];
}

}  // namespace vlrot
