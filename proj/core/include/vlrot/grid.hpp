#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vlrot/rotation.hpp"

// Phase-space grid over the fixed axis order (x, y, z, vx, vy, vz) and the
// distribution function stored on it. Values are row-major in that order, so
// velocity axes vary fastest; each spatial point owns one contiguous velocity
// block. All axes are periodic without a duplicated endpoint: spacing = L/n.
// Axes with n = 1 are degenerate; sweeps skip them and their coordinate is
// just `min`.

namespace vlrot {

enum class AxisKind : std::uint32_t { spatial = 0, velocity = 1 };

enum class Axis : int { x = 0, y = 1, z = 2, vx = 3, vy = 4, vz = 5 };

const char* axis_name(Axis a);
bool is_velocity_axis(Axis a);

struct AxisSpec {
  AxisKind kind = AxisKind::spatial;
  Axis label = Axis::x;
  int n_points = 1;
  double min = 0.0;
  double length = 1.0;

  double spacing() const { return length / n_points; }
  bool degenerate() const { return n_points == 1; }
};

using MultiIndex = std::array<int, 6>;

struct PhaseSpaceGrid {
  std::array<AxisSpec, 6> axes;

  const AxisSpec& axis(Axis a) const { return axes[static_cast<int>(a)]; }
  int extent(Axis a) const { return axis(a).n_points; }

  std::size_t total() const;
  std::size_t spatial_size() const;   // nx*ny*nz
  std::size_t velocity_size() const;  // nvx*nvy*nvz

  /// Coordinate of index j on an axis: min + j*spacing.
  double coordinate(Axis a, int j) const { return axis(a).min + j * axis(a).spacing(); }

  Vec3 position(const MultiIndex& idx) const;
  Vec3 velocity(const MultiIndex& idx) const;

  /// Flat offset of a multi-index (row-major, vz fastest).
  std::size_t flat_index(const MultiIndex& idx) const;

  /// Stride of one step along `a` in the flat layout.
  std::size_t stride(Axis a) const;

  /// Flat offset on the spatial grid (x,y,z row-major) of a multi-index.
  std::size_t spatial_flat_index(const MultiIndex& idx) const;

  /// Product of spacings over non-degenerate axes of the given kind
  /// (degenerate axes contribute weight 1).
  double cell_measure(AxisKind kind) const;
  double cell_measure() const;  // both kinds
};

/// Validates the axis list and returns the grid. The six specs must carry the
/// labels x,y,z,vx,vy,vz in order with matching kinds.
PhaseSpaceGrid make_grid(const std::array<AxisSpec, 6>& axes);

/// Convenience: build the six AxisSpecs from per-axis (n, min, length).
PhaseSpaceGrid make_grid(const std::array<int, 6>& n, const std::array<double, 6>& min,
                         const std::array<double, 6>& length);

/// Distribution function on a PhaseSpaceGrid, double-buffered so a sweep can
/// read the front buffer while writing disjoint pencils of the back buffer.
class DistributionFunction {
 public:
  explicit DistributionFunction(PhaseSpaceGrid grid);

  const PhaseSpaceGrid& grid() const { return grid_; }

  std::span<double> values() { return front_ == 0 ? std::span<double>(buf0_) : std::span<double>(buf1_); }
  std::span<const double> values() const {
    return front_ == 0 ? std::span<const double>(buf0_) : std::span<const double>(buf1_);
  }
  std::span<double> back_values() { return front_ == 0 ? std::span<double>(buf1_) : std::span<double>(buf0_); }

  /// After a sweep has written every cell of the back buffer, promote it.
  void swap_buffers() { front_ ^= 1; }

  int front_tag() const { return front_; }

  double operator[](std::size_t i) const { return values()[i]; }

 private:
  PhaseSpaceGrid grid_;
  std::vector<double> buf0_, buf1_;
  int front_ = 0;
};

/// Evaluates fn at every node and stores the result in the front buffer.
/// Throws numerical_error naming the node if fn returns a non-finite value.
DistributionFunction sample(const PhaseSpaceGrid& grid,
                            const std::function<double(Vec3, Vec3)>& fn);

/// Enumeration of the 1-D pencils along one axis. Pencil p has its cells at
/// base_offset(p) + j*stride for j in [0, n). The decomposition partitions
/// the cell set exactly.
class PencilSet {
 public:
  PencilSet(const PhaseSpaceGrid& grid, Axis axis);

  Axis axis() const { return axis_; }
  std::size_t count() const { return outer_count_ * inner_count_; }
  std::size_t length() const { return n_; }
  std::size_t stride() const { return stride_; }

  /// Outer/inner split of the pencil index: cells of pencil (o, i) start at
  /// o*n*inner + i and step by inner. Useful for batched transforms.
  std::size_t outer_count() const { return outer_count_; }
  std::size_t inner_count() const { return inner_count_; }

  std::size_t base_offset(std::size_t p) const {
    const std::size_t o = p / inner_count_, i = p % inner_count_;
    return o * n_ * inner_count_ + i;
  }

  /// Multi-index of the pencil's base cell (axis component = 0).
  MultiIndex base_index(std::size_t p) const;

 private:
  const PhaseSpaceGrid* grid_;
  Axis axis_;
  std::size_t n_, stride_, outer_count_, inner_count_;
};

/// Reads the pencil along `axis` at `base` from the front buffer.
/// The axis must be non-degenerate and `base` valid on all other axes.
void read_pencil(const DistributionFunction& f, Axis axis, const MultiIndex& base,
                 std::span<double> out);

/// Writes the pencil along `axis` at `base` into the back buffer.
void write_pencil(DistributionFunction& f, Axis axis, const MultiIndex& base,
                  std::span<const double> in);

}  // namespace vlrot
