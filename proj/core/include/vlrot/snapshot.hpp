#pragma once

#include <filesystem>

#include "vlrot/grid.hpp"

// Binary snapshot format "VLR1", little-endian:
//   char[4]  magic "VLR1"
//   6 x { u32 kind (0 spatial, 1 velocity), u32 n, f64 min, f64 length }
//   f64[total] values, row-major over (x,y,z,vx,vy,vz), vz fastest.
// Bit-exact round trip of the front buffer.

namespace vlrot {

void write_snapshot(const std::filesystem::path& path, const DistributionFunction& f);
DistributionFunction read_snapshot(const std::filesystem::path& path);

}  // namespace vlrot
