#include "vlrot/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "vlrot/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

namespace vlrot {

namespace {

constexpr char kMagic[4] = {'V', 'L', 'R', '1'};

template <typename T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::ifstream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const DistributionFunction& f) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw config_error("write_snapshot: cannot open " + path.string());
  os.write(kMagic, 4);
  for (const AxisSpec& ax : f.grid().axes) {
    put<std::uint32_t>(os, static_cast<std::uint32_t>(ax.kind));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(ax.n_points));
    put<double>(os, ax.min);
    put<double>(os, ax.length);
  }
  const auto vals = f.values();
  os.write(reinterpret_cast<const char*>(vals.data()),
           static_cast<std::streamsize>(vals.size() * sizeof(double)));
  if (!os) throw config_error("write_snapshot: short write to " + path.string());
}

DistributionFunction read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw config_error("read_snapshot: cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw config_error("read_snapshot: bad magic in " + path.string());

  std::array<AxisSpec, 6> axes;
  for (int a = 0; a < 6; ++a) {
    axes[a].kind = static_cast<AxisKind>(get<std::uint32_t>(is));
    axes[a].label = static_cast<Axis>(a);
    axes[a].n_points = static_cast<int>(get<std::uint32_t>(is));
    axes[a].min = get<double>(is);
    axes[a].length = get<double>(is);
  }
  DistributionFunction f(make_grid(axes));
  auto vals = f.values();
  is.read(reinterpret_cast<char*>(vals.data()),
          static_cast<std::streamsize>(vals.size() * sizeof(double)));
  if (!is) throw config_error("read_snapshot: truncated file " + path.string());
  return f;
}

}  // namespace vlrot
