#pragma once

#include <filesystem>
#include <string>

#include "vlrot/cases.hpp"
#include "vlrot/grid.hpp"
#include "vlrot/propagator.hpp"

// Line-oriented `key = value` run configuration with [section] headers.
// Unknown keys, duplicate keys, and malformed values are errors naming the
// offending line. All defaults are documented in the README.

namespace vlrot {

struct OutputConfig {
  std::string directory = "out";
  int cadence_steps = 1;
  bool emit_snapshots = false;  // binary f snapshots f_XXXXXX.vlr at cadence
  bool emit_density = false;    // density CSV snapshots n_XXXXXX.csv at cadence
};

struct RunConfig {
  PhaseSpaceGrid grid = make_grid({1, 1, 1, 1, 1, 1}, {0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1});
  SchemeConfig scheme;
  double t_final = 0.0;
  CaseParams case_params;
  OutputConfig output;

  int n_steps() const;  // t_final / h, validated commensurate

  /// Smallest representable spatial modes: k0_i = 2*pi/L_i on non-degenerate
  /// spatial axes, 0 on degenerate ones.
  Vec3 smallest_modes() const;
};

RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

}  // namespace vlrot
