#pragma once

// Scenario configuration files, initial-data construction and automatic
// x-domain sizing.
//
// Config files are flat `key = value` lines with dotted section prefixes.
// `#` starts a comment. Unknown keys are rejected. Recognised keys:
//
//   model                    classical | relativistic          (required)
//   m                        mass of species g                 (default 1)
//   seed                     integer                           (default 1)
//   grid.x_min, grid.x_max   number | auto                     (default auto)
//   grid.n_x, grid.n_v       cell counts >= 4                  (default 256)
//   grid.v_min, grid.v_max   momentum bounds                   (default -8, 8)
//   time.t_end               > 0                               (required)
//   time.cfl_number          > 0                               (default 0.5)
//   time.out_dt              0 < out_dt <= t_end               (default min(0.1, t_end))
//   time.snapshot_times      list of times                     (default none)
//   init.mirror              true | false: g := f pointwise    (default false)
//   init.f.bump, init.g.bump "cx cv rx rv amplitude"; repeat the key for more bumps
//   diag.local_radii         list of R > 0                     (default 1, 2)
//   diag.p_norms             list of p >= 1                    (default 4)
//   diag.eps_supp            support threshold                 (default 1e-12)
//   diag.buffer_cells        support guard width               (default 2)
//   diag.eps_identity        residual denominator floor        (default 1e-12)
//   transport.positivity_clip  true | false                    (default false)
//   output.snapshot_format   text | binary                     (default text)
//
// Lists accept commas and/or whitespace as separators.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "vlasov1d/bump.hpp"
#include "vlasov1d/diagnostics.hpp"
#include "vlasov1d/phase_grid.hpp"

namespace vlasov1d {

enum class SnapshotMode { Text, Binary };

struct ScenarioConfig {
  Model model = Model::Classical;
  double m = 1.0;
  std::uint64_t seed = 1;

  struct Grid {
    std::optional<double> x_min;  ///< nullopt means "auto"
    std::optional<double> x_max;
    int n_x = 256;
    double v_min = -8.0;
    double v_max = 8.0;
    int n_v = 256;
  } grid;

  struct Time {
    double t_end = 0.0;
    double cfl_number = 0.5;
    double out_dt = 0.1;
    std::vector<double> snapshot_times;
  } time;

  struct Init {
    std::vector<Bump> f;
    std::vector<Bump> g;
    bool mirror = false;
  } init;

  DiagConfig diagnostics;
  double eps_supp = 1e-12;
  int buffer_cells = 2;
  bool positivity_clip = false;
  SnapshotMode snapshot_mode = SnapshotMode::Text;
};

/// Parses and validates config text. Throws ParseError (with line number) for
/// syntax problems and unknown or repeated keys, ValidationError for ranges.
[[nodiscard]] ScenarioConfig parse_config(std::string_view text);

/// Reads a file and parses it. Throws IoError if the file cannot be read.
[[nodiscard]] ScenarioConfig load_config(const std::filesystem::path& path);

/// Re-checks every range constraint; parse_config calls this.
void validate(const ScenarioConfig& config);

struct XBounds {
  double x_min = 0.0;
  double x_max = 0.0;
};

/// Extra cells kept between the padded hull and each edge of an automatic domain.
inline constexpr int kAutoDomainGuardCells = 8;

/// Automatic x-extent: the x-hull of all bump supports, padded on each side by
/// 1.1 * max|omega| * t_end (max over both species at the v bounds), plus
/// kAutoDomainGuardCells cells.
[[nodiscard]] XBounds domain_sizing(const ScenarioConfig& config);

/// Grid from the config, resolving "auto" x-bounds through domain_sizing.
[[nodiscard]] GridSpec scenario_grid(const ScenarioConfig& config);

/// Samples the bumps at cell centres and rescales g so that both species carry
/// the same discrete mass. Throws SupportError when a bump reaches the
/// buffer zone and NeutralityError when the data cannot be neutralised.
[[nodiscard]] TwoSpeciesState build_initial(const ScenarioConfig& config, const GridSpec& grid);

}  // namespace vlasov1d
