#pragma once

// diagnostics.csv rows and phase-space snapshots.
//
// CSV: one header line, then one line per output time. Columns follow the
// DiagRow declaration order; list-valued fields expand to one column per
// configured radius or exponent (local_charge_f_R1, ..., E_L4, ...). l74F is
// present only for relativistic runs. Undefined values (the centred
// difference on the first and last row) are written as empty fields.
//
// Snapshot: a header line
//   vlasov1d-snap v1 <model> <m> <nx> <nv> <xmin> <xmax> <vmin> <vmax> <t>
// followed by f (n_x lines of n_v values), g (same) and one line of n_x field
// values, all printed with 17 significant digits. In binary mode the header
// line is followed by the same values as raw native-endian doubles.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vlasov1d/diagnostics.hpp"
#include "vlasov1d/phase_grid.hpp"
#include "vlasov1d/scenario.hpp"

namespace vlasov1d {

inline constexpr const char* kSnapshotMagic = "vlasov1d-snap";
inline constexpr const char* kSnapshotVersion = "v1";

[[nodiscard]] std::vector<std::string> diag_column_names(const DiagConfig& config, Model model);

/// Streams DiagRows as CSV; the header goes out with the first row.
class DiagCsvWriter {
 public:
  DiagCsvWriter(std::ostream& sink, DiagConfig config, Model model);

  void write(const DiagRow& row);

 private:
  std::ostream& sink_;
  DiagConfig config_;
  Model model_;
  bool header_written_ = false;
};

struct Snapshot {
  TwoSpeciesState state;
  std::vector<double> E;
};

void write_snapshot(std::ostream& sink, const TwoSpeciesState& state, std::span<const double> E,
                    SnapshotMode mode = SnapshotMode::Text);

/// Throws IoError on a malformed or truncated stream.
[[nodiscard]] Snapshot read_snapshot(std::istream& source, SnapshotMode mode = SnapshotMode::Text);

}  // namespace vlasov1d
