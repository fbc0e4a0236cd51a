#include "vlasov1d/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "vlasov1d/errors.hpp"

namespace vlasov1d {
namespace {

// Shortest text that parses back to the same double.
std::string shortest(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string full_precision(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string label(double value) {
  // R = 1 -> "1", R = 0.5 -> "0.5"
  return shortest(value);
}

}  // namespace

std::vector<std::string> diag_column_names(const DiagConfig& config, Model model) {
  std::vector<std::string> cols = {"t",          "mass_f",       "mass_g",  "neutrality_defect",
                                   "energy",     "M",            "diss_f",  "diss_g",
                                   "quarterQ",   "identity_rhs", "dMdt_fd", "residual_rel",
                                   "Q",          "int_Q",        "l4F",     "l4G",
                                   "int_l4F",    "int_l4G"};
  if (model == Model::Relativistic) cols.emplace_back("l74F");
  for (double R : config.local_radii) cols.push_back("local_charge_f_R" + label(R));
  for (double R : config.local_radii) cols.push_back("local_charge_g_R" + label(R));
  cols.emplace_back("E_sup");
  cols.emplace_back("E_sup_cubed_int");
  for (double p : config.p_norms) cols.push_back("E_L" + label(p));
  return cols;
}

DiagCsvWriter::DiagCsvWriter(std::ostream& sink, DiagConfig config, Model model)
    : sink_(sink), config_(std::move(config)), model_(model) {}

void DiagCsvWriter::write(const DiagRow& row) {
  if (!header_written_) {
    const auto cols = diag_column_names(config_, model_);
    for (std::size_t k = 0; k < cols.size(); ++k) sink_ << (k ? "," : "") << cols[k];
    sink_ << '\n';
    header_written_ = true;
  }
  if (row.local_charge_f.size() != config_.local_radii.size() ||
      row.local_charge_g.size() != config_.local_radii.size() ||
      row.E_p.size() != config_.p_norms.size()) {
    throw IoError("diagnostics row does not match the configured columns");
  }

  std::string line;
  auto put = [&line](double v) {
    if (!line.empty()) line += ',';
    line += shortest(v);
  };
  auto put_optional = [&line, &put](const std::optional<double>& v) {
    if (v) {
      put(*v);
    } else {
      line += ',';
    }
  };
  put(row.t);
  put(row.mass_f);
  put(row.mass_g);
  put(row.neutrality_defect);
  put(row.energy);
  put(row.M);
  put(row.diss_f);
  put(row.diss_g);
  put(row.quarterQ);
  put(row.identity_rhs);
  put_optional(row.dMdt_fd);
  put_optional(row.residual_rel);
  put(row.Q);
  put(row.int_Q);
  put(row.l4F);
  put(row.l4G);
  put(row.int_l4F);
  put(row.int_l4G);
  if (model_ == Model::Relativistic) put(row.l74F.value_or(0.0));
  for (double v : row.local_charge_f) put(v);
  for (double v : row.local_charge_g) put(v);
  put(row.E_sup);
  put(row.E_sup_cubed_int);
  for (double v : row.E_p) put(v);
  sink_ << line << '\n';
  if (!sink_) throw IoError("failed to write diagnostics row");
}

void write_snapshot(std::ostream& sink, const TwoSpeciesState& state, std::span<const double> E,
                    SnapshotMode mode) {
  const GridSpec& g = state.grid();
  if (static_cast<int>(E.size()) != g.n_x) throw IoError("write_snapshot: E has wrong length");
  sink << kSnapshotMagic << ' ' << kSnapshotVersion << ' ' << to_string(state.model) << ' '
       << full_precision(state.mass_ratio()) << ' ' << g.n_x << ' ' << g.n_v << ' '
       << full_precision(g.x_min) << ' ' << full_precision(g.x_max) << ' '
       << full_precision(g.v_min) << ' ' << full_precision(g.v_max) << ' '
       << full_precision(state.time) << '\n';

  if (mode == SnapshotMode::Binary) {
    auto dump = [&sink](std::span<const double> data) {
      sink.write(reinterpret_cast<const char*>(data.data()),
                 static_cast<std::streamsize>(data.size_bytes()));
    };
    dump(state.f.values());
    dump(state.g.values());
    dump(E);
  } else {
    for (const SpeciesField* field : {&state.f, &state.g}) {
      for (int i = 0; i < g.n_x; ++i) {
        const auto line = field->v_line(i);
        for (int j = 0; j < g.n_v; ++j) sink << (j ? " " : "") << full_precision(line[j]);
        sink << '\n';
      }
    }
    for (int i = 0; i < g.n_x; ++i) sink << (i ? " " : "") << full_precision(E[i]);
    sink << '\n';
  }
  if (!sink) throw IoError("failed to write snapshot");
}

Snapshot read_snapshot(std::istream& source, SnapshotMode mode) {
  std::string header;
  if (!std::getline(source, header)) throw IoError("snapshot: missing header");
  std::istringstream hs(header);
  std::string magic, version, model_name;
  double m = 0, x_min = 0, x_max = 0, v_min = 0, v_max = 0, t = 0;
  int n_x = 0, n_v = 0;
  hs >> magic >> version >> model_name >> m >> n_x >> n_v >> x_min >> x_max >> v_min >> v_max >> t;
  if (!hs || magic != kSnapshotMagic) throw IoError("snapshot: malformed header");
  if (version != kSnapshotVersion) throw IoError("snapshot: unsupported version '" + version + "'");

  Model model;
  GridSpec grid;
  try {
    model = model_from_string(model_name);
    grid = make_grid(x_min, x_max, n_x, v_min, v_max, n_v);
  } catch (const DomainError& e) {
    throw IoError(std::string("snapshot: ") + e.what());
  }

  Snapshot snap{make_state(grid, model, m), std::vector<double>(n_x)};
  snap.state.time = t;
  auto fill = [&](std::span<double> data) {
    if (mode == SnapshotMode::Binary) {
      source.read(reinterpret_cast<char*>(data.data()),
                  static_cast<std::streamsize>(data.size_bytes()));
    } else {
      std::string token;
      for (double& v : data) {
        if (!(source >> token)) break;
        // strtod keeps subnormal values that operator>> would reject.
        char* end = nullptr;
        v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size()) throw IoError("snapshot: bad number '" + token + "'");
      }
    }
    if (!source) throw IoError("snapshot: truncated data");
  };
  fill(snap.state.f.values());
  fill(snap.state.g.values());
  fill(snap.E);
  return snap;
}

}  // namespace vlasov1d
