#include "vlasov1d/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "vlasov1d/errors.hpp"

namespace vlasov1d {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t,", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t,", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

class LineContext {
 public:
  LineContext(std::string_view key, int line) : key_(key), line_(line) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("line " + std::to_string(line_) + ": key '" + std::string(key_) + "': " + why,
                     line_);
  }

  double number(std::string_view token) const {
    double value = 0.0;
    const auto* begin = token.data();
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) fail("expected a number, got '" + std::string(token) + "'");
    return value;
  }

  long long integer(std::string_view token) const {
    long long value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end) {
      fail("expected an integer, got '" + std::string(token) + "'");
    }
    return value;
  }

  bool boolean(std::string_view token) const {
    if (token == "true" || token == "1" || token == "yes") return true;
    if (token == "false" || token == "0" || token == "no") return false;
    fail("expected true or false, got '" + std::string(token) + "'");
  }

  std::vector<double> numbers(std::string_view value) const {
    std::vector<double> out;
    for (auto token : split_list(value)) out.push_back(number(token));
    return out;
  }

  std::optional<double> number_or_auto(std::string_view value) const {
    if (value == "auto") return std::nullopt;
    return number(value);
  }

  Bump bump(std::string_view value) const {
    const auto v = numbers(value);
    if (v.size() != 5) fail("bump needs 5 numbers: cx cv rx rv amplitude");
    return Bump{v[0], v[1], v[2], v[3], v[4]};
  }

 private:
  std::string_view key_;
  int line_;
};

using Setter = std::function<void(ScenarioConfig&, std::string_view, const LineContext&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"model",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         if (v == "classical") {
           c.model = Model::Classical;
         } else if (v == "relativistic") {
           c.model = Model::Relativistic;
         } else {
           ctx.fail("expected classical or relativistic");
         }
       }},
      {"m", [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) { c.m = ctx.number(v); }},
      {"seed",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         const long long s = ctx.integer(v);
         if (s < 0) ctx.fail("seed must be nonnegative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"grid.x_min",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.grid.x_min = ctx.number_or_auto(v);
       }},
      {"grid.x_max",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.grid.x_max = ctx.number_or_auto(v);
       }},
      {"grid.n_x",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.grid.n_x = static_cast<int>(ctx.integer(v));
       }},
      {"grid.n_v",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.grid.n_v = static_cast<int>(ctx.integer(v));
       }},
      {"grid.v_min",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) { c.grid.v_min = ctx.number(v); }},
      {"grid.v_max",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) { c.grid.v_max = ctx.number(v); }},
      {"time.t_end",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) { c.time.t_end = ctx.number(v); }},
      {"time.cfl_number",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.time.cfl_number = ctx.number(v);
       }},
      {"time.out_dt",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) { c.time.out_dt = ctx.number(v); }},
      {"time.snapshot_times",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.time.snapshot_times = ctx.numbers(v);
       }},
      {"init.mirror",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.init.mirror = ctx.boolean(v);
       }},
      {"init.f.bump",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.init.f.push_back(ctx.bump(v));
       }},
      {"init.g.bump",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.init.g.push_back(ctx.bump(v));
       }},
      {"diag.local_radii",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.diagnostics.local_radii = ctx.numbers(v);
       }},
      {"diag.p_norms",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.diagnostics.p_norms = ctx.numbers(v);
       }},
      {"diag.eps_supp",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) { c.eps_supp = ctx.number(v); }},
      {"diag.buffer_cells",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.buffer_cells = static_cast<int>(ctx.integer(v));
       }},
      {"diag.eps_identity",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.diagnostics.eps_identity = ctx.number(v);
       }},
      {"transport.positivity_clip",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         c.positivity_clip = ctx.boolean(v);
       }},
      {"output.snapshot_format",
       [](ScenarioConfig& c, std::string_view v, const LineContext& ctx) {
         if (v == "text") {
           c.snapshot_mode = SnapshotMode::Text;
         } else if (v == "binary") {
           c.snapshot_mode = SnapshotMode::Binary;
         } else {
           ctx.fail("expected text or binary");
         }
       }},
  };
  return table;
}

bool repeatable(std::string_view key) { return key == "init.f.bump" || key == "init.g.bump"; }

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

void validate_bump(const Bump& b, const char* species) {
  const std::string where = std::string("init.") + species + ".bump: ";
  require(std::isfinite(b.center_x) && std::isfinite(b.center_v), where + "centres must be finite");
  require(b.radius_x > 0.0 && b.radius_v > 0.0, where + "radii must be positive");
  require(b.amplitude >= 0.0 && std::isfinite(b.amplitude), where + "amplitude must be >= 0");
}

struct Interval {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
};

Interval x_hull(const ScenarioConfig& config) {
  Interval hull;
  auto extend = [&hull](const std::vector<Bump>& bumps) {
    for (const Bump& b : bumps) {
      hull.lo = std::min(hull.lo, b.center_x - b.radius_x);
      hull.hi = std::max(hull.hi, b.center_x + b.radius_x);
    }
  };
  extend(config.init.f);
  extend(config.init.g);
  return hull;
}

}  // namespace

void validate(const ScenarioConfig& c) {
  require(c.m > 0.0 && std::isfinite(c.m), "m must be positive");
  require(c.time.t_end > 0.0 && std::isfinite(c.time.t_end), "time.t_end must be > 0");
  require(c.time.out_dt > 0.0, "time.out_dt must be > 0");
  require(c.time.out_dt <= c.time.t_end, "time.out_dt must be <= time.t_end");
  require(c.time.cfl_number > 0.0, "time.cfl_number must be > 0");
  for (double t : c.time.snapshot_times) {
    require(t >= 0.0 && t <= c.time.t_end, "time.snapshot_times must lie in [0, t_end]");
  }
  require(c.grid.n_x >= 4 && c.grid.n_v >= 4, "grid.n_x and grid.n_v must be >= 4");
  require(c.grid.v_min < c.grid.v_max, "grid.v_min must be < grid.v_max");
  require(c.grid.x_min.has_value() == c.grid.x_max.has_value(),
          "grid.x_min and grid.x_max must both be numbers or both be auto");
  if (c.grid.x_min) require(*c.grid.x_min < *c.grid.x_max, "grid.x_min must be < grid.x_max");
  require(!c.init.f.empty(), "init.f.bump: at least one bump is required");
  if (c.init.mirror) {
    require(c.init.g.empty(), "init.g.bump cannot be combined with init.mirror");
  } else {
    require(!c.init.g.empty(), "init.g.bump: at least one bump is required unless init.mirror");
  }
  for (const Bump& b : c.init.f) validate_bump(b, "f");
  for (const Bump& b : c.init.g) validate_bump(b, "g");
  for (double R : c.diagnostics.local_radii) require(R > 0.0, "diag.local_radii must be > 0");
  for (double p : c.diagnostics.p_norms) require(p >= 1.0, "diag.p_norms must be >= 1");
  require(c.eps_supp > 0.0 && c.eps_supp < 1.0, "diag.eps_supp must lie in (0, 1)");
  require(c.buffer_cells >= 0, "diag.buffer_cells must be >= 0");
  require(c.diagnostics.eps_identity > 0.0, "diag.eps_identity must be > 0");
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig config;
  std::set<std::string, std::less<>> seen;
  bool out_dt_given = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const LineContext ctx(key, line_no);

    const auto it = setters().find(key);
    if (it == setters().end()) ctx.fail("unknown key");
    if (value.empty()) ctx.fail("missing value");
    if (!repeatable(key) && !seen.emplace(key).second) ctx.fail("key given twice");
    it->second(config, value, ctx);
    if (key == "time.out_dt") out_dt_given = true;
  }

  if (!seen.contains("model")) throw ParseError("missing required key 'model'");
  if (!seen.contains("time.t_end")) throw ParseError("missing required key 'time.t_end'");
  if (!out_dt_given) config.time.out_dt = std::min(0.1, config.time.t_end);
  validate(config);
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

XBounds domain_sizing(const ScenarioConfig& config) {
  const Interval hull = x_hull(config);
  double speed = 0.0;
  for (const double mass : {1.0, config.m}) {
    for (const double v : {config.grid.v_min, config.grid.v_max}) {
      speed = std::max(speed, std::abs(transport_speed(config.model, mass, v)));
    }
  }
  const double pad = 1.1 * speed * config.time.t_end;
  const double core = (hull.hi - hull.lo) + 2.0 * pad;
  const double guard_fraction = 2.0 * kAutoDomainGuardCells / config.grid.n_x;
  const double length = core / (1.0 - guard_fraction);
  const double guard = 0.5 * (length - core);
  return {hull.lo - pad - guard, hull.hi + pad + guard};
}

GridSpec scenario_grid(const ScenarioConfig& config) {
  XBounds x;
  if (config.grid.x_min) {
    x = {*config.grid.x_min, *config.grid.x_max};
  } else {
    x = domain_sizing(config);
  }
  return make_grid(x.x_min, x.x_max, config.grid.n_x, config.grid.v_min, config.grid.v_max,
                   config.grid.n_v);
}

TwoSpeciesState build_initial(const ScenarioConfig& config, const GridSpec& grid) {
  const double bx = config.buffer_cells * grid.dx;
  const double bv = config.buffer_cells * grid.dv;
  auto check_support = [&](const std::vector<Bump>& bumps, const char* species) {
    for (const Bump& b : bumps) {
      const bool inside = b.center_x - b.radius_x >= grid.x_min + bx &&
                          b.center_x + b.radius_x <= grid.x_max - bx &&
                          b.center_v - b.radius_v >= grid.v_min + bv &&
                          b.center_v + b.radius_v <= grid.v_max - bv;
      if (!inside) {
        throw SupportError(std::string("bump of species ") + species +
                           " does not fit inside the grid with the boundary buffer");
      }
    }
  };
  check_support(config.init.f, "f");
  check_support(config.init.g, "g");

  TwoSpeciesState state = make_state(grid, config.model, config.m);
  for (int i = 0; i < grid.n_x; ++i) {
    for (int j = 0; j < grid.n_v; ++j) {
      state.f(i, j) = evaluate_bumps(config.init.f, grid.x(i), grid.v(j));
    }
  }
  if (config.init.mirror) {
    std::copy(state.f.values().begin(), state.f.values().end(), state.g.values().begin());
    return state;
  }
  for (int i = 0; i < grid.n_x; ++i) {
    for (int j = 0; j < grid.n_v; ++j) {
      state.g(i, j) = evaluate_bumps(config.init.g, grid.x(i), grid.v(j));
    }
  }

  double sum_f = 0.0, sum_g = 0.0;
  for (double v : state.f.values()) sum_f += v;
  for (double v : state.g.values()) sum_g += v;
  if (sum_f == 0.0 && sum_g == 0.0) return state;
  if (sum_f == 0.0 || sum_g == 0.0) {
    throw NeutralityError("initial data cannot be neutralised: one species has zero mass on the grid");
  }
  const double scale = sum_f / sum_g;
  for (double& v : state.g.values()) v *= scale;
  return state;
}

}  // namespace vlasov1d
