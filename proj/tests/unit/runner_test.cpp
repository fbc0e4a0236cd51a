#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/io.hpp"
#include "vlasov1d/runner.hpp"
#include "vlasov1d/verify.hpp"

namespace vlasov1d {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("vlasov1d_test_" + name)) {
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  [[nodiscard]] const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

ScenarioConfig small_two_stream(double t_end) {
  ScenarioConfig c = verify::identity_config();
  c.time.t_end = t_end;
  c.time.out_dt = 0.1;
  validate(c);
  return c;
}

TEST(OutputTimes, CountsAndEndpoint) {
  const auto t = runner::output_times(1.0, 0.1);
  ASSERT_EQ(t.size(), 11u);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), 1.0);
  const auto u = runner::output_times(1.0, 0.3);
  ASSERT_EQ(u.size(), 5u);
  EXPECT_EQ(u.back(), 1.0);
}

TEST(Run, MirroredScenarioWritesArtifacts) {
  TempDir dir("mirrored");
  ScenarioConfig c = verify::freestream_config(Model::Relativistic, 64);
  c.time.t_end = 1.0;
  c.time.out_dt = 0.1;
  c.time.snapshot_times = {0.5};
  runner::RunOptions options;
  options.out_dir = dir.path();
  const runner::RunResult r = runner::run_scenario(c, options);

  EXPECT_EQ(r.summary.exit_status, runner::kExitOk);
  ASSERT_EQ(r.rows.size(), 11u);
  for (const DiagRow& row : r.rows) EXPECT_LE(row.E_sup, 1e-10);
  EXPECT_TRUE(fs::exists(dir.path() / "diagnostics.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "snapshot_t0.500000.txt"));

  std::istringstream csv(slurp(dir.path() / "diagnostics.csv"));
  std::string header;
  std::getline(csv, header);
  std::vector<std::string> lines;
  for (std::string line; std::getline(csv, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 11u);
  EXPECT_NE(lines.front().find(",,,"), std::string::npos);
  EXPECT_NE(lines.back().find(",,,"), std::string::npos);
  EXPECT_EQ(lines[5].find(",,,"), std::string::npos);

  const auto summary = nlohmann::json::parse(slurp(dir.path() / "summary.json"));
  EXPECT_EQ(summary.at("model"), "relativistic");
  EXPECT_EQ(summary.at("m"), 1.0);
  EXPECT_EQ(summary.at("exit_status"), 0);
  EXPECT_EQ(summary.at("snapshot_format"), "vlasov1d-snap v1");
  EXPECT_TRUE(summary.contains("final_row"));
  EXPECT_TRUE(summary.contains("decay_ratio_E_sup"));
  EXPECT_TRUE(summary.contains("tail_fraction_int_Q"));

  std::ifstream snap(dir.path() / "snapshot_t0.500000.txt");
  const Snapshot s = read_snapshot(snap);
  EXPECT_DOUBLE_EQ(s.state.time, 0.5);
}

TEST(Run, IdenticalDiagnosticsAcrossThreadCounts) {
  TempDir a("threads1"), b("threads3");
  const ScenarioConfig c = small_two_stream(1.0);
  runner::RunOptions oa, ob;
  oa.out_dir = a.path();
  ob.out_dir = b.path();
  ob.threads = 3;
  (void)runner::run_scenario(c, oa);
  (void)runner::run_scenario(c, ob);
  const std::string ca = slurp(a.path() / "diagnostics.csv");
  EXPECT_FALSE(ca.empty());
  EXPECT_EQ(ca, slurp(b.path() / "diagnostics.csv"));
}

TEST(Run, ConservesMassAndSatisfiesPointwiseBound) {
  const runner::RunResult r = runner::run_scenario(small_two_stream(2.0));
  EXPECT_EQ(r.summary.exit_status, runner::kExitOk);
  EXPECT_LE(r.summary.max_mass_drift_rel, 1e-12);
  EXPECT_EQ(r.summary.pointwise_violations, 0);
  for (const DiagRow& row : r.rows) EXPECT_LE(std::abs(row.neutrality_defect), 1e-12);
  ASSERT_TRUE(r.summary.final_row.has_value());
  EXPECT_DOUBLE_EQ(r.summary.final_row->t, 2.0);
  EXPECT_GT(r.summary.steps, 0);
}

TEST(Run, SupportBreachReportsTime) {
  ScenarioConfig c = small_two_stream(20.0);
  c.grid.x_min = -4.0;
  c.grid.x_max = 4.0;
  const runner::RunResult r = runner::run_scenario(c);
  EXPECT_EQ(r.summary.exit_status, runner::kExitSupportBreach);
  ASSERT_TRUE(r.summary.breach_time.has_value());
  EXPECT_GT(*r.summary.breach_time, 0.0);
  EXPECT_LT(*r.summary.breach_time, 20.0);
  EXPECT_FALSE(r.summary.message.empty());
  EXPECT_FALSE(r.rows.empty());
}

TEST(Summarize, RatiosAndTailFractions) {
  std::vector<DiagRow> rows;
  DiagSeries series;
  for (int k = 0; k <= 100; ++k) {
    DiagRow row;
    row.t = 0.1 * k;
    row.E_sup = k < 40 ? 1.0 : 0.25;
    row.Q = k < 90 ? 1.0 : 0.0;
    row.mass_f = row.mass_g = 1.0;
    row.energy = 2.0;
    row.local_charge_f = {1.0};
    row.E_p = {k < 40 ? 2.0 : 1.0};
    for (DiagRow& r : series.push(row)) rows.push_back(r);
  }
  for (DiagRow& r : series.finish()) rows.push_back(r);
  runner::RunSummary s;
  runner::summarize(rows, s, 1.0, 1e-8);
  EXPECT_DOUBLE_EQ(*s.decay_ratio_E_sup, 0.25);
  EXPECT_DOUBLE_EQ(*s.decay_ratio_E_p, 0.5);
  EXPECT_DOUBLE_EQ(*s.decay_ratio_local_charge_f, 1.0);
  EXPECT_NEAR(*s.tail_fraction_int_Q, 0.0, 1e-12);
  EXPECT_EQ(s.max_mass_drift_rel, 0.0);
  EXPECT_EQ(s.pointwise_violations, 11);
}

TEST(Convergence, NeedsThreeLevels) {
  EXPECT_THROW((void)runner::run_convergence(small_two_stream(1.0), 1), UsageError);
}

TEST(Bench, PhasesFitInsideTotal) {
  const runner::BenchReport r = runner::run_bench(small_two_stream(1.0), 2, 5);
  for (const runner::BenchPhaseTimes& p : {r.single, r.parallel}) {
    EXPECT_EQ(p.steps, 5);
    EXPECT_LE(p.x_advect + p.v_advect + p.field + p.diagnostics, p.total * (1.0 + 1e-9));
    EXPECT_GT(p.cells_per_second, 0.0);
  }
  EXPECT_EQ(r.parallel.threads, 2);
  EXPECT_GT(r.field_seconds_nx, 0.0);
  EXPECT_GT(r.field_seconds_2nx, 0.0);
}

TEST(Verify, UnknownSuiteIsUsageError) {
  EXPECT_THROW((void)verify::run_suite("nonsense", 1), UsageError);
}

TEST(Verify, SignsSuitePasses) {
  const verify::VerifyReport r = verify::signs_suite(1, 20000);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks.size(), 2u);
}

}  // namespace
}  // namespace vlasov1d
