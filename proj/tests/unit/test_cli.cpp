#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "repronum/cli/compare.hpp"
#include "repronum/cli/run.hpp"
#include "repronum/error.hpp"
#include "repronum/simoracle.hpp"
#include "support/oracles.hpp"

using namespace repronum;
using namespace repronum::cli;

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / "repronum_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string cumulative_csv(const std::string& region, const std::vector<std::int64_t>& cumulative) {
  std::ostringstream out;
  out << "date,region,confirmed,recovered,deaths\n";
  for (std::size_t t = 0; t < cumulative.size(); ++t) {
    out << (Date(2020, 3, 1) + static_cast<int>(t)).iso() << ',' << region << ',' << cumulative[t] << ",0,0\n";
  }
  return out.str();
}

// 60 days of branching-process data, R = 1.5.
fs::path simulated_input(const fs::path& dir) {
  SimConfig c;
  c.true_r = 1.5;
  c.gt = discretize_gamma(5.2, 2.8);
  c.seed_cases = 50;
  c.horizon_days = 59;
  c.rng_seed = 3;
  auto series = simulate_branching(c).series;
  std::ofstream(dir / "cases.csv") << cumulative_csv("Sim", cumulative_sums(series));
  return dir / "cases.csv";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Report report_with(const std::string& region, std::vector<REstimate> estimates) {
  Report r;
  r.region = region;
  r.estimates = std::move(estimates);
  return r;
}

}  // namespace

TEST(ParseMethods, DeduplicatesAndKeepsOrder) {
  EXPECT_EQ(parse_methods("ml,EG,ml"), (std::vector<Method>{Method::kML, Method::kEG}));
  EXPECT_THROW(parse_methods(""), Error);
  EXPECT_THROW(parse_methods("eg,foo"), Error);
}

TEST(Run, EstimatesEachRequestedMethod) {
  auto dir = fresh_dir("run_basic");
  RunConfig cfg;
  cfg.input = simulated_input(dir);
  cfg.region = "Sim";
  cfg.methods = {Method::kEG, Method::kML};
  cfg.out_dir = dir;
  auto outcome = run(cfg);
  EXPECT_EQ(outcome.exit_code, 0);
  ASSERT_EQ(outcome.report.estimates.size(), 2u);
  EXPECT_EQ(outcome.report.estimates[0].method, Method::kEG);
  EXPECT_EQ(outcome.report.estimates[1].method, Method::kML);
  EXPECT_TRUE(fs::exists(dir / "Sim_report.json"));
  for (const auto& e : outcome.report.estimates) {
    EXPECT_LE(e.ci_low, e.r);
    EXPECT_GE(e.ci_high, e.r);
  }
}

TEST(Run, MethodFailureYieldsPartialReportAndExitTwo) {
  auto dir = fresh_dir("run_partial");
  RunConfig cfg;
  cfg.input = simulated_input(dir);
  cfg.region = "Sim";
  cfg.methods = {Method::kSIR, Method::kML};
  cfg.out_dir = dir;
  auto outcome = run(cfg);
  EXPECT_EQ(outcome.exit_code, 2);
  ASSERT_EQ(outcome.report.estimates.size(), 1u);
  EXPECT_EQ(outcome.report.estimates[0].method, Method::kML);
  ASSERT_EQ(outcome.report.warnings.size(), 1u);
  EXPECT_EQ(outcome.report.warnings[0].source, "SIR");
}

TEST(Run, RepeatRunsAreByteIdentical) {
  auto a = fresh_dir("run_repeat_a");
  auto b = fresh_dir("run_repeat_b");
  auto input = simulated_input(a);
  RunConfig cfg;
  cfg.input = input;
  cfg.region = "Sim";
  cfg.methods = {Method::kEG, Method::kML, Method::kSB, Method::kTD};
  cfg.resamples = 200;
  cfg.out_dir = a;
  auto first = run(cfg);
  cfg.out_dir = b;
  auto second = run(cfg);
  ASSERT_EQ(first.written.size(), second.written.size());
  for (std::size_t k = 0; k < first.written.size(); ++k) {
    EXPECT_EQ(first.written[k].filename(), second.written[k].filename());
    EXPECT_EQ(slurp(first.written[k]), slurp(second.written[k])) << first.written[k];
  }
}

TEST(Run, ClampWarningAppearsOnce) {
  auto dir = fresh_dir("run_clamp");
  std::vector<std::int64_t> cumulative;
  for (int t = 0; t < 30; ++t) cumulative.push_back(10 + 5 * t);
  cumulative[12] = cumulative[11] - 3;
  cumulative[13] = cumulative[11] + 1;
  std::ofstream(dir / "cases.csv") << cumulative_csv("Clamp", cumulative);
  RunConfig cfg;
  cfg.input = dir / "cases.csv";
  cfg.region = "Clamp";
  cfg.methods = {Method::kEG, Method::kML};
  cfg.out_dir = dir;
  auto outcome = run(cfg);
  auto clamped = std::count_if(outcome.report.warnings.begin(), outcome.report.warnings.end(),
                               [](const Warning& w) { return w.code == "ClampedIncidence"; });
  EXPECT_EQ(clamped, 1);
}

TEST(Run, WindowIndicesAreReportedInSeriesCoordinates) {
  auto dir = fresh_dir("run_window");
  RunConfig cfg;
  cfg.input = simulated_input(dir);
  cfg.region = "Sim";
  cfg.methods = {Method::kML};
  cfg.begin = 10;
  cfg.end = 40;
  cfg.out_dir = dir;
  auto outcome = run(cfg);
  EXPECT_EQ(outcome.report.window, (std::pair<std::size_t, std::size_t>{10, 40}));
  EXPECT_EQ(outcome.report.estimates.at(0).window, (std::pair<std::size_t, std::size_t>{10, 40}));
}

TEST(Run, SirForecastWithPopulation) {
  auto dir = fresh_dir("run_sir");
  RunConfig cfg;
  cfg.input = simulated_input(dir);
  cfg.region = "Sim";
  cfg.methods = {Method::kSIR};
  cfg.population = 10'000'000;
  cfg.out_dir = dir;
  auto outcome = run(cfg);
  ASSERT_EQ(outcome.exit_code, 0) << (outcome.report.warnings.empty() ? "" : outcome.report.warnings[0].message);
  ASSERT_TRUE(outcome.report.forecast.has_value());
  EXPECT_NEAR(outcome.report.forecast->r0, outcome.report.estimate(Method::kSIR)->r, 1e-12);
  EXPECT_TRUE(fs::exists(dir / "Sim_SIR_trajectory.csv"));
}

TEST(ReportJson, RoundTrip) {
  auto dir = fresh_dir("run_json");
  RunConfig cfg;
  cfg.input = simulated_input(dir);
  cfg.region = "Sim";
  cfg.methods = {Method::kEG, Method::kML, Method::kSB};
  cfg.out_dir = dir;
  auto outcome = run(cfg);
  auto restored = report_from_json(nlohmann::json::parse(slurp(dir / "Sim_report.json")));
  EXPECT_EQ(restored.region, "Sim");
  ASSERT_EQ(restored.estimates.size(), outcome.report.estimates.size());
  EXPECT_DOUBLE_EQ(restored.estimates[0].r, outcome.report.estimates[0].r);
  ASSERT_NE(restored.trajectory(Method::kSB), nullptr);
  EXPECT_DOUBLE_EQ(restored.trajectory(Method::kSB)->summary.r_mean,
                   outcome.report.trajectory(Method::kSB)->summary.r_mean);
  // Per-day values are not serialized, so the restored day count is zero.
  auto strip_days = [](nlohmann::json j) {
    for (auto& t : j["trajectories"]) t.erase("days");
    return j;
  };
  EXPECT_EQ(strip_days(to_json(restored)), strip_days(to_json(outcome.report)));
}

TEST(Compare, OneRowPerReport) {
  std::vector<Report> reports{
      report_with("Bangladesh", {{Method::kEG, 1.38, 1.37, 1.39, {0, 103}}}),
      report_with("India", {{Method::kEG, 1.344, 1.3, 1.4, {0, 141}}}),
      report_with("Pakistan", {{Method::kEG, 1.319, 1.3, 1.33, {0, 115}}}),
  };
  auto table = compare(reports);
  EXPECT_EQ(table.regions.size(), 3u);
  EXPECT_EQ(table.methods, (std::vector<Method>{Method::kEG}));
  EXPECT_EQ(table.cells[0][0], "1.380 [1.370, 1.390]");
  EXPECT_EQ(compare({reports[0]}).regions.size(), 1u);
  auto csv = table.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "region,EG");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(Compare, DisjointMethodsRenderDash) {
  std::vector<Report> reports{
      report_with("A", {{Method::kSIR, 1.234, 1.234, 1.234, {0, 10}}}),
      report_with("B", {{Method::kML, 1.3, 1.2, 1.4, {0, 10}}}),
  };
  auto table = compare(reports);
  EXPECT_EQ(table.methods, (std::vector<Method>{Method::kSIR, Method::kML}));
  EXPECT_EQ(table.cells[0][0], "1.234");
  EXPECT_EQ(table.cells[0][1], kMissingCell);
  EXPECT_EQ(table.cells[1][0], kMissingCell);
  auto text = table.to_text();
  EXPECT_NE(text.find("Region"), std::string::npos);
  EXPECT_NE(text.find(kMissingCell), std::string::npos);
}
