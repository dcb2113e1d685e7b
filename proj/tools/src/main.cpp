#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "repronum/cli/compare.hpp"
#include "repronum/cli/run.hpp"
#include "repronum/error.hpp"
#include "repronum/simoracle.hpp"

using namespace repronum;

namespace {

// REPRONUM_SEED beats --rng-seed.
std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("REPRONUM_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "REPRONUM_SEED must be an unsigned integer");
    }
  }
  return flag;
}

void write_simulation_csv(const IncidenceSeries& s, std::ostream& out) {
  out << "date,region,confirmed,recovered,deaths\n";
  std::int64_t cumulative = 0;
  for (std::size_t t = 0; t < s.size(); ++t) {
    cumulative += s[t];
    out << s.date_at(t).iso() << ',' << s.region() << ',' << cumulative << ",0,0\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reproduction-number estimation from daily incidence"};
  app.require_subcommand(1);

  // estimate
  cli::RunConfig cfg;
  std::string methods = "sir,eg,ml,sb,td";
  std::string formats = "json,csv";
  std::size_t begin = 0, end = 0;
  std::int64_t population = 0;
  auto* estimate = app.add_subcommand("estimate", "Estimate R0/R(t) for one region");
  estimate->add_option("--input", cfg.input, "Cumulative CSV (date,region,confirmed,recovered,deaths)")->required();
  estimate->add_option("--region", cfg.region, "Region name")->required();
  estimate->add_option("--metadata", cfg.metadata, "Region metadata CSV (region,population,tests_per_million)");
  estimate->add_option("--methods", methods, "Comma-separated subset of sir,eg,ml,sb,td")->capture_default_str();
  estimate->add_option("--gt-mean", cfg.gt_mean, "Generation-time mean (days)")->capture_default_str();
  estimate->add_option("--gt-sd", cfg.gt_sd, "Generation-time sd (days)")->capture_default_str();
  estimate->add_option("--gt-max-lag", cfg.gt_max_lag, "Generation-time support (days)")->capture_default_str();
  auto* begin_opt = estimate->add_option("--begin", begin, "First day index of the estimation window");
  auto* end_opt = estimate->add_option("--end", end, "Last day index of the estimation window");
  estimate->add_option("--grid-max", cfg.sb.grid_max, "Sequential Bayes grid maximum")->capture_default_str();
  estimate->add_option("--grid-step", cfg.sb.grid_step, "Sequential Bayes grid step")->capture_default_str();
  estimate->add_option("--resamples", cfg.resamples, "Time-dependent interval replicates")->capture_default_str();
  estimate->add_option("--population", population, "Override the region population");
  estimate->add_option("--out-dir", cfg.out_dir, "Output directory")->capture_default_str();
  estimate->add_option("--format", formats, "Comma-separated subset of json,csv")->capture_default_str();
  estimate->add_option("--rng-seed", cfg.rng_seed, "Seed for resampling")->capture_default_str();

  // simulate
  SimConfig sim;
  double gt_mean = 5.2, gt_sd = 2.8;
  int gt_max_lag = 20;
  std::string start_date = "2020-01-01";
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Generate branching-process incidence with known R");
  simulate->add_option("--r", sim.true_r, "True reproduction number")->required();
  simulate->add_option("--seed-cases", sim.seed_cases, "Cases on day 0")->capture_default_str();
  simulate->add_option("--horizon", sim.horizon_days, "Days to simulate after day 0")->capture_default_str();
  simulate->add_option("--rng-seed", sim.rng_seed, "Random seed")->capture_default_str();
  simulate->add_option("--max-cases", sim.max_total_cases, "Stop once this many cases occurred")->capture_default_str();
  simulate->add_option("--gt-mean", gt_mean, "Generation-time mean (days)")->capture_default_str();
  simulate->add_option("--gt-sd", gt_sd, "Generation-time sd (days)")->capture_default_str();
  simulate->add_option("--gt-max-lag", gt_max_lag, "Generation-time support (days)")->capture_default_str();
  simulate->add_option("--region", sim.region, "Region label written to the CSV")->capture_default_str();
  simulate->add_option("--start-date", start_date, "Date of day 0")->capture_default_str();
  simulate->add_option("--out", sim_out, "Output CSV (stdout when omitted)");

  // compare
  std::vector<std::string> report_paths;
  std::string compare_format = "text";
  std::string compare_out;
  auto* comparison = app.add_subcommand("compare", "Tabulate several reports side by side");
  comparison->add_option("reports", report_paths, "Report JSON files")->required();
  comparison->add_option("--format", compare_format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  comparison->add_option("--out", compare_out, "Output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*estimate) {
      cfg.methods = cli::parse_methods(methods);
      cfg.write_json = formats.find("json") != std::string::npos;
      cfg.write_csv = formats.find("csv") != std::string::npos;
      if (*begin_opt) cfg.begin = begin;
      if (*end_opt) cfg.end = end;
      if (population > 0) cfg.population = population;
      cfg.rng_seed = effective_seed(cfg.rng_seed);
      std::filesystem::create_directories(cfg.out_dir);
      auto outcome = cli::run(cfg);
      for (const auto& w : outcome.report.warnings) {
        std::cerr << "warning [" << w.source << "/" << w.code << "]: " << w.message << "\n";
      }
      for (const auto& p : outcome.written) std::cout << p.string() << "\n";
      return outcome.exit_code;
    }
    if (*simulate) {
      sim.gt = discretize_gamma(gt_mean, gt_sd, gt_max_lag);
      sim.start_date = Date::parse(start_date);
      sim.rng_seed = effective_seed(sim.rng_seed);
      auto result = simulate_branching(sim);
      if (result.stop_day) {
        std::cerr << "case cap reached on day " << *result.stop_day << "\n";
      }
      if (sim_out.empty()) {
        write_simulation_csv(result.series, std::cout);
      } else {
        std::ofstream out(sim_out);
        if (!out) throw Error(ErrorCode::kIo, "cannot write " + sim_out);
        write_simulation_csv(result.series, out);
      }
      return 0;
    }
    if (*comparison) {
      std::vector<cli::Report> reports;
      for (const auto& p : report_paths) {
        std::ifstream in(p);
        if (!in) throw Error(ErrorCode::kIo, "cannot open " + p);
        reports.push_back(cli::report_from_json(nlohmann::json::parse(in)));
      }
      auto table = cli::compare(reports);
      const std::string text = compare_format == "csv" ? table.to_csv() : table.to_text();
      if (compare_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(compare_out);
        if (!out) throw Error(ErrorCode::kIo, "cannot write " + compare_out);
        out << text;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
