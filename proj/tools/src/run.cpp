#include "repronum/cli/run.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

#include "repronum/epidata.hpp"
#include "repronum/error.hpp"
#include "repronum/gentime.hpp"
#include "repronum/sir.hpp"

namespace repronum::cli {

namespace {

std::string file_stem(const std::string& region) {
  std::string out = region;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content, RunOutcome& outcome) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  outcome.written.push_back(path);
}

}  // namespace

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    Method m = parse_method(item);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one method is required");
  return out;
}

RunOutcome run(const RunConfig& cfg) {
  if (cfg.methods.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one method is required");

  RegionTable table;
  const RegionTable* meta = nullptr;
  if (!cfg.metadata.empty()) {
    table = load_region_table(cfg.metadata);
    meta = &table;
  }
  CumulativeSeries cumulative = load_cumulative_csv(cfg.input, cfg.region, meta);
  if (cfg.population) cumulative.population = *cfg.population;
  DailyIncidence daily = to_daily_incidence(cumulative);
  const GenTimeDist gt = discretize_gamma(cfg.gt_mean, cfg.gt_sd, cfg.gt_max_lag);

  const std::size_t begin = cfg.begin.value_or(0);
  const std::size_t end = cfg.end.value_or(daily.series.last());
  const IncidenceSeries series =
      (begin == 0 && end == daily.series.last()) ? daily.series : window(daily.series, begin, end);

  RunOutcome outcome;
  Report& report = outcome.report;
  report.region = cfg.region;
  report.window = {begin, end};
  report.data.first_date = cumulative.first_date();
  report.data.last_date = cumulative.last_date();
  report.data.days = cumulative.size();
  report.data.total_confirmed = cumulative.confirmed.back();
  report.data.total_recovered = cumulative.recovered.back();
  report.data.total_deaths = cumulative.deaths.back();
  report.data.incidence_total = daily.series.total();
  report.data.population = cumulative.population;
  report.data.tests_per_million = cumulative.tests_per_million;
  for (const auto& w : daily.warnings) report.warnings.push_back({"ClampedIncidence", "epidata", w});

  const std::string stem = file_stem(cfg.region);
  std::mt19937_64 rng(cfg.rng_seed);
  bool failed = false;

  auto shift = [&](REstimate e) {
    e.window = {e.window.first + begin, e.window.second + begin};
    return e;
  };

  for (Method m : cfg.methods) {
    try {
      switch (m) {
        case Method::kEG:
          report.estimates.push_back(shift(estimate_eg(series, gt)));
          break;
        case Method::kML:
          report.estimates.push_back(shift(estimate_ml(series, gt)));
          break;
        case Method::kSB: {
          TrajectoryReport tr{estimate_sb(series, gt, cfg.sb), {}, {}};
          tr.summary = time_average(tr.trajectory);
          report.trajectories.push_back(std::move(tr));
          break;
        }
        case Method::kTD: {
          TdResult td = estimate_td(series, gt, cfg.resamples, rng);
          for (const auto& w : td.trajectory.warnings) report.warnings.push_back({"NoAncestors", "TD", w});
          TrajectoryReport tr{std::move(td.trajectory), {}, {}};
          tr.summary = case_weighted_mean(tr.trajectory, series, true);
          report.trajectories.push_back(std::move(tr));
          break;
        }
        case Method::kSIR: {
          if (!cumulative.population) {
            throw Error(ErrorCode::kInvalidArgument, "population unknown for region " + cfg.region);
          }
          const std::int64_t population = *cumulative.population;
          std::vector<std::int64_t> recovered(cumulative.recovered.begin() + static_cast<std::ptrdiff_t>(begin),
                                              cumulative.recovered.begin() + static_cast<std::ptrdiff_t>(end) + 1);
          sir::FitResult fitted = sir::fit(series, population, std::span<const std::int64_t>(recovered));
          if (fitted.no_growth) {
            report.warnings.push_back({"NoGrowth", "SIR", "fitted beta <= 1e-6; no epidemic growth"});
          }
          if (!fitted.converged) {
            report.warnings.push_back({"NoConverge", "SIR", "simplex did not shrink below tolerance"});
          }
          const std::int64_t first = series[0];
          const sir::State init = sir::initial_state(first, population, std::min(recovered.front(), first));
          sir::Forecast fc = sir::forecast(fitted.params, init, population, series.start_date(),
                                           static_cast<int>(series.size()));
          const double r0 = sir::r0(fitted.params);
          report.estimates.push_back({Method::kSIR, r0, r0, r0, {begin, end}});
          report.forecast = fc;
          if (cfg.write_csv) {
            sir::Trajectory traj = sir::integrate(fitted.params, init, fc.horizon_days, sir::kForecastStep);
            traj.start_date = series.start_date();
            traj.population = population;
            std::ostringstream csv;
            traj.write_csv(csv);
            write_file(cfg.out_dir / (stem + "_SIR_trajectory.csv"), csv.str(), outcome);
          }
          break;
        }
      }
    } catch (const Error& e) {
      failed = true;
      report.warnings.push_back({std::string(to_string(e.code())), std::string(to_string(m)), e.what()});
    }
  }

  if (cfg.write_csv) {
    for (auto& tr : report.trajectories) {
      tr.csv_file = stem + "_" + std::string(to_string(tr.trajectory.method)) + ".csv";
      std::ostringstream csv;
      write_trajectory_csv(tr.trajectory, csv);
      write_file(cfg.out_dir / tr.csv_file, csv.str(), outcome);
    }
  }
  if (cfg.write_json) {
    write_file(cfg.out_dir / (stem + "_report.json"), to_json(report).dump(2) + "\n", outcome);
  }
  outcome.exit_code = failed ? 2 : 0;
  return outcome;
}

}  // namespace repronum::cli
