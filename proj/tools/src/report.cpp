#include "repronum/cli/report.hpp"

#include <ostream>

namespace repronum::cli {

using nlohmann::json;

const REstimate* Report::estimate(Method m) const {
  for (const auto& e : estimates) {
    if (e.method == m) return &e;
  }
  return nullptr;
}

const TrajectoryReport* Report::trajectory(Method m) const {
  for (const auto& t : trajectories) {
    if (t.trajectory.method == m) return &t;
  }
  return nullptr;
}

json to_json(const REstimate& e) {
  return {{"method", to_string(e.method)},
          {"r", e.r},
          {"ci", {e.ci_low, e.ci_high}},
          {"window", {e.window.first, e.window.second}}};
}

json to_json(const sir::Forecast& f) {
  return {{"infection_rate_beta", f.params.beta},
          {"recovery_rate_gamma", f.params.gamma},
          {"r0", f.r0},
          {"herd_immunity_threshold_pct", f.herd_immunity_pct},
          {"peak_of_pandemic", f.peak_date.iso()},
          {"maximum_infected", f.max_infected},
          {"severe_cases", f.severe},
          {"patients_need_intensive_care", f.icu},
          {"deaths_assumed_for_3_5pct_fatality_rate", f.deaths},
          {"cumulative_infected", f.cumulative_infected},
          {"horizon_days", f.horizon_days}};
}

json to_json(const Report& r) {
  json data = {{"first_date", r.data.first_date.iso()},
               {"last_date", r.data.last_date.iso()},
               {"days", r.data.days},
               {"total_confirmed", r.data.total_confirmed},
               {"total_recovered", r.data.total_recovered},
               {"total_deaths", r.data.total_deaths},
               {"incidence_total", r.data.incidence_total}};
  data["population"] = r.data.population ? json(*r.data.population) : json(nullptr);
  data["tests_per_million"] = r.data.tests_per_million ? json(*r.data.tests_per_million) : json(nullptr);

  json estimates = json::array();
  for (const auto& e : r.estimates) estimates.push_back(to_json(e));

  json trajectories = json::array();
  for (const auto& t : r.trajectories) {
    trajectories.push_back({{"method", to_string(t.trajectory.method)},
                            {"start_date", t.trajectory.start_date.iso()},
                            {"days", t.trajectory.size()},
                            {"r_mean", t.summary.r_mean},
                            {"r_low", t.summary.r_low},
                            {"r_high", t.summary.r_high},
                            {"csv", t.csv_file}});
  }

  json warnings = json::array();
  for (const auto& w : r.warnings) {
    warnings.push_back({{"code", w.code}, {"source", w.source}, {"message", w.message}});
  }

  json out = {{"region", r.region},
              {"data", data},
              {"window", {r.window.first, r.window.second}},
              {"estimates", estimates},
              {"trajectories", trajectories},
              {"warnings", warnings}};
  out["forecast"] = r.forecast ? to_json(*r.forecast) : json(nullptr);
  return out;
}

Report report_from_json(const json& j) {
  Report r;
  r.region = j.at("region").get<std::string>();
  const auto& d = j.at("data");
  r.data.first_date = Date::parse(d.at("first_date").get<std::string>());
  r.data.last_date = Date::parse(d.at("last_date").get<std::string>());
  r.data.days = d.at("days").get<std::size_t>();
  r.data.total_confirmed = d.at("total_confirmed").get<std::int64_t>();
  r.data.total_recovered = d.at("total_recovered").get<std::int64_t>();
  r.data.total_deaths = d.at("total_deaths").get<std::int64_t>();
  r.data.incidence_total = d.at("incidence_total").get<std::int64_t>();
  if (!d.at("population").is_null()) r.data.population = d.at("population").get<std::int64_t>();
  if (!d.at("tests_per_million").is_null()) r.data.tests_per_million = d.at("tests_per_million").get<double>();
  r.window = {j.at("window").at(0).get<std::size_t>(), j.at("window").at(1).get<std::size_t>()};

  for (const auto& e : j.at("estimates")) {
    REstimate est;
    est.method = parse_method(e.at("method").get<std::string>());
    est.r = e.at("r").get<double>();
    est.ci_low = e.at("ci").at(0).get<double>();
    est.ci_high = e.at("ci").at(1).get<double>();
    est.window = {e.at("window").at(0).get<std::size_t>(), e.at("window").at(1).get<std::size_t>()};
    r.estimates.push_back(est);
  }
  for (const auto& t : j.at("trajectories")) {
    TrajectoryReport tr;
    tr.trajectory.method = parse_method(t.at("method").get<std::string>());
    tr.trajectory.start_date = Date::parse(t.at("start_date").get<std::string>());
    tr.summary = {t.at("r_mean").get<double>(), t.at("r_low").get<double>(), t.at("r_high").get<double>()};
    tr.csv_file = t.at("csv").get<std::string>();
    r.trajectories.push_back(std::move(tr));
  }
  if (const auto& f = j.at("forecast"); !f.is_null()) {
    sir::Forecast fc;
    fc.params = {f.at("infection_rate_beta").get<double>(), f.at("recovery_rate_gamma").get<double>()};
    fc.r0 = f.at("r0").get<double>();
    fc.herd_immunity_pct = f.at("herd_immunity_threshold_pct").get<double>();
    fc.peak_date = Date::parse(f.at("peak_of_pandemic").get<std::string>());
    fc.max_infected = f.at("maximum_infected").get<std::int64_t>();
    fc.severe = f.at("severe_cases").get<std::int64_t>();
    fc.icu = f.at("patients_need_intensive_care").get<std::int64_t>();
    fc.deaths = f.at("deaths_assumed_for_3_5pct_fatality_rate").get<std::int64_t>();
    fc.cumulative_infected = f.at("cumulative_infected").get<std::int64_t>();
    fc.horizon_days = f.at("horizon_days").get<double>();
    r.forecast = fc;
  }
  for (const auto& w : j.at("warnings")) {
    r.warnings.push_back(
        {w.at("code").get<std::string>(), w.at("source").get<std::string>(), w.at("message").get<std::string>()});
  }
  return r;
}

void write_trajectory_csv(const RTrajectory& t, std::ostream& out) {
  out << "date,r_mean,r_low,r_high,censored\n";
  auto old = out.precision(10);
  for (std::size_t k = 0; k < t.size(); ++k) {
    bool censored = k < t.censored.size() && t.censored[k];
    out << (t.start_date + static_cast<int>(k)).iso() << ',' << t.r_mean[k] << ',' << t.r_low[k] << ','
        << t.r_high[k] << ',' << (censored ? 1 : 0) << '\n';
  }
  out.precision(old);
}

}  // namespace repronum::cli
