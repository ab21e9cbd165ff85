#include "faultbound/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace faultbound {

namespace {

const char* kCsvHeader =
    "name,epsilon,delta,s,S0,k,n,d0,sw0,omega,t,Delta,redundancy_lb,size_factor_lb,"
    "sw_factor,energy_ratio_lb,total_energy_ratio_lb,leakage_ratio,depth_lb,infeasible,"
    "delay_ratio_lb,power_ratio,edp_ratio_lb";

void check_grid_domain(SweepParam param, double v) {
  switch (param) {
    case SweepParam::kEpsilon:
      if (!(v >= 0.0 && v <= 0.5)) throw std::domain_error("epsilon grid must stay in [0, 0.5]");
      break;
    case SweepParam::kDelta:
      if (!(v >= 0.0 && v < 0.5)) throw std::domain_error("delta grid must stay in [0, 0.5)");
      break;
    case SweepParam::kSw0:
      if (!(v > 0.0 && v < 1.0)) throw std::domain_error("sw0 grid must stay in (0, 1)");
      break;
    case SweepParam::kK:
      if (!(v >= 1.0)) throw std::domain_error("fanin grid must stay >= 1");
      break;
  }
}

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return round9(v);
}

}  // namespace

double round9(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::strtod(buf, nullptr);
}

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void SweepSpec::validate() const {
  if (points < 2) throw std::domain_error("sweep needs at least 2 grid points");
  if (!(start <= stop)) throw std::domain_error("sweep grid start must not exceed stop");
  if (scale == GridScale::kLog && !(start > 0.0))
    throw std::domain_error("log-spaced sweep needs start > 0");
  check_grid_domain(param, start);
  check_grid_domain(param, stop);
  model.validate();
  if (param != SweepParam::kDelta && !(delta >= 0.0 && delta < 0.5))
    throw std::domain_error("delta must be in [0, 0.5)");
  if (param != SweepParam::kEpsilon && !(epsilon >= 0.0 && epsilon <= 0.5))
    throw std::domain_error("epsilon must be in [0, 0.5]");
}

double SweepSpec::grid_point(int i) const {
  if (i == 0) return start;
  if (i == points - 1) return stop;
  const double f = static_cast<double>(i) / static_cast<double>(points - 1);
  if (scale == GridScale::kLinear) return start + (stop - start) * f;
  return std::exp(std::log(start) + (std::log(stop) - std::log(start)) * f);
}

ReportRow make_report_row(std::string name, const CircuitSummary& summary, double delta,
                          double epsilon, const EnergyModel& model, DelayBaseline baseline) {
  ReportRow row;
  row.name = std::move(name);
  row.epsilon = epsilon;
  row.delta = delta;
  row.summary = summary;
  row.chan = ChannelParams::from(epsilon, delta);
  row.bounds = evaluate_bounds(summary, delta, epsilon, model, baseline);
  return row;
}

std::vector<ReportRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<ReportRow> rows;
  rows.reserve(spec.points);
  for (int i = 0; i < spec.points; ++i) {
    const double v = spec.grid_point(i);
    CircuitSummary s = spec.summary;
    double eps = spec.epsilon;
    double delta = spec.delta;
    switch (spec.param) {
      case SweepParam::kEpsilon: eps = v; break;
      case SweepParam::kDelta: delta = v; break;
      case SweepParam::kSw0: s.sw0 = v; break;
      case SweepParam::kK: s.k = v; break;
    }
    rows.push_back(make_report_row(spec.name, s, delta, eps, spec.model, spec.baseline));
  }
  return rows;
}

std::vector<ReportRow> run_bench(const std::vector<Circuit>& circuits,
                                 const BenchConfig& cfg) {
  std::vector<ReportRow> rows;
  for (const Circuit& c : circuits) {
    try {
      SimConfig sim = cfg.sim;
      sim.epsilon = 0.0;
      auto [traces, activity] = simulate(c, sim);
      (void)traces;

      SensitivityResult sens;
      std::string mode;
      if (c.inputs().size() <= cfg.exact_threshold) {
        sens = sensitivity_exact(c, cfg.exact_threshold, cfg.sim.jobs);
        mode = "exact";
      } else {
        sens = sensitivity_sampled(c, cfg.sensitivity_samples, cfg.sim.seed);
        mode = "sampled";
      }

      const CircuitSummary summary = summarize(c, activity, sens);
      for (double eps : cfg.epsilons) {
        ReportRow row = make_report_row(c.name(), summary, cfg.delta, eps, cfg.model,
                                        DelayBaseline::kAnalyze);
        row.sensitivity_mode = mode;
        rows.push_back(std::move(row));
      }
    } catch (const std::exception& e) {
      ReportRow row;
      row.name = c.name();
      row.error = e.what();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string write_csv(const std::vector<ReportRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const ReportRow& row : rows) {
    if (!row.error.empty()) continue;
    const BoundsReport& b = row.bounds;
    out += row.name;
    for (double v : {row.epsilon, row.delta, row.summary.s, row.summary.S0, row.summary.k,
                     row.summary.n, row.summary.d0, row.summary.sw0, row.chan.omega,
                     row.chan.t, row.chan.Delta, b.redundancy_lb, b.size_factor_lb,
                     b.sw_factor, b.switching_energy_ratio_lb, b.total_energy_ratio_lb,
                     b.leakage_ratio}) {
      out += ',';
      out += format_g9(v);
    }
    if (b.depth.has_bound) {
      out += ',';
      out += format_g9(b.depth.levels);
      out += ",0,";
      out += format_g9(b.delay_ratio_lb);
      out += ',';
      out += format_g9(b.power_ratio);
      out += ',';
      out += format_g9(b.edp_ratio_lb);
    } else {
      out += ",,1,,,";
    }
    out += '\n';
  }
  return out;
}

std::string write_json(const std::vector<ReportRow>& rows, const nlohmann::json& run_config) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["spec"] = run_config;
  nlohmann::json jrows = nlohmann::json::array();
  for (const ReportRow& row : rows) {
    nlohmann::json r;
    r["name"] = row.name;
    if (!row.error.empty()) {
      r["error"] = row.error;
      jrows.push_back(std::move(r));
      continue;
    }
    r["epsilon"] = json_number(row.epsilon);
    r["delta"] = json_number(row.delta);
    r["s"] = json_number(row.summary.s);
    r["S0"] = json_number(row.summary.S0);
    r["k"] = json_number(row.summary.k);
    r["n"] = json_number(row.summary.n);
    r["d0"] = json_number(row.summary.d0);
    r["m"] = json_number(row.summary.m);
    r["sw0"] = json_number(row.summary.sw0);
    r["omega"] = json_number(row.chan.omega);
    r["t"] = json_number(row.chan.t);
    r["xi"] = json_number(row.chan.xi);
    r["Delta"] = json_number(row.chan.Delta);
    const BoundsReport& b = row.bounds;
    r["redundancy_lb"] = json_number(b.redundancy_lb);
    r["size_factor_lb"] = json_number(b.size_factor_lb);
    r["sw_factor"] = json_number(b.sw_factor);
    r["energy_ratio_lb"] = json_number(b.switching_energy_ratio_lb);
    r["total_energy_ratio_lb"] = json_number(b.total_energy_ratio_lb);
    r["leakage_ratio"] = json_number(b.leakage_ratio);
    r["leak_factor"] = json_number(b.leak_factor);
    r["infeasible"] = !b.depth.has_bound;
    if (b.depth.has_bound) {
      r["depth_lb"] = json_number(b.depth.levels);
      r["delay_ratio_lb"] = json_number(b.delay_ratio_lb);
      r["power_ratio"] = json_number(b.power_ratio);
      r["edp_ratio_lb"] = json_number(b.edp_ratio_lb);
    } else {
      r["depth_lb"] = nullptr;
      r["max_feasible_n"] = json_number(b.depth.max_feasible_n);
      r["impossible"] = b.depth.impossible;
      r["delay_ratio_lb"] = nullptr;
      r["power_ratio"] = nullptr;
      r["edp_ratio_lb"] = nullptr;
    }
    if (!row.sensitivity_mode.empty()) r["sensitivity_mode"] = row.sensitivity_mode;
    jrows.push_back(std::move(r));
  }
  j["rows"] = std::move(jrows);
  return j.dump(2) + "\n";
}

}  // namespace faultbound
