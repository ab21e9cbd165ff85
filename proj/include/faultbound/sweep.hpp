#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "faultbound/boolean_metrics.hpp"
#include "faultbound/bounds.hpp"
#include "faultbound/logic_sim.hpp"
#include "faultbound/netlist.hpp"

namespace faultbound {

enum class SweepParam { kEpsilon, kDelta, kSw0, kK };
enum class GridScale { kLinear, kLog };

// One swept parameter over a grid, everything else fixed.
struct SweepSpec {
  std::string name = "sweep";
  SweepParam param = SweepParam::kEpsilon;
  double start = 1e-4;
  double stop = 0.499;
  int points = 50;
  GridScale scale = GridScale::kLog;

  CircuitSummary summary;
  double epsilon = 0.01;  // fixed value when sweeping another parameter
  double delta = 0.01;
  EnergyModel model;
  DelayBaseline baseline = DelayBaseline::kFigure;

  void validate() const;  // throws std::domain_error on grid/domain violations
  double grid_point(int i) const;
};

// One (circuit-or-spec, epsilon) evaluation. `error`, when nonempty, marks a
// failed circuit; its numeric fields are meaningless.
struct ReportRow {
  std::string name;
  double epsilon = 0.0;
  double delta = 0.0;
  CircuitSummary summary;
  ChannelParams chan;
  BoundsReport bounds;
  std::string sensitivity_mode;  // "exact", "sampled", or "" when supplied
  std::string error;
};

ReportRow make_report_row(std::string name, const CircuitSummary& summary, double delta,
                          double epsilon, const EnergyModel& model, DelayBaseline baseline);

std::vector<ReportRow> run_sweep(const SweepSpec& spec);

struct BenchConfig {
  std::vector<double> epsilons{0.001, 0.01, 0.1};
  double delta = 0.01;
  EnergyModel model;
  SimConfig sim;  // epsilon ignored; the measurement run is error-free
  std::uint32_t exact_threshold = 20;
  std::uint64_t sensitivity_samples = 4096;
};

// Per circuit: error-free simulation (sw0), sensitivity (exact or sampled),
// structural metrics, then one row per epsilon with the measured-depth delay
// baseline. A circuit that fails to analyze contributes one error row and the
// batch continues.
std::vector<ReportRow> run_bench(const std::vector<Circuit>& circuits,
                                 const BenchConfig& cfg);

// Fixed column order; floats at 9 significant digits; rows with a depth-bound
// infeasibility leave depth_lb/delay/power/edp empty and set infeasible=1.
// Error rows are omitted (they appear in the JSON form).
std::string write_csv(const std::vector<ReportRow>& rows);

// {schema_version, spec, rows:[...]}; numeric values are pre-rounded to 9
// significant digits so the emitted text parses back bit-exactly.
std::string write_json(const std::vector<ReportRow>& rows, const nlohmann::json& run_config);

// Nearest double to the 9-significant-digit decimal rendering of v.
double round9(double v);
std::string format_g9(double v);

}  // namespace faultbound
