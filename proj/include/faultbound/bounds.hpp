#pragma once

namespace faultbound {

// Quantities derived from the gate error probability epsilon and the output
// error budget delta; shared by every bound below. Logarithms are base 2.
struct ChannelParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double omega = 0.0;  // (1 - sqrt(1 - 2e)) / 2
  double t = 0.0;      // (w^3 + (1-w)^3) / (w (1-w)); equals (2 - 3e)/e
  double xi = 1.0;     // 1 - 2e
  double Delta = 1.0;  // 1 + d log d + (1-d) log(1-d)

  // Throws std::domain_error outside 0 <= epsilon <= 0.5, 0 <= delta < 0.5.
  static ChannelParams from(double epsilon, double delta);
};

// Bound inputs for one circuit, either measured or supplied manually.
struct CircuitSummary {
  double s = 0.0;    // Boolean sensitivity of the multi-output function
  double S0 = 1.0;   // error-free gate count
  double sw0 = 0.5;  // average error-free switching activity per gate
  double k = 2.0;    // average fanin
  double n = 1.0;    // primary input count
  double d0 = 0.0;   // error-free depth in gate levels (0 = not measured)
  double m = 1.0;    // output count
};

struct EnergyModel {
  double leakage_share = 0.5;  // leakage fraction of baseline total energy
  double vdd = 1.0;            // supply voltage
  double vt = 0.3;             // threshold voltage
  double alpha = 1.3;          // velocity-saturation exponent

  void validate() const;  // throws std::domain_error
};

// Baseline for the delay ratio. kFigure normalizes by the depth bound at
// epsilon = 0 (n and Delta cancel, leaving log k / log(k xi^2)); kAnalyze
// normalizes by the measured netlist depth and clamps at 1.
enum class DelayBaseline { kFigure, kAnalyze };

struct DepthBound {
  bool has_bound = false;       // xi^2 > 1/k branch taken
  double levels = 0.0;          // valid when has_bound
  double max_feasible_n = 0.0;  // 1/Delta, valid when !has_bound
  bool impossible = false;      // !has_bound and n > max_feasible_n
};

struct BoundsReport {
  double redundancy_lb = 0.0;      // additional gates; may be +inf
  double size_factor_lb = 1.0;     // 1 + redundancy_lb / S0
  double sw_factor = 1.0;          // noisy_sw(sw0) / sw0
  double switching_energy_ratio_lb = 1.0;
  double leak_factor = 1.0;        // (1 - noisy_sw(sw0)) / (1 - sw0)
  double total_energy_ratio_lb = 1.0;
  double leakage_ratio = 1.0;      // leakage/switching ratio vs error-free
  DepthBound depth;
  // NaN whenever the depth bound is unavailable.
  double delay_ratio_lb = 1.0;
  double power_ratio = 1.0;  // total_energy_ratio_lb / delay_ratio_lb
  double edp_ratio_lb = 1.0; // total_energy_ratio_lb * delay_ratio_lb
};

// Switching activity of a noisy output given the error-free activity:
// (1 - 2e)^2 sw_y + 2e(1 - e).
double noisy_sw(double sw_y, double epsilon);

// Minimum additional gates to compute a function of sensitivity s with
// epsilon-noisy k-input gates at output error budget delta:
// [s log s + 2s log(2(1 - 2 delta))] / (k log t), clamped below at 0.
// 0 at epsilon = 0; +inf at epsilon = 0.5 (no finite circuit suffices).
double redundancy_lb(double s, double delta, double k, double epsilon);

// Switching-energy ratio vs the error-free circuit: size factor times
// activity factor. Requires 0 < sw0 <= 1.
double energy_ratio_lb(const CircuitSummary& summary, double delta, double epsilon);

// Total-energy ratio with a leakage share lambda:
// size_factor * [(1 - lambda) sw_factor + lambda leak_factor].
// Requires 0 < sw0 < 1.
double total_energy_ratio_lb(const CircuitSummary& summary, double delta, double epsilon,
                             const EnergyModel& model);

// Ratio of (leakage energy / switching energy) between the noisy and the
// error-free circuit. Requires 0 < sw0 < 1.
double leakage_ratio(double sw0, double epsilon);

// Depth lower bound: log(n Delta) / log(k xi^2) when xi^2 > 1/k; otherwise no
// bound exists and reliable computation requires n <= 1/Delta.
DepthBound depth_lb(double n, double delta, double k, double epsilon);

// Relative latency; NaN when the depth bound is unavailable.
double delay_ratio_lb(double n, double delta, double k, double epsilon,
                      DelayBaseline baseline, double d0_measured = 0.0);

// Absolute relative delay of `depth_levels` gate levels:
// depth * vdd / (vdd - vt)^alpha.
double scaled_delay(double depth_levels, const EnergyModel& model);

// Energy per unit time (total energy ratio over delay ratio) and the
// energy-delay product, at fixed supply voltage. NaN when the depth bound is
// unavailable.
double power_ratio(const CircuitSummary& summary, double delta, double epsilon,
                   const EnergyModel& model, DelayBaseline baseline = DelayBaseline::kFigure);
double edp_ratio_lb(const CircuitSummary& summary, double delta, double epsilon,
                    const EnergyModel& model, DelayBaseline baseline = DelayBaseline::kFigure);

BoundsReport evaluate_bounds(const CircuitSummary& summary, double delta, double epsilon,
                             const EnergyModel& model, DelayBaseline baseline);

}  // namespace faultbound
