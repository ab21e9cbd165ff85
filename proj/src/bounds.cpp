#include "faultbound/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace faultbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 0.5))
    throw std::domain_error("epsilon must be in [0, 0.5]");
}

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta < 0.5))
    throw std::domain_error("delta must be in [0, 0.5)");
}

}  // namespace

ChannelParams ChannelParams::from(double epsilon, double delta) {
  check_epsilon(epsilon);
  check_delta(delta);

  ChannelParams p;
  p.epsilon = epsilon;
  p.delta = delta;
  p.xi = 1.0 - 2.0 * epsilon;
  // Conjugate form of (1 - sqrt(1 - 2e))/2; no cancellation for small e.
  p.omega = epsilon / (1.0 + std::sqrt(1.0 - 2.0 * epsilon));
  if (epsilon == 0.0) {
    p.t = kInf;
  } else {
    const double w = p.omega;
    const double w1 = 1.0 - w;
    p.t = (w * w * w + w1 * w1 * w1) / (w * w1);
  }
  p.Delta = delta == 0.0
                ? 1.0
                : 1.0 + delta * std::log2(delta) + (1.0 - delta) * std::log2(1.0 - delta);
  return p;
}

void EnergyModel::validate() const {
  if (!(leakage_share >= 0.0 && leakage_share < 1.0))
    throw std::domain_error("leakage_share must be in [0, 1)");
  if (!(vt > 0.0)) throw std::domain_error("vt must be positive");
  if (!(vdd > vt)) throw std::domain_error("vdd must exceed vt");
  if (!(alpha > 0.0)) throw std::domain_error("alpha must be positive");
}

double noisy_sw(double sw_y, double epsilon) {
  check_epsilon(epsilon);
  if (!(sw_y >= 0.0 && sw_y <= 1.0))
    throw std::domain_error("switching activity must be in [0, 1]");
  const double xi = 1.0 - 2.0 * epsilon;
  return xi * xi * sw_y + 2.0 * epsilon * (1.0 - epsilon);
}

double redundancy_lb(double s, double delta, double k, double epsilon) {
  check_epsilon(epsilon);
  check_delta(delta);
  if (!(s >= 0.0)) throw std::domain_error("sensitivity must be >= 0");
  if (!(k >= 1.0)) throw std::domain_error("fanin must be >= 1");

  if (s < 1.0) return 0.0;     // constant function: the bound is vacuous
  if (epsilon == 0.0) return 0.0;  // log t diverges
  if (epsilon == 0.5) return kInf; // log t = 0: no finite size suffices

  const double numerator = s * std::log2(s) + 2.0 * s * std::log2(2.0 * (1.0 - 2.0 * delta));
  const double denominator = k * std::log2(ChannelParams::from(epsilon, delta).t);
  const double r = numerator / denominator;
  return r > 0.0 ? r : 0.0;
}

double energy_ratio_lb(const CircuitSummary& summary, double delta, double epsilon) {
  if (!(summary.sw0 > 0.0 && summary.sw0 <= 1.0))
    throw std::domain_error("sw0 must be in (0, 1]");
  if (!(summary.S0 >= 1.0)) throw std::domain_error("S0 must be >= 1");
  const double size_factor = 1.0 + redundancy_lb(summary.s, delta, summary.k, epsilon) / summary.S0;
  return size_factor * (noisy_sw(summary.sw0, epsilon) / summary.sw0);
}

double total_energy_ratio_lb(const CircuitSummary& summary, double delta, double epsilon,
                             const EnergyModel& model) {
  model.validate();
  if (!(summary.sw0 > 0.0 && summary.sw0 < 1.0))
    throw std::domain_error("sw0 must be in (0, 1)");
  if (!(summary.S0 >= 1.0)) throw std::domain_error("S0 must be >= 1");
  const double size_factor = 1.0 + redundancy_lb(summary.s, delta, summary.k, epsilon) / summary.S0;
  const double sw_e = noisy_sw(summary.sw0, epsilon);
  const double sw_factor = sw_e / summary.sw0;
  const double leak_factor = (1.0 - sw_e) / (1.0 - summary.sw0);
  const double lambda = model.leakage_share;
  return size_factor * ((1.0 - lambda) * sw_factor + lambda * leak_factor);
}

double leakage_ratio(double sw0, double epsilon) {
  check_epsilon(epsilon);
  if (!(sw0 > 0.0 && sw0 < 1.0)) throw std::domain_error("sw0 must be in (0, 1)");
  const double xi2 = (1.0 - 2.0 * epsilon) * (1.0 - 2.0 * epsilon);
  const double e2 = 2.0 * epsilon * (1.0 - epsilon);
  return (xi2 + e2 / (1.0 - sw0)) / (xi2 + e2 / sw0);
}

DepthBound depth_lb(double n, double delta, double k, double epsilon) {
  check_epsilon(epsilon);
  check_delta(delta);
  if (!(n >= 1.0)) throw std::domain_error("n must be >= 1");
  if (!(k >= 1.0)) throw std::domain_error("fanin must be >= 1");

  const ChannelParams p = ChannelParams::from(epsilon, delta);
  DepthBound d;
  const double amplification = k * p.xi * p.xi;
  if (amplification > 1.0) {
    d.has_bound = true;
    d.levels = std::log2(n * p.Delta) / std::log2(amplification);
  } else {
    d.max_feasible_n = 1.0 / p.Delta;
    d.impossible = n > d.max_feasible_n;
  }
  return d;
}

double delay_ratio_lb(double n, double delta, double k, double epsilon,
                      DelayBaseline baseline, double d0_measured) {
  const DepthBound d = depth_lb(n, delta, k, epsilon);
  if (!d.has_bound) return kNaN;
  if (baseline == DelayBaseline::kFigure) {
    const double xi = 1.0 - 2.0 * epsilon;
    return std::log2(k) / std::log2(k * xi * xi);
  }
  if (!(d0_measured >= 1.0))
    throw std::domain_error("measured depth must be >= 1 for the analyze baseline");
  return std::max(1.0, d.levels / d0_measured);
}

double scaled_delay(double depth_levels, const EnergyModel& model) {
  model.validate();
  if (!(depth_levels >= 0.0)) throw std::domain_error("depth must be >= 0");
  return depth_levels * model.vdd / std::pow(model.vdd - model.vt, model.alpha);
}

double power_ratio(const CircuitSummary& summary, double delta, double epsilon,
                   const EnergyModel& model, DelayBaseline baseline) {
  return evaluate_bounds(summary, delta, epsilon, model, baseline).power_ratio;
}

double edp_ratio_lb(const CircuitSummary& summary, double delta, double epsilon,
                    const EnergyModel& model, DelayBaseline baseline) {
  return evaluate_bounds(summary, delta, epsilon, model, baseline).edp_ratio_lb;
}

BoundsReport evaluate_bounds(const CircuitSummary& summary, double delta, double epsilon,
                             const EnergyModel& model, DelayBaseline baseline) {
  model.validate();
  if (!(summary.sw0 > 0.0 && summary.sw0 < 1.0))
    throw std::domain_error("sw0 must be in (0, 1)");
  if (!(summary.S0 >= 1.0)) throw std::domain_error("S0 must be >= 1");

  BoundsReport r;
  r.redundancy_lb = redundancy_lb(summary.s, delta, summary.k, epsilon);
  r.size_factor_lb = 1.0 + r.redundancy_lb / summary.S0;
  const double sw_e = noisy_sw(summary.sw0, epsilon);
  r.sw_factor = sw_e / summary.sw0;
  r.switching_energy_ratio_lb = r.size_factor_lb * r.sw_factor;
  r.leak_factor = (1.0 - sw_e) / (1.0 - summary.sw0);
  const double lambda = model.leakage_share;
  r.total_energy_ratio_lb =
      r.size_factor_lb * ((1.0 - lambda) * r.sw_factor + lambda * r.leak_factor);
  r.leakage_ratio = leakage_ratio(summary.sw0, epsilon);
  r.depth = depth_lb(summary.n, delta, summary.k, epsilon);
  if (r.depth.has_bound) {
    r.delay_ratio_lb =
        delay_ratio_lb(summary.n, delta, summary.k, epsilon, baseline, summary.d0);
    r.power_ratio = r.total_energy_ratio_lb / r.delay_ratio_lb;
    r.edp_ratio_lb = r.total_energy_ratio_lb * r.delay_ratio_lb;
  } else {
    r.delay_ratio_lb = kNaN;
    r.power_ratio = kNaN;
    r.edp_ratio_lb = kNaN;
  }
  return r;
}

}  // namespace faultbound
