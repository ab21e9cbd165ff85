// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "faultbound/boolean_metrics.hpp"
#include "faultbound/bounds.hpp"
#include "faultbound/logic_sim.hpp"
#include "faultbound/netlist.hpp"
#include "faultbound/prng.hpp"
#include "faultbound/sweep.hpp"

using namespace faultbound;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string g9(double v) { return format_g9(v); }

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(FAULTBOUND_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliRun r;
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

double u01(std::uint64_t base, std::uint64_t i) {
  return (double(stream_word_at(base, i) >> 11) + 1.0) / 9007199254740992.0;
}

// --- criteria -------------------------------------------------------------

// Channel law on every error-free parity-16 net trace at T = 1e5.
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const Circuit c = gen_parity(16, 2);
  SimConfig cfg;
  cfg.vectors = 100000;
  cfg.seed = 12345;
  auto [traces, profile] = simulate(c, cfg);
  const double T = double(cfg.vectors);

  double worst = 0.0;
  for (double eps : {0.05, 0.1, 0.3}) {
    for (NetId id = 0; id < c.net_count(); ++id) {
      const double sw0 = profile.per_net[id].sw;
      const BitVec noisy = apply_channel(traces.by_net[id], eps, cfg.seed + id);
      const double sw = double(noisy.count_transitions()) / (T - 1.0);
      worst = std::max(worst, std::abs(sw - noisy_sw(sw0, eps)));
    }
  }
  const double elapsed = seconds_since(t0);
  report(1, worst < 0.01 && elapsed < 5.0,
         "channel law holds on parity-16 net traces for eps in {0.05, 0.1, 0.3}",
         "max |sw - predicted| = " + g9(worst) + ", " + g9(elapsed) + " s");
}

// Empirical whole-output error of the noisy parity-16 tree vs closed form.
void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const Circuit c = gen_parity(16, 2);
  SimConfig cfg;
  cfg.vectors = 100000;
  cfg.seed = 20260809;
  cfg.epsilon = 0.05;
  const SimResult r = simulate_noisy(c, cfg);
  const double expected = (1.0 - std::pow(0.9, 15)) / 2.0;  // 0.39705
  const double err = std::abs(r.output_error_delta - expected);
  const double elapsed = seconds_since(t0);
  report(2, err < 0.005 && elapsed < 5.0,
         "noisy parity-16 delta matches (1 - 0.9^15)/2",
         "delta = " + g9(r.output_error_delta) + ", |err| = " + g9(err) + ", " +
             g9(elapsed) + " s");
}

// Order-of-magnitude redundancy factor near the half error rate.
void criterion3() {
  const double factor = redundancy_lb(10, 0.01, 2, 0.49) / 21.0;
  report(3, std::abs(factor - 11.07) < 0.02 && factor > 10.0,
         "redundancy_lb(s=10, delta=0.01, k=2, eps=0.49) / 21 = 11.07 +- 0.02",
         "factor = " + g9(factor));
}

// Measured parity-16 pipeline needs at least 40% more energy at eps = 1%.
void criterion4() {
  const Circuit c = gen_parity(16, 2);
  SimConfig cfg;
  cfg.vectors = 100000;
  cfg.seed = 99;
  auto [traces, activity] = simulate(c, cfg);
  (void)traces;
  const CircuitSummary summary = summarize(c, activity, sensitivity_exact(c));
  EnergyModel model;  // leakage share 0.5
  const double ratio = total_energy_ratio_lb(summary, 0.01, 0.01, model);
  report(4, std::abs(ratio - 1.416) < 0.01 && ratio >= 1.4,
         "measured parity-16 total energy ratio at (delta, eps) = (0.01, 0.01)",
         "ratio = " + g9(ratio) + ", s = " + g9(summary.s) + ", S0 = " + g9(summary.S0) +
             ", sw0 = " + g9(summary.sw0));
}

// Leakage ratio direction over the sw0 x eps grid; exactly 1 at sw0 = 0.5.
void criterion5() {
  bool ok = true;
  std::string detail = "all directions correct";
  for (double sw0 = 0.1; sw0 <= 0.91; sw0 += 0.1) {
    for (double eps : {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.49}) {
      const double r = leakage_ratio(sw0, eps);
      bool point_ok;
      if (std::abs(sw0 - 0.5) < 1e-9)
        point_ok = std::abs(r - 1.0) <= 1e-12;
      else if (sw0 < 0.5)
        point_ok = r < 1.0;
      else
        point_ok = r > 1.0;
      if (!point_ok) {
        ok = false;
        detail = "violated at sw0 = " + g9(sw0) + ", eps = " + g9(eps) + ", ratio = " + g9(r);
      }
    }
  }
  report(5, ok, "leakage ratio < 1 iff sw0 < 0.5, = 1 at sw0 = 0.5", detail);
}

// Depth bound value and infeasibility branch.
void criterion6() {
  const DepthBound d = depth_lb(10, 0.01, 3, 0.01);
  const DepthBound inf = depth_lb(10, 0.01, 2, 0.15);
  const bool ok = d.has_bound && std::abs(d.levels - 2.0963) < 0.001 && !inf.has_bound &&
                  std::abs(inf.max_feasible_n - 1.088) < 0.001 && inf.impossible;
  report(6, ok, "depth_lb(10, 0.01, 3, 0.01) = 2.0963; (k=2, eps=0.15) infeasible",
         "levels = " + g9(d.levels) + ", max_n = " + g9(inf.max_feasible_n));
}

// Normalized power exceeds 1 at low error rates and collapses at eps = 0.2.
void criterion7() {
  CircuitSummary s;
  s.s = 10;
  s.S0 = 21;
  s.k = 3;
  s.n = 10;
  s.sw0 = 0.5;
  EnergyModel model;  // leakage share 0.5
  const BoundsReport low = evaluate_bounds(s, 0.01, 0.001, model, DelayBaseline::kFigure);
  const BoundsReport high = evaluate_bounds(s, 0.01, 0.2, model, DelayBaseline::kFigure);
  const bool ok = std::abs(low.power_ratio - 1.072) < 0.002 && low.power_ratio > 1.0 &&
                  std::abs(high.power_ratio - 0.091) < 0.002 && high.power_ratio < 1.0;
  report(7, ok, "figure-mode power ratio: 1.072 at eps = 0.001, 0.091 at eps = 0.2",
         "low = " + g9(low.power_ratio) + ", high = " + g9(high.power_ratio));
}

// Sensitivity oracles: parity = n, constants = 0, adder4 = 9, sampled <= exact.
void criterion8() {
  bool ok = true;
  std::string detail = "parity 2..12, constant, adder4, 20 sampled circuits";
  for (std::uint32_t n = 2; n <= 12 && ok; ++n) {
    if (sensitivity_exact(gen_parity(n, 2)).value != n) {
      ok = false;
      detail = "parity " + std::to_string(n) + " misreported";
    }
  }
  const Circuit constant = parse_bench("INPUT(a)\nOUTPUT(z)\nc = XOR(a, a)\nz = BUF(c)");
  if (ok && sensitivity_exact(constant).value != 0) {
    ok = false;
    detail = "constant circuit misreported";
  }
  if (ok && sensitivity_exact(gen_ripple_adder(4)).value != 9) {
    ok = false;
    detail = "adder4 misreported";
  }
  for (std::uint64_t seed = 0; seed < 20 && ok; ++seed) {
    // Same generator family as the unit suite: small random DAGs.
    CircuitBuilder b;
    const std::uint64_t base = stream_base(seed, StreamDomain::kTest, 40);
    std::uint64_t at = 0;
    auto draw = [&](std::uint64_t mod) { return stream_word_at(base, at++) % mod; };
    std::vector<NetId> nets;
    const std::uint32_t n = 3 + std::uint32_t(draw(6));
    for (std::uint32_t i = 0; i < n; ++i)
      nets.push_back(b.add_input("x" + std::to_string(i)));
    const std::uint32_t gates = 2 + std::uint32_t(draw(16));
    for (std::uint32_t gi = 0; gi < gates; ++gi) {
      const GateKind kind = GateKind(draw(9));
      std::size_t arity = gate_min_arity(kind);
      if (gate_max_arity(kind) > arity) arity += draw(2);
      std::vector<NetId> ins;
      for (std::size_t i = 0; i < arity; ++i) ins.push_back(nets[draw(nets.size())]);
      nets.push_back(b.add_gate(kind, "g" + std::to_string(gi), ins));
    }
    b.add_output("g" + std::to_string(gates - 1));
    const Circuit c = b.build("rand");
    if (sensitivity_sampled(c, 512, seed).value > sensitivity_exact(c).value) {
      ok = false;
      detail = "sampled exceeded exact on seed " + std::to_string(seed);
    }
  }
  report(8, ok, "sensitivity oracles (exhaustive + sampled lower estimate)", detail);
}

// Algebraic identities for the channel quantities to 1e-12 relative.
void criterion9() {
  const std::uint64_t base = stream_base(404, StreamDomain::kTest, 50);
  bool ok = true;
  std::string detail = "1000 draws";
  for (std::uint64_t i = 0; i < 1000 && ok; ++i) {
    const double eps = 0.5 * u01(base, 3 * i);
    const ChannelParams p = ChannelParams::from(eps, 0.01);
    const double t_direct = (2.0 - 3.0 * eps) / eps;
    if (std::abs(p.t - t_direct) > 1e-12 * t_direct ||
        std::abs(p.omega * (1.0 - p.omega) - eps / 2.0) > 1e-12 * (eps / 2.0)) {
      ok = false;
      detail = "channel identity violated at eps = " + g9(eps);
    }
    const double sw0 = 0.98 * u01(base, 3 * i + 1) + 0.01;
    const double eps2 = 0.499 * u01(base, 3 * i + 2);
    const double direct = leakage_ratio(sw0, eps2);
    const double sw_e = noisy_sw(sw0, eps2);
    const double odds = ((1.0 - sw_e) * sw0) / (sw_e * (1.0 - sw0));
    if (std::abs(direct - odds) > 1e-12 * std::abs(odds)) {
      ok = false;
      detail = "leakage identity violated at sw0 = " + g9(sw0) + ", eps = " + g9(eps2);
    }
  }
  report(9, ok, "t = (2-3e)/e, w(1-w) = e/2, leakage odds form, to 1e-12 relative", detail);
}

// Triple modular redundancy beats the plain parity-8 run at the same seed.
void criterion10() {
  const Circuit plain = gen_parity(8, 2);
  const Circuit voted = nmr_transform(plain, 3);
  SimConfig cfg;
  cfg.vectors = 100000;
  cfg.seed = 505;
  cfg.epsilon = 0.01;
  const double d_plain = simulate_noisy(plain, cfg).output_error_delta;
  const double d_voted = simulate_noisy(voted, cfg).output_error_delta;
  const double expected = (1.0 - std::pow(0.98, 7)) / 2.0;  // 0.0659
  const bool ok = std::abs(d_plain - expected) < 0.005 && d_voted < d_plain;
  report(10, ok, "3-MR parity-8 empirical delta falls below the plain run",
         "plain = " + g9(d_plain) + ", 3mr = " + g9(d_voted));
}

// Byte-identical bench CSV across --jobs 1 and --jobs 8, via the CLI.
void criterion11() {
  fs::path dir = fs::temp_directory_path() / "faultbound_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "parity16.bench") << emit_bench(gen_parity(16, 2));
  std::ofstream(dir / "adder4.bench") << emit_bench(gen_ripple_adder(4));
  std::ofstream(dir / "mult3.bench") << emit_bench(gen_array_multiplier(3));

  const std::string base = "bench --dir " + dir.string() +
                           " --epsilons 0.001,0.01,0.1 --delta 0.01 --seed 2024";
  const CliRun one = run_cli(base + " --jobs 1");
  const CliRun eight = run_cli(base + " --jobs 8");
  const bool ok = one.exit_code == 0 && eight.exit_code == 0 && !one.out.empty() &&
                  one.out == eight.out;
  report(11, ok, "bench CSV is byte-identical at --jobs 1 and --jobs 8",
         "bytes = " + std::to_string(one.out.size()) +
             (ok ? "" : ", exit codes " + std::to_string(one.exit_code) + "/" +
                            std::to_string(eight.exit_code)));
}

// EDP lower bound rises monotonically and hits 2.03 at eps = 0.1 (fanin 3).
void criterion12() {
  CircuitSummary s;
  s.s = 10;
  s.S0 = 21;
  s.k = 3;
  s.n = 10;
  s.sw0 = 0.5;
  EnergyModel model;
  bool monotone = true;
  double prev = 0.0;
  for (int i = 0; i <= 49; ++i) {
    const double eps = 0.001 * std::pow(200.0, i / 49.0);  // log grid 0.001 .. 0.2
    const BoundsReport r = evaluate_bounds(s, 0.01, eps, model, DelayBaseline::kFigure);
    if (!(r.edp_ratio_lb > prev)) monotone = false;
    prev = r.edp_ratio_lb;
  }
  const double at01 =
      evaluate_bounds(s, 0.01, 0.1, model, DelayBaseline::kFigure).edp_ratio_lb;
  const bool ok = monotone && std::abs(at01 - 2.03) < 0.02;
  report(12, ok, "EDP ratio monotone on eps in [0.001, 0.2], 2.03 +- 0.02 at eps = 0.1",
         "edp(0.1) = " + g9(at01) + (monotone ? "" : ", not monotone"));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  std::printf("%d/12 criteria passed\n", 12 - failures);
  return failures;
}
