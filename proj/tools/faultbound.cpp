// faultbound: gate-level redundancy / energy / delay lower-bound analysis for
// noisy-gate circuits. Subcommands: gen, analyze, simulate, sweep, bench.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "faultbound/boolean_metrics.hpp"
#include "faultbound/bounds.hpp"
#include "faultbound/logic_sim.hpp"
#include "faultbound/netlist.hpp"
#include "faultbound/sweep.hpp"

namespace fs = std::filesystem;
using namespace faultbound;
using nlohmann::json;

namespace {

struct ModelFlags {
  double delta = 0.01;
  double leakage_share = 0.5;
  double vdd = 1.0;
  double vt = 0.3;
  double alpha = 1.3;
};

EnergyModel to_model(const ModelFlags& f) {
  EnergyModel m;
  m.leakage_share = f.leakage_share;
  m.vdd = f.vdd;
  m.vt = f.vt;
  m.alpha = f.alpha;
  return m;
}

void add_model_flags(CLI::App* sub, ModelFlags& f) {
  sub->add_option("--delta", f.delta, "output error budget delta, in [0, 0.5)")
      ->capture_default_str();
  sub->add_option("--leakage-share", f.leakage_share,
                  "leakage fraction of baseline total energy, in [0, 1)")
      ->capture_default_str();
  sub->add_option("--vdd", f.vdd, "supply voltage (V), must exceed --vt")
      ->capture_default_str();
  sub->add_option("--vt", f.vt, "threshold voltage (V), > 0")->capture_default_str();
  sub->add_option("--alpha", f.alpha, "velocity-saturation delay exponent, > 0")
      ->capture_default_str();
}

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 1;
}

int check_model(const ModelFlags& f) {
  if (!(f.delta >= 0.0 && f.delta < 0.5)) return usage_error("--delta must be in [0, 0.5)");
  if (!(f.leakage_share >= 0.0 && f.leakage_share < 1.0))
    return usage_error("--leakage-share must be in [0, 1)");
  if (!(f.vt > 0.0)) return usage_error("--vt must be positive");
  if (!(f.vdd > f.vt)) return usage_error("--vdd must exceed --vt");
  if (!(f.alpha > 0.0)) return usage_error("--alpha must be positive");
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Circuit load_circuit(const std::string& path) {
  return parse_bench(read_file(path), fs::path(path).stem().string());
}

void write_output(const std::string& data, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
  f << data;
}

std::uint64_t resolve_seed(const CLI::App* sub, std::uint64_t flag_value) {
  if (sub->count("--seed")) return flag_value;
  if (const char* env = std::getenv("FAULTBOUND_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 1;
}

// Effective configuration, defaults included, to stderr; data goes to stdout.
void echo_config(const json& cfg) {
  std::cerr << "# config";
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    std::cerr << ' ' << it.key() << '=';
    if (it->is_string())
      std::cerr << it->get<std::string>();
    else
      std::cerr << it->dump();
  }
  std::cerr << '\n';
}

void warn_error_rows(const std::vector<ReportRow>& rows) {
  for (const ReportRow& r : rows) {
    if (!r.error.empty())
      std::cerr << "warning: circuit '" << r.name << "' skipped: " << r.error << "\n";
  }
}

// 3 when every evaluated row landed in the no-depth-bound branch.
int infeasible_exit(const std::vector<ReportRow>& rows) {
  bool any = false;
  bool all_infeasible = true;
  for (const ReportRow& r : rows) {
    if (!r.error.empty()) continue;
    any = true;
    if (r.bounds.depth.has_bound) all_infeasible = false;
  }
  return any && all_infeasible ? 3 : 0;
}

std::string emit_rows(const std::vector<ReportRow>& rows, const std::string& format,
                      const json& cfg) {
  return format == "json" ? write_json(rows, cfg) : write_csv(rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gate-level redundancy/energy/delay lower bounds for noisy circuits"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate a .bench netlist");
  gen->require_subcommand(1);
  std::uint32_t gen_n = 16, gen_k = 2, gen_width = 4;
  std::string gen_out;
  auto* gen_parity_cmd = gen->add_subcommand("parity", "balanced k-ary XOR parity tree");
  gen_parity_cmd->add_option("--n", gen_n, "input count, >= 2")
      ->required()
      ->check(CLI::Range(2u, 1000000u));
  gen_parity_cmd->add_option("--k", gen_k, "tree arity, >= 2 (feeds the fanin k of the bounds)")
      ->capture_default_str()
      ->check(CLI::Range(2u, 64u));
  gen_parity_cmd->add_option("-o,--out", gen_out, "output path (default stdout)");
  auto* gen_adder_cmd = gen->add_subcommand("adder", "ripple-carry adder, fanin <= 2");
  gen_adder_cmd->add_option("--width", gen_width, "operand bits, >= 1")
      ->required()
      ->check(CLI::Range(1u, 4096u));
  gen_adder_cmd->add_option("-o,--out", gen_out, "output path (default stdout)");
  auto* gen_mult_cmd = gen->add_subcommand("multiplier", "array multiplier, fanin <= 2");
  gen_mult_cmd->add_option("--width", gen_width, "operand bits, >= 1")
      ->required()
      ->check(CLI::Range(1u, 256u));
  gen_mult_cmd->add_option("-o,--out", gen_out, "output path (default stdout)");

  // ---- analyze ----
  auto* an = app.add_subcommand(
      "analyze", "measure a netlist (activity, sensitivity, structure) and evaluate bounds");
  std::string an_path;
  std::vector<double> an_eps{0.001, 0.01, 0.1};
  ModelFlags an_model;
  std::uint64_t an_vectors = 100000, an_seed = 1, an_samples = 4096;
  std::uint32_t an_jobs = 1, an_threshold = 20;
  std::string an_format = "csv", an_out;
  an->add_option("netlist", an_path, "path to a .bench netlist")->required();
  an->add_option("--epsilon", an_eps,
                 "per-gate error probability list, each in [0, 0.5] (comma separated)")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 0.5))
      ->capture_default_str();
  add_model_flags(an, an_model);
  an->add_option("--vectors", an_vectors, "random vectors T for the activity run, >= 2")
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t(2), std::uint64_t(1) << 40));
  an->add_option("--seed", an_seed, "PRNG seed (default: FAULTBOUND_SEED env or 1)");
  an->add_option("--jobs", an_jobs, "worker threads; results are independent of it")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  an->add_option("--exact-threshold", an_threshold,
                 "max inputs for exhaustive sensitivity; larger circuits are sampled")
      ->capture_default_str();
  an->add_option("--sensitivity-samples", an_samples, "samples for sampled sensitivity")
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t(1), std::uint64_t(1) << 32));
  an->add_option("--format", an_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  an->add_option("-o,--out", an_out, "output path (default stdout)");

  // ---- simulate ----
  auto* sim = app.add_subcommand(
      "simulate", "empirical noisy-gate run: output error rate delta and activity");
  std::string sim_path;
  double sim_eps = 0.0;
  std::uint64_t sim_vectors = 100000, sim_seed = 1;
  std::uint32_t sim_jobs = 1, sim_nmr = 0;
  std::string sim_format = "text", sim_out;
  sim->add_option("netlist", sim_path, "path to a .bench netlist")->required();
  sim->add_option("--epsilon", sim_eps, "per-gate output flip probability, in [0, 0.5]")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 0.5));
  sim->add_option("--vectors", sim_vectors, "random vectors T, >= 2")
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t(2), std::uint64_t(1) << 40));
  sim->add_option("--seed", sim_seed, "PRNG seed (default: FAULTBOUND_SEED env or 1)");
  sim->add_option("--nmr", sim_nmr,
                  "replicate the circuit N times behind MAJ3 voters first (odd, >= 3)");
  sim->add_option("--jobs", sim_jobs, "worker threads; results are independent of it")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  sim->add_option("--format", sim_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  sim->add_option("-o,--out", sim_out, "output path (default stdout)");

  // ---- sweep ----
  auto* sw = app.add_subcommand("sweep", "evaluate bounds over a parameter grid");
  int sw_figure = 0;
  std::string sw_param = "epsilon";
  double sw_start = 0, sw_stop = 0;
  int sw_points = 50;
  bool sw_log = false, sw_linear = false;
  double sw_s = 10, sw_S0 = 21, sw_k = 3, sw_n = 10, sw_d0 = 0, sw_sw0 = 0.5;
  double sw_fixed_eps = 0.01;
  std::vector<double> sw_curve_eps{0.05, 0.1, 0.2, 0.3, 0.4};
  ModelFlags sw_model;
  std::string sw_mode = "figure", sw_format = "csv", sw_out;
  sw->add_option("--figure", sw_figure,
                 "preset 2..6: 2 = noisy activity vs sw0; 3 = redundancy vs epsilon; "
                 "4 = leakage ratio vs epsilon; 5 = delay and EDP; 6 = power")
      ->check(CLI::Range(2, 6));
  sw->add_option("--param", sw_param, "swept parameter for a custom sweep")
      ->check(CLI::IsMember({"epsilon", "delta", "sw0", "k"}))
      ->capture_default_str();
  auto* sw_start_opt = sw->add_option("--start", sw_start, "grid start");
  auto* sw_stop_opt = sw->add_option("--stop", sw_stop, "grid stop");
  sw->add_option("--points", sw_points, "grid points, >= 2")->capture_default_str();
  sw->add_flag("--log", sw_log, "log-spaced grid");
  sw->add_flag("--linear", sw_linear, "linearly spaced grid");
  auto* sw_k_opt =
      sw->add_option("--k", sw_k, "fanin k (presets 3/5/6 emit k = 2,3,4 groups unless set)")
          ->capture_default_str();
  auto* sw_sw0_opt =
      sw->add_option("--sw0", sw_sw0,
                     "error-free average switching activity in (0, 1) "
                     "(preset 4 emits sw0 = 0.2/0.5/0.8 groups unless set)")
          ->capture_default_str();
  sw->add_option("--s", sw_s, "sensitivity s of the target function")->capture_default_str();
  sw->add_option("--S0", sw_S0, "error-free size S0 in gates")->capture_default_str();
  sw->add_option("--n", sw_n, "primary input count n")->capture_default_str();
  sw->add_option("--d0", sw_d0, "measured error-free depth (analyze mode baseline)")
      ->capture_default_str();
  sw->add_option("--epsilon", sw_fixed_eps, "fixed epsilon when sweeping another parameter")
      ->check(CLI::Range(0.0, 0.5))
      ->capture_default_str();
  sw->add_option("--epsilons", sw_curve_eps, "curve list for the figure-2 preset")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 0.5))
      ->capture_default_str();
  add_model_flags(sw, sw_model);
  sw->add_option("--mode", sw_mode,
                 "delay baseline: figure (depth bound at epsilon = 0) or analyze "
                 "(measured depth d0, clamped at 1)")
      ->check(CLI::IsMember({"figure", "analyze"}))
      ->capture_default_str();
  sw->add_option("--format", sw_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sw->add_option("-o,--out", sw_out, "output path (default stdout)");

  // ---- bench ----
  auto* be = app.add_subcommand("bench", "analyze a batch of netlists into one table");
  std::vector<std::string> be_files;
  std::string be_dir;
  std::vector<double> be_eps{0.001, 0.01, 0.1};
  ModelFlags be_model;
  std::uint64_t be_vectors = 100000, be_seed = 1, be_samples = 4096;
  std::uint32_t be_jobs = 1, be_threshold = 20;
  std::string be_format = "csv", be_out;
  be->add_option("files", be_files, "netlist paths");
  be->add_option("--dir", be_dir, "directory scanned for *.bench (sorted by name)");
  be->add_option("--epsilons", be_eps,
                 "per-gate error probability list, each in [0, 0.5] (comma separated)")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 0.5))
      ->capture_default_str();
  add_model_flags(be, be_model);
  be->add_option("--vectors", be_vectors, "random vectors T, >= 2")
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t(2), std::uint64_t(1) << 40));
  be->add_option("--seed", be_seed, "PRNG seed (default: FAULTBOUND_SEED env or 1)");
  be->add_option("--jobs", be_jobs, "worker threads; results are independent of it")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  be->add_option("--exact-threshold", be_threshold,
                 "max inputs for exhaustive sensitivity; larger circuits are sampled")
      ->capture_default_str();
  be->add_option("--sensitivity-samples", be_samples, "samples for sampled sensitivity")
      ->capture_default_str();
  be->add_option("--format", be_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  be->add_option("-o,--out", be_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    // ---- gen ----
    if (app.got_subcommand(gen)) {
      Circuit c = gen->got_subcommand(gen_parity_cmd) ? gen_parity(gen_n, gen_k)
                  : gen->got_subcommand(gen_adder_cmd)
                      ? gen_ripple_adder(gen_width)
                      : gen_array_multiplier(gen_width);
      json cfg{{"command", "gen"}, {"circuit", c.name()}, {"out", gen_out.empty() ? "-" : gen_out}};
      echo_config(cfg);
      write_output(emit_bench(c), gen_out);
      return 0;
    }

    // ---- analyze ----
    if (app.got_subcommand(an)) {
      if (int rc = check_model(an_model)) return rc;
      an_seed = resolve_seed(an, an_seed);
      json cfg{{"command", "analyze"},
               {"netlist", an_path},
               {"epsilon", an_eps},
               {"delta", an_model.delta},
               {"leakage_share", an_model.leakage_share},
               {"vdd", an_model.vdd},
               {"vt", an_model.vt},
               {"alpha", an_model.alpha},
               {"vectors", an_vectors},
               {"seed", an_seed},
               {"jobs", an_jobs},
               {"exact_threshold", an_threshold},
               {"sensitivity_samples", an_samples},
               {"mode", "analyze"},
               {"format", an_format}};
      echo_config(cfg);
      Circuit c = load_circuit(an_path);
      BenchConfig bc;
      bc.epsilons = an_eps;
      bc.delta = an_model.delta;
      bc.model = to_model(an_model);
      bc.sim.vectors = an_vectors;
      bc.sim.seed = an_seed;
      bc.sim.jobs = an_jobs;
      bc.exact_threshold = an_threshold;
      bc.sensitivity_samples = an_samples;
      std::vector<Circuit> circuits;
      circuits.push_back(std::move(c));
      const auto rows = run_bench(circuits, bc);
      warn_error_rows(rows);
      write_output(emit_rows(rows, an_format, cfg), an_out);
      return infeasible_exit(rows);
    }

    // ---- simulate ----
    if (app.got_subcommand(sim)) {
      if (sim_nmr && (sim_nmr < 3 || sim_nmr % 2 == 0))
        return usage_error("--nmr must be odd and >= 3");
      sim_seed = resolve_seed(sim, sim_seed);
      json cfg{{"command", "simulate"}, {"netlist", sim_path},   {"epsilon", sim_eps},
               {"vectors", sim_vectors}, {"seed", sim_seed},     {"nmr", sim_nmr},
               {"jobs", sim_jobs},       {"format", sim_format}};
      echo_config(cfg);
      Circuit c = load_circuit(sim_path);
      if (sim_nmr) c = nmr_transform(c, sim_nmr);

      SimConfig sc;
      sc.vectors = sim_vectors;
      sc.seed = sim_seed;
      sc.epsilon = sim_eps;
      sc.jobs = sim_jobs;
      const SimResult noisy = simulate_noisy(c, sc);
      SimConfig clean_cfg = sc;
      clean_cfg.epsilon = 0.0;
      const ActivityProfile clean = simulate(c, clean_cfg).second;
      const StructuralMetrics m = structural_metrics(c);
      const double predicted = noisy_sw(clean.avg_sw, sim_eps);

      std::string out;
      if (sim_format == "json") {
        json r{{"circuit", c.name()},
               {"gates", m.size_s0},
               {"inputs", m.n_inputs},
               {"outputs", m.m_outputs},
               {"depth", m.depth_d0},
               {"vectors", sim_vectors},
               {"seed", sim_seed},
               {"epsilon", round9(sim_eps)},
               {"nmr", sim_nmr},
               {"output_error_delta", round9(noisy.output_error_delta)},
               {"avg_p_error_free", round9(clean.avg_p)},
               {"avg_sw_error_free", round9(clean.avg_sw)},
               {"avg_p_noisy", round9(noisy.activity.avg_p)},
               {"avg_sw_noisy", round9(noisy.activity.avg_sw)},
               {"avg_sw_predicted", round9(predicted)}};
        json per;
        for (std::size_t i = 0; i < c.outputs().size(); ++i)
          per[c.net_name(c.outputs()[i])] = round9(noisy.per_output_error[i]);
        r["per_output_error"] = per;
        out = r.dump(2) + "\n";
      } else {
        std::ostringstream ss;
        ss << "circuit: " << c.name() << "\n"
           << "gates: " << m.size_s0 << "\ninputs: " << m.n_inputs
           << "\noutputs: " << m.m_outputs << "\ndepth: " << m.depth_d0 << "\n"
           << "vectors: " << sim_vectors << "\nseed: " << sim_seed
           << "\nepsilon: " << format_g9(sim_eps) << "\nnmr: " << sim_nmr << "\n"
           << "output_error_delta: " << format_g9(noisy.output_error_delta) << "\n"
           << "avg_p_error_free: " << format_g9(clean.avg_p) << "\n"
           << "avg_sw_error_free: " << format_g9(clean.avg_sw) << "\n"
           << "avg_p_noisy: " << format_g9(noisy.activity.avg_p) << "\n"
           << "avg_sw_noisy: " << format_g9(noisy.activity.avg_sw) << "\n"
           << "avg_sw_predicted: " << format_g9(predicted) << "\n";
        for (std::size_t i = 0; i < c.outputs().size(); ++i)
          ss << "per_output " << c.net_name(c.outputs()[i]) << ": "
             << format_g9(noisy.per_output_error[i]) << "\n";
        out = ss.str();
      }
      write_output(out, sim_out);
      return 0;
    }

    // ---- sweep ----
    if (app.got_subcommand(sw)) {
      if (int rc = check_model(sw_model)) return rc;
      if (sw_log && sw_linear) return usage_error("--log and --linear are exclusive");
      if (sw_points < 2) return usage_error("--points must be >= 2");
      if (!(sw_sw0 > 0.0 && sw_sw0 < 1.0)) return usage_error("--sw0 must be in (0, 1)");

      SweepSpec base;
      base.summary.s = sw_s;
      base.summary.S0 = sw_S0;
      base.summary.k = sw_k;
      base.summary.n = sw_n;
      base.summary.d0 = sw_d0;
      base.summary.sw0 = sw_sw0;
      base.points = sw_points;
      base.epsilon = sw_fixed_eps;
      base.delta = sw_model.delta;
      base.model = to_model(sw_model);
      base.baseline = sw_mode == "analyze" ? DelayBaseline::kAnalyze : DelayBaseline::kFigure;

      auto grid_for = [&](SweepParam p, SweepSpec& spec) {
        spec.param = p;
        switch (p) {
          case SweepParam::kEpsilon:
            spec.start = 1e-4;
            spec.stop = 0.499;
            spec.scale = GridScale::kLog;
            break;
          case SweepParam::kDelta:
            spec.start = 0.0;
            spec.stop = 0.49;
            spec.scale = GridScale::kLinear;
            break;
          case SweepParam::kSw0:
            spec.start = 0.01;
            spec.stop = 0.99;
            spec.scale = GridScale::kLinear;
            break;
          case SweepParam::kK:
            spec.start = 2.0;
            spec.stop = 8.0;
            spec.scale = GridScale::kLinear;
            break;
        }
        if (sw_start_opt->count()) spec.start = sw_start;
        if (sw_stop_opt->count()) spec.stop = sw_stop;
        if (sw_log) spec.scale = GridScale::kLog;
        if (sw_linear) spec.scale = GridScale::kLinear;
      };

      std::vector<SweepSpec> specs;
      if (sw_figure == 0) {
        SweepSpec spec = base;
        const SweepParam p = sw_param == "delta"  ? SweepParam::kDelta
                             : sw_param == "sw0"  ? SweepParam::kSw0
                             : sw_param == "k"    ? SweepParam::kK
                                                  : SweepParam::kEpsilon;
        grid_for(p, spec);
        specs.push_back(spec);
      } else if (sw_figure == 2) {
        for (double e : sw_curve_eps) {
          SweepSpec spec = base;
          grid_for(SweepParam::kSw0, spec);
          spec.epsilon = e;
          spec.name = "fig2_eps" + format_g9(e);
          specs.push_back(spec);
        }
      } else if (sw_figure == 4) {
        std::vector<double> sw0s =
            sw_sw0_opt->count() ? std::vector<double>{sw_sw0} : std::vector<double>{0.2, 0.5, 0.8};
        for (double v : sw0s) {
          SweepSpec spec = base;
          grid_for(SweepParam::kEpsilon, spec);
          spec.summary.sw0 = v;
          spec.name = "fig4_sw" + format_g9(v);
          specs.push_back(spec);
        }
      } else {  // figures 3, 5, 6: one curve group per fanin
        std::vector<double> ks =
            sw_k_opt->count() ? std::vector<double>{sw_k} : std::vector<double>{2, 3, 4};
        for (double v : ks) {
          SweepSpec spec = base;
          grid_for(SweepParam::kEpsilon, spec);
          spec.summary.k = v;
          spec.name = "fig" + std::to_string(sw_figure) + "_k" + format_g9(v);
          specs.push_back(spec);
        }
      }

      json cfg{{"command", "sweep"},
               {"figure", sw_figure},
               {"param", sw_param},
               {"points", sw_points},
               {"s", sw_s},
               {"S0", sw_S0},
               {"k", sw_k},
               {"n", sw_n},
               {"d0", sw_d0},
               {"sw0", sw_sw0},
               {"epsilon_fixed", sw_fixed_eps},
               {"delta", sw_model.delta},
               {"leakage_share", sw_model.leakage_share},
               {"vdd", sw_model.vdd},
               {"vt", sw_model.vt},
               {"alpha", sw_model.alpha},
               {"mode", sw_mode},
               {"format", sw_format}};
      echo_config(cfg);

      std::vector<ReportRow> rows;
      for (const SweepSpec& spec : specs) {
        auto part = run_sweep(spec);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      write_output(emit_rows(rows, sw_format, cfg), sw_out);
      return infeasible_exit(rows);
    }

    // ---- bench ----
    if (app.got_subcommand(be)) {
      if (int rc = check_model(be_model)) return rc;
      be_seed = resolve_seed(be, be_seed);

      std::vector<std::string> paths = be_files;
      if (!be_dir.empty()) {
        if (!fs::is_directory(be_dir))
          throw std::runtime_error("'" + be_dir + "' is not a directory");
        std::vector<std::string> found;
        for (const auto& entry : fs::directory_iterator(be_dir)) {
          if (entry.is_regular_file() && entry.path().extension() == ".bench")
            found.push_back(entry.path().string());
        }
        std::sort(found.begin(), found.end());
        paths.insert(paths.end(), found.begin(), found.end());
      }

      json cfg{{"command", "bench"},
               {"files", paths},
               {"epsilons", be_eps},
               {"delta", be_model.delta},
               {"leakage_share", be_model.leakage_share},
               {"vdd", be_model.vdd},
               {"vt", be_model.vt},
               {"alpha", be_model.alpha},
               {"vectors", be_vectors},
               {"seed", be_seed},
               {"jobs", be_jobs},
               {"exact_threshold", be_threshold},
               {"sensitivity_samples", be_samples},
               {"mode", "analyze"},
               {"format", be_format}};
      echo_config(cfg);

      std::vector<Circuit> circuits;
      circuits.reserve(paths.size());
      for (const std::string& p : paths) circuits.push_back(load_circuit(p));

      BenchConfig bc;
      bc.epsilons = be_eps;
      bc.delta = be_model.delta;
      bc.model = to_model(be_model);
      bc.sim.vectors = be_vectors;
      bc.sim.seed = be_seed;
      bc.sim.jobs = be_jobs;
      bc.exact_threshold = be_threshold;
      bc.sensitivity_samples = be_samples;
      const auto rows = run_bench(circuits, bc);
      warn_error_rows(rows);
      write_output(emit_rows(rows, be_format, cfg), be_out);
      return infeasible_exit(rows);
    }
  } catch (const NetlistError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  return 0;
}
