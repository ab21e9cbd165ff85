#include "faultbound/logic_sim.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace faultbound {

namespace {

std::uint64_t fold_gate(const Gate& g, const std::vector<BitVec>& tr, std::size_t w) {
  const std::vector<NetId>& in = g.inputs;
  switch (g.kind) {
    case GateKind::kNot:
      return ~tr[in[0]].word(w);
    case GateKind::kBuf:
      return tr[in[0]].word(w);
    case GateKind::kMaj3: {
      const std::uint64_t a = tr[in[0]].word(w);
      const std::uint64_t b = tr[in[1]].word(w);
      const std::uint64_t c = tr[in[2]].word(w);
      return (a & b) | (a & c) | (b & c);
    }
    case GateKind::kAnd:
    case GateKind::kNand: {
      std::uint64_t v = ~0ULL;
      for (NetId id : in) v &= tr[id].word(w);
      return g.kind == GateKind::kNand ? ~v : v;
    }
    case GateKind::kOr:
    case GateKind::kNor: {
      std::uint64_t v = 0;
      for (NetId id : in) v |= tr[id].word(w);
      return g.kind == GateKind::kNor ? ~v : v;
    }
    case GateKind::kXor:
    case GateKind::kXnor: {
      std::uint64_t v = 0;
      for (NetId id : in) v ^= tr[id].word(w);
      return g.kind == GateKind::kXnor ? ~v : v;
    }
  }
  return 0;
}

std::uint64_t noise_word(std::uint64_t base, std::uint64_t threshold, std::uint64_t w) {
  std::uint64_t flips = 0;
  const std::uint64_t bit0 = w * 64;
  for (unsigned b = 0; b < 64; ++b)
    flips |= static_cast<std::uint64_t>(stream_word_at(base, bit0 + b) < threshold) << b;
  return flips;
}

}  // namespace

void SimConfig::validate() const {
  if (vectors < 2) throw std::invalid_argument("SimConfig.vectors must be >= 2");
  if (!(epsilon >= 0.0 && epsilon <= 0.5))
    throw std::invalid_argument("SimConfig.epsilon must be in [0, 0.5]");
  if (lanes < 1) throw std::invalid_argument("SimConfig.lanes must be >= 1");
  if (jobs < 1) throw std::invalid_argument("SimConfig.jobs must be >= 1");
}

std::uint64_t EnumerationInputs::word(std::size_t input_pos, std::uint64_t word_index) const {
  static constexpr std::uint64_t kPattern[6] = {
      0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
      0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
  };
  if (input_pos < 6) return kPattern[input_pos];
  const std::uint64_t gw = word_index + offset_;
  return ((gw >> (input_pos - 6)) & 1) ? ~0ULL : 0ULL;
}

NetTraces eval_traces(const Circuit& c, std::uint64_t vectors, const WordSource& inputs,
                      double epsilon, std::uint64_t noise_seed, std::uint32_t jobs,
                      std::uint32_t lanes) {
  NetTraces out;
  out.vectors = vectors;
  out.by_net.reserve(c.net_count());
  for (std::size_t i = 0; i < c.net_count(); ++i) out.by_net.emplace_back(vectors);

  const std::size_t words = (vectors + 63) / 64;
  const std::uint64_t threshold = bernoulli_threshold(epsilon);
  std::vector<std::uint64_t> noise_base;
  if (threshold) {
    noise_base.resize(c.gates().size());
    for (std::uint32_t gi = 0; gi < c.gates().size(); ++gi)
      noise_base[gi] = stream_base(noise_seed, StreamDomain::kGateNoise, gi);
  }

  auto run_range = [&](std::size_t w0, std::size_t w1) {
    for (std::size_t w = w0; w < w1; ++w) {
      for (std::size_t p = 0; p < c.inputs().size(); ++p)
        out.by_net[c.inputs()[p]].set_word(w, inputs.word(p, w));
      for (std::uint32_t gi : c.topo_order()) {
        const Gate& g = c.gates()[gi];
        std::uint64_t v = fold_gate(g, out.by_net, w);
        if (threshold) v ^= noise_word(noise_base[gi], threshold, w);
        out.by_net[g.output].set_word(w, v);
      }
    }
  };

  const std::uint32_t workers =
      static_cast<std::uint32_t>(std::min<std::uint64_t>(jobs, words ? words : 1));
  if (workers <= 1) {
    run_range(0, words);
  } else {
    // Work stealing over fixed-size word batches; batch boundaries depend only
    // on `lanes`, and every word's value is schedule-independent.
    const std::size_t batch = std::max<std::size_t>(1, (lanes + 63) / 64);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t b = cursor.fetch_add(1);
        const std::size_t w0 = b * batch;
        if (w0 >= words) return;
        run_range(w0, std::min(words, w0 + batch));
      }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::uint32_t i = 0; i < workers; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  for (BitVec& bv : out.by_net) bv.mask_tail();
  return out;
}

ActivityProfile measure_activity(const Circuit& c, const NetTraces& traces) {
  if (traces.by_net.size() != c.net_count())
    throw std::invalid_argument("trace set does not match circuit nets");
  if (traces.vectors < 2) throw std::invalid_argument("need at least 2 vectors");
  for (const BitVec& bv : traces.by_net) {
    if (bv.size() != traces.vectors)
      throw std::invalid_argument("trace length mismatch");
  }

  ActivityProfile prof;
  prof.per_net.resize(c.net_count());
  const double T = static_cast<double>(traces.vectors);
  double sum_p = 0.0, sum_sw = 0.0;
  std::size_t gate_nets = 0;
  for (NetId id = 0; id < c.net_count(); ++id) {
    const BitVec& bv = traces.by_net[id];
    NetActivity& a = prof.per_net[id];
    a.p = static_cast<double>(bv.count_ones()) / T;
    a.sw = static_cast<double>(bv.count_transitions()) / (T - 1.0);
    if (c.is_gate_driven(id)) {
      sum_p += a.p;
      sum_sw += a.sw;
      ++gate_nets;
    }
  }
  if (gate_nets) {
    prof.avg_p = sum_p / static_cast<double>(gate_nets);
    prof.avg_sw = sum_sw / static_cast<double>(gate_nets);
  }
  return prof;
}

std::pair<NetTraces, ActivityProfile> simulate(const Circuit& c, const SimConfig& cfg) {
  cfg.validate();
  if (cfg.epsilon != 0.0)
    throw std::invalid_argument("simulate requires epsilon == 0; use simulate_noisy");
  RandomInputs src(cfg.seed);
  NetTraces traces = eval_traces(c, cfg.vectors, src, 0.0, cfg.seed, cfg.jobs, cfg.lanes);
  ActivityProfile prof = measure_activity(c, traces);
  return {std::move(traces), std::move(prof)};
}

SimResult simulate_noisy(const Circuit& c, const SimConfig& cfg) {
  cfg.validate();
  RandomInputs src(cfg.seed);
  NetTraces golden = eval_traces(c, cfg.vectors, src, 0.0, cfg.seed, cfg.jobs, cfg.lanes);
  NetTraces noisy =
      eval_traces(c, cfg.vectors, src, cfg.epsilon, cfg.seed, cfg.jobs, cfg.lanes);

  SimResult r;
  r.activity = measure_activity(c, noisy);

  const std::size_t words = (cfg.vectors + 63) / 64;
  const double T = static_cast<double>(cfg.vectors);
  r.per_output_error.resize(c.outputs().size(), 0.0);
  std::uint64_t any_wrong = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t any = 0;
    for (std::size_t oi = 0; oi < c.outputs().size(); ++oi) {
      const NetId id = c.outputs()[oi];
      const std::uint64_t d = golden.by_net[id].word(w) ^ noisy.by_net[id].word(w);
      r.per_output_error[oi] += static_cast<double>(std::popcount(d));
      any |= d;
    }
    any_wrong += std::popcount(any);
  }
  for (double& e : r.per_output_error) e /= T;
  r.output_error_delta = static_cast<double>(any_wrong) / T;
  return r;
}

BitVec apply_channel(const BitVec& trace, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0.0 && epsilon <= 0.5))
    throw std::invalid_argument("apply_channel epsilon must be in [0, 0.5]");
  BitVec out = trace;
  const std::uint64_t threshold = bernoulli_threshold(epsilon);
  if (!threshold) return out;
  const std::uint64_t base = stream_base(seed, StreamDomain::kChannel, 0);
  for (std::size_t w = 0; w < out.word_count(); ++w)
    out.set_word(w, out.word(w) ^ noise_word(base, threshold, w));
  out.mask_tail();
  return out;
}

}  // namespace faultbound
