#include "faultbound/boolean_metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "faultbound/prng.hpp"

namespace faultbound {

namespace {

// Swaps bits at distance 2^i inside a word, i.e. permutes lane t to t ^ 2^i.
std::uint64_t delta_swap(std::uint64_t a, unsigned i) {
  static constexpr std::uint64_t kLow[6] = {
      0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
      0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
  };
  const unsigned s = 1u << i;
  return ((a >> s) & kLow[i]) | ((a & kLow[i]) << s);
}

// Output traces over the full enumeration of 2^n inputs, evaluated in chunks
// so only the outputs are kept at full length.
std::vector<BitVec> eval_outputs_enumerated(const Circuit& c, std::uint64_t total,
                                            std::uint32_t jobs) {
  const std::size_t words = (total + 63) / 64;
  std::vector<BitVec> outs(c.outputs().size(), BitVec(total));
  const std::size_t chunk = std::min<std::size_t>(words, 1024);
  for (std::size_t w0 = 0; w0 < words; w0 += chunk) {
    const std::size_t w1 = std::min(words, w0 + chunk);
    const std::uint64_t nvec = std::min<std::uint64_t>(total - w0 * 64, (w1 - w0) * 64);
    EnumerationInputs src(w0);
    NetTraces tr = eval_traces(c, nvec, src, 0.0, 0, jobs);
    for (std::size_t oi = 0; oi < outs.size(); ++oi) {
      const BitVec& t = tr.by_net[c.outputs()[oi]];
      for (std::size_t w = w0; w < w1; ++w) outs[oi].set_word(w, t.word(w - w0));
    }
  }
  for (BitVec& o : outs) o.mask_tail();
  return outs;
}

SensitivityResult max_and_witness(const std::vector<std::uint8_t>& counts,
                                  const std::vector<BitVec>* sample_inputs,
                                  std::uint32_t n_inputs) {
  SensitivityResult res;
  std::uint64_t best_idx = 0;
  std::uint8_t best = counts.empty() ? 0 : counts[0];
  for (std::uint64_t t = 1; t < counts.size(); ++t) {
    if (counts[t] > best) {
      best = counts[t];
      best_idx = t;
    }
  }
  res.value = best;
  res.witness_input.resize(n_inputs);
  for (std::uint32_t i = 0; i < n_inputs; ++i) {
    res.witness_input[i] = sample_inputs
                               ? static_cast<std::uint8_t>((*sample_inputs)[i].get(best_idx))
                               : static_cast<std::uint8_t>((best_idx >> i) & 1);
  }
  return res;
}

}  // namespace

SensitivityResult sensitivity_exact(const Circuit& c, std::uint32_t exhaustive_threshold,
                                    std::uint32_t jobs) {
  const std::uint32_t n = static_cast<std::uint32_t>(c.inputs().size());
  if (n > exhaustive_threshold)
    throw std::invalid_argument(
        "circuit has " + std::to_string(n) + " inputs, above the exhaustive threshold " +
        std::to_string(exhaustive_threshold) + "; use sensitivity_sampled");

  if (n == 0) {
    SensitivityResult res;
    res.mode = SensitivityResult::Mode::kExact;
    res.samples_used = 1;
    return res;
  }

  const std::uint64_t total = 1ULL << n;
  const std::size_t words = (total + 63) / 64;
  const std::vector<BitVec> outs = eval_outputs_enumerated(c, total, jobs);

  // counts[t] = number of single-bit flips of input t that change any output.
  std::vector<std::uint8_t> counts(total, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t d = 0;
      for (const BitVec& o : outs) {
        const std::uint64_t aw = o.word(w);
        const std::uint64_t bw =
            i < 6 ? delta_swap(aw, i) : o.word(w ^ (1ULL << (i - 6)));
        d |= aw ^ bw;
      }
      if (!d) continue;
      const std::uint64_t base = static_cast<std::uint64_t>(w) * 64;
      const unsigned lanes = static_cast<unsigned>(std::min<std::uint64_t>(64, total - base));
      for (unsigned b = 0; b < lanes; ++b) counts[base + b] += (d >> b) & 1;
    }
  }

  SensitivityResult res = max_and_witness(counts, nullptr, n);
  res.mode = SensitivityResult::Mode::kExact;
  res.samples_used = total;
  return res;
}

SensitivityResult sensitivity_sampled(const Circuit& c, std::uint64_t samples,
                                      std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const std::uint32_t n = static_cast<std::uint32_t>(c.inputs().size());

  if (n == 0) {
    SensitivityResult res;
    res.mode = SensitivityResult::Mode::kSampled;
    res.samples_used = samples;
    return res;
  }

  const std::size_t words = (samples + 63) / 64;
  std::vector<BitVec> base_inputs(n, BitVec(samples));
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint64_t base = stream_base(seed, StreamDomain::kSampling, i);
    for (std::size_t w = 0; w < words; ++w)
      base_inputs[i].set_word(w, stream_word_at(base, w));
    base_inputs[i].mask_tail();
  }

  FixedInputs src(&base_inputs);
  const NetTraces base_run = eval_traces(c, samples, src, 0.0, 0);

  std::vector<std::uint8_t> counts(samples, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<BitVec> flipped = base_inputs;
    for (std::size_t w = 0; w < words; ++w)
      flipped[i].set_word(w, ~base_inputs[i].word(w));
    flipped[i].mask_tail();
    FixedInputs fsrc(&flipped);
    const NetTraces run = eval_traces(c, samples, fsrc, 0.0, 0);
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t d = 0;
      for (NetId out : c.outputs())
        d |= base_run.by_net[out].word(w) ^ run.by_net[out].word(w);
      if (!d) continue;
      const std::uint64_t base = static_cast<std::uint64_t>(w) * 64;
      const unsigned lanes =
          static_cast<unsigned>(std::min<std::uint64_t>(64, samples - base));
      for (unsigned b = 0; b < lanes; ++b) counts[base + b] += (d >> b) & 1;
    }
  }

  SensitivityResult res = max_and_witness(counts, &base_inputs, n);
  res.mode = SensitivityResult::Mode::kSampled;
  res.samples_used = samples;
  return res;
}

CircuitSummary summarize(const Circuit& c, const ActivityProfile& activity,
                         const SensitivityResult& sens) {
  if (activity.per_net.size() != c.net_count())
    throw std::invalid_argument("activity profile does not match circuit");
  const StructuralMetrics m = structural_metrics(c);
  CircuitSummary s;
  s.s = sens.value;
  s.S0 = static_cast<double>(m.size_s0);
  s.sw0 = activity.avg_sw;
  s.k = m.avg_fanin_k;
  s.n = m.n_inputs;
  s.d0 = m.depth_d0;
  s.m = m.m_outputs;
  return s;
}

}  // namespace faultbound
