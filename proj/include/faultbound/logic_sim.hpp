#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "faultbound/bitvec.hpp"
#include "faultbound/netlist.hpp"
#include "faultbound/prng.hpp"

namespace faultbound {

struct SimConfig {
  std::uint64_t vectors = 100000;  // T, number of random input vectors
  std::uint64_t seed = 1;
  double epsilon = 0.0;  // per-gate output flip probability, in [0, 0.5]
  std::uint32_t lanes = 64;  // bit-parallel batch width in vectors; scheduling only
  std::uint32_t jobs = 1;

  void validate() const;  // throws std::invalid_argument
};

struct NetTraces {
  std::uint64_t vectors = 0;
  std::vector<BitVec> by_net;  // indexed by NetId
};

struct NetActivity {
  double p = 0.0;   // fraction of ones
  double sw = 0.0;  // transitions / (T - 1)
};

struct ActivityProfile {
  std::vector<NetActivity> per_net;
  // Averages over gate-driven nets only.
  double avg_p = 0.0;
  double avg_sw = 0.0;
};

struct SimResult {
  ActivityProfile activity;  // measured on the noisy run
  // Fraction of vectors where any output bit differs from the error-free run
  // on the same input vectors.
  double output_error_delta = 0.0;
  std::vector<double> per_output_error;  // by output position
};

// Supplies the 64 packed input bits for (input position, word index).
// Implementations must be pure functions of their arguments so that results
// never depend on evaluation order.
class WordSource {
 public:
  virtual ~WordSource() = default;
  virtual std::uint64_t word(std::size_t input_pos, std::uint64_t word_index) const = 0;
};

// I.i.d. uniform bits per primary input position.
class RandomInputs final : public WordSource {
 public:
  explicit RandomInputs(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t word(std::size_t input_pos, std::uint64_t word_index) const override {
    return stream_word_at(stream_base(seed_, StreamDomain::kPrimaryInput, input_pos),
                          word_index);
  }

 private:
  std::uint64_t seed_;
};

// Vector t carries the bit pattern of the integer t: input i reads bit i.
// With a word offset, vector t maps to the integer t + 64*offset_words.
class EnumerationInputs final : public WordSource {
 public:
  explicit EnumerationInputs(std::uint64_t offset_words = 0) : offset_(offset_words) {}
  std::uint64_t word(std::size_t input_pos, std::uint64_t word_index) const override;

 private:
  std::uint64_t offset_;
};

// Reads previously materialized input traces (one BitVec per input position).
class FixedInputs final : public WordSource {
 public:
  explicit FixedInputs(const std::vector<BitVec>* traces) : traces_(traces) {}
  std::uint64_t word(std::size_t input_pos, std::uint64_t word_index) const override {
    return (*traces_)[input_pos].word(word_index);
  }

 private:
  const std::vector<BitVec>* traces_;
};

// Evaluates every net over `vectors` vectors. With epsilon > 0 each gate
// computes its function of its (possibly noisy) inputs and the output bit is
// then flipped independently with probability epsilon, per vector; primary
// inputs are never flipped. Bit-identical results for any jobs/lanes.
NetTraces eval_traces(const Circuit& c, std::uint64_t vectors, const WordSource& inputs,
                      double epsilon, std::uint64_t noise_seed, std::uint32_t jobs = 1,
                      std::uint32_t lanes = 64);

ActivityProfile measure_activity(const Circuit& c, const NetTraces& traces);

// Error-free run on seeded uniform inputs; cfg.epsilon must be 0.
std::pair<NetTraces, ActivityProfile> simulate(const Circuit& c, const SimConfig& cfg);

// Noisy run compared against the error-free run on identical input vectors.
SimResult simulate_noisy(const Circuit& c, const SimConfig& cfg);

// Flips each bit of `trace` independently with probability epsilon.
BitVec apply_channel(const BitVec& trace, double epsilon, std::uint64_t seed);

}  // namespace faultbound
