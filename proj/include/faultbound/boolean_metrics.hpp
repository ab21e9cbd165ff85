#pragma once

#include <cstdint>
#include <vector>

#include "faultbound/bounds.hpp"
#include "faultbound/logic_sim.hpp"
#include "faultbound/netlist.hpp"

namespace faultbound {

struct SensitivityResult {
  enum class Mode { kExact, kSampled };

  std::uint32_t value = 0;
  Mode mode = Mode::kExact;
  std::vector<std::uint8_t> witness_input;  // one bit per primary input
  std::uint64_t samples_used = 0;           // inputs examined
};

// Maximum over all 2^n inputs x of the number of single-bit flips that change
// any output bit. Throws std::invalid_argument when the circuit has more than
// `exhaustive_threshold` inputs; use sensitivity_sampled instead.
SensitivityResult sensitivity_exact(const Circuit& c, std::uint32_t exhaustive_threshold = 20,
                                    std::uint32_t jobs = 1);

// Same per-input count maximized over `samples` uniformly drawn inputs; a
// lower estimate of the exact value.
SensitivityResult sensitivity_sampled(const Circuit& c, std::uint64_t samples,
                                      std::uint64_t seed);

// Bundles the bound inputs measured for a circuit: sensitivity, size, average
// error-free switching activity, average fanin, input/output counts, depth.
// `activity` must come from an error-free run of `c`.
CircuitSummary summarize(const Circuit& c, const ActivityProfile& activity,
                         const SensitivityResult& sens);

}  // namespace faultbound
