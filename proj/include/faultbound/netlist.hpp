#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace faultbound {

enum class GateKind : std::uint8_t {
  kAnd,
  kNand,
  kOr,
  kNor,
  kXor,
  kXnor,
  kNot,
  kBuf,
  kMaj3,
};

std::string_view gate_kind_name(GateKind kind);
// Case-insensitive; accepts the aliases BUFF -> BUF and NOT1 -> NOT.
std::optional<GateKind> gate_kind_from_name(std::string_view name);
std::size_t gate_min_arity(GateKind kind);
std::size_t gate_max_arity(GateKind kind);

using NetId = std::uint32_t;

struct Gate {
  GateKind kind;
  NetId output;
  std::vector<NetId> inputs;
};

class NetlistError : public std::runtime_error {
 public:
  enum class Code {
    kSyntax,
    kUndeclaredNet,
    kDuplicateDriver,
    kCycle,
    kArity,
    kPrecondition,
  };

  NetlistError(Code code, const std::string& message, int line = 0, int column = 0);

  Code code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  Code code_;
  std::string detail_;
  int line_;
  int column_;
};

// Immutable combinational gate network. Instances are built through
// CircuitBuilder (or parse_bench / a generator) and are safe to share across
// threads once constructed.
class Circuit {
 public:
  const std::string& name() const { return name_; }
  std::size_t net_count() const { return net_names_.size(); }
  const std::string& net_name(NetId id) const { return net_names_[id]; }
  std::optional<NetId> find_net(std::string_view name) const;

  const std::vector<NetId>& inputs() const { return inputs_; }
  const std::vector<NetId>& outputs() const { return outputs_; }
  const std::vector<Gate>& gates() const { return gates_; }

  // Gate indices ordered so that every gate appears after its input drivers.
  const std::vector<std::uint32_t>& topo_order() const { return topo_; }

  bool is_input(NetId id) const;
  bool is_gate_driven(NetId id) const;
  std::optional<std::uint32_t> driver_gate(NetId id) const;

  // Same input/output name sequences and the same gate list by name and kind;
  // internal net numbering is allowed to differ.
  bool structurally_equal(const Circuit& other) const;

 private:
  friend class CircuitBuilder;

  struct Driver {
    enum class Kind : std::uint8_t { kNone, kInput, kGate };
    Kind kind = Kind::kNone;
    std::uint32_t gate = 0;
  };

  std::string name_;
  std::vector<std::string> net_names_;
  std::unordered_map<std::string, NetId> net_index_;
  std::vector<Driver> drivers_;
  std::vector<NetId> inputs_;
  std::vector<NetId> outputs_;
  std::vector<Gate> gates_;
  std::vector<std::uint32_t> topo_;
};

// Incremental construction with forward references. add_* calls enforce the
// single-driver and arity rules; build() checks that every referenced net has
// a driver, runs cycle detection and freezes the topological order.
class CircuitBuilder {
 public:
  // Creates the net on first mention, otherwise returns the existing id.
  NetId net(std::string_view name);
  NetId add_input(std::string_view name);
  NetId add_gate(GateKind kind, std::string_view output, const std::vector<NetId>& inputs);
  NetId add_gate(GateKind kind, std::string_view output,
                 std::initializer_list<std::string_view> inputs);
  void add_output(std::string_view name);

  Circuit build(std::string name);

 private:
  Circuit c_;
  std::vector<char> is_output_;
};

Circuit parse_bench(std::string_view text, std::string name = "bench");
std::string emit_bench(const Circuit& c);

struct StructuralMetrics {
  std::uint64_t size_s0 = 0;   // gate count
  std::uint32_t depth_d0 = 0;  // longest input->output path, in gate levels
  double avg_fanin_k = 0.0;
  std::uint32_t max_fanin = 0;
  std::uint32_t n_inputs = 0;
  std::uint32_t m_outputs = 0;
};

StructuralMetrics structural_metrics(const Circuit& c);

// Balanced XOR reduction tree: ceil((n-1)/(k-1)) gates, ceil(log_k n) levels.
Circuit gen_parity(std::uint32_t n_inputs, std::uint32_t arity);

// (2*width+1)-input, (width+1)-output ripple-carry adder, fanin <= 2.
Circuit gen_ripple_adder(std::uint32_t width);

// 2*width-input array multiplier, fanin <= 2. Output width is 2*width except
// for width 1, where the product fits in the single AND gate output.
Circuit gen_array_multiplier(std::uint32_t width);

// `copies` replicas sharing the primary inputs, each original output voted by
// a MAJ3 reduction tree over the replica outputs. copies must be odd, >= 3.
Circuit nmr_transform(const Circuit& c, std::uint32_t copies);

}  // namespace faultbound
