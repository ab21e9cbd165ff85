#include "faultbound/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <utility>

namespace faultbound {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  std::size_t min_arity;
  std::size_t max_arity;
};

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

constexpr KindInfo kKinds[] = {
    {GateKind::kAnd, "AND", 2, kUnbounded},
    {GateKind::kNand, "NAND", 2, kUnbounded},
    {GateKind::kOr, "OR", 2, kUnbounded},
    {GateKind::kNor, "NOR", 2, kUnbounded},
    {GateKind::kXor, "XOR", 2, kUnbounded},
    {GateKind::kXnor, "XNOR", 2, kUnbounded},
    {GateKind::kNot, "NOT", 1, 1},
    {GateKind::kBuf, "BUF", 1, 1},
    {GateKind::kMaj3, "MAJ3", 3, 3},
};

const KindInfo& kind_info(GateKind kind) {
  return kKinds[static_cast<std::size_t>(kind)];
}

bool equals_ci(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(a[i])) !=
        std::toupper(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

bool is_name_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' ||
         ch == '[' || ch == ']';
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) { return kind_info(kind).name; }

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (const KindInfo& info : kKinds) {
    if (equals_ci(name, info.name)) return info.kind;
  }
  if (equals_ci(name, "BUFF")) return GateKind::kBuf;
  if (equals_ci(name, "NOT1")) return GateKind::kNot;
  return std::nullopt;
}

std::size_t gate_min_arity(GateKind kind) { return kind_info(kind).min_arity; }
std::size_t gate_max_arity(GateKind kind) { return kind_info(kind).max_arity; }

NetlistError::NetlistError(Code code, const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? (column > 0 ? "line " + std::to_string(line) + ", col " +
                                                      std::to_string(column) + ": " + message
                                                : "line " + std::to_string(line) + ": " + message)
                                  : message),
      code_(code),
      detail_(message),
      line_(line),
      column_(column) {}

std::optional<NetId> Circuit::find_net(std::string_view name) const {
  auto it = net_index_.find(std::string(name));
  return it == net_index_.end() ? std::nullopt : std::optional<NetId>(it->second);
}

bool Circuit::is_input(NetId id) const {
  return drivers_[id].kind == Driver::Kind::kInput;
}

bool Circuit::is_gate_driven(NetId id) const {
  return drivers_[id].kind == Driver::Kind::kGate;
}

std::optional<std::uint32_t> Circuit::driver_gate(NetId id) const {
  if (drivers_[id].kind != Driver::Kind::kGate) return std::nullopt;
  return drivers_[id].gate;
}

bool Circuit::structurally_equal(const Circuit& other) const {
  auto names = [this](const std::vector<NetId>& ids) {
    std::vector<std::string_view> out;
    out.reserve(ids.size());
    for (NetId id : ids) out.push_back(net_names_[id]);
    return out;
  };
  auto other_names = [&other](const std::vector<NetId>& ids) {
    std::vector<std::string_view> out;
    out.reserve(ids.size());
    for (NetId id : ids) out.push_back(other.net_names_[id]);
    return out;
  };
  if (names(inputs_) != other_names(other.inputs_)) return false;
  if (names(outputs_) != other_names(other.outputs_)) return false;
  if (gates_.size() != other.gates_.size()) return false;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& a = gates_[i];
    const Gate& b = other.gates_[i];
    if (a.kind != b.kind) return false;
    if (net_names_[a.output] != other.net_names_[b.output]) return false;
    if (names(a.inputs) != other_names(b.inputs)) return false;
  }
  return true;
}

NetId CircuitBuilder::net(std::string_view name) {
  auto it = c_.net_index_.find(std::string(name));
  if (it != c_.net_index_.end()) return it->second;
  const NetId id = static_cast<NetId>(c_.net_names_.size());
  c_.net_names_.emplace_back(name);
  c_.net_index_.emplace(std::string(name), id);
  c_.drivers_.push_back({});
  is_output_.push_back(0);
  return id;
}

NetId CircuitBuilder::add_input(std::string_view name) {
  const NetId id = net(name);
  if (c_.drivers_[id].kind != Circuit::Driver::Kind::kNone)
    throw NetlistError(NetlistError::Code::kDuplicateDriver,
                       "net '" + std::string(name) + "' already has a driver");
  c_.drivers_[id].kind = Circuit::Driver::Kind::kInput;
  c_.inputs_.push_back(id);
  return id;
}

NetId CircuitBuilder::add_gate(GateKind kind, std::string_view output,
                               const std::vector<NetId>& inputs) {
  const std::size_t lo = gate_min_arity(kind);
  const std::size_t hi = gate_max_arity(kind);
  if (inputs.size() < lo || inputs.size() > hi) {
    std::string bound = hi == kUnbounded ? (">= " + std::to_string(lo))
                        : lo == hi       ? ("exactly " + std::to_string(lo))
                                         : (std::to_string(lo) + ".." + std::to_string(hi));
    throw NetlistError(NetlistError::Code::kArity,
                       std::string(gate_kind_name(kind)) + " takes " + bound +
                           " inputs, got " + std::to_string(inputs.size()) + " for net '" +
                           std::string(output) + "'");
  }
  const NetId out = net(output);
  if (c_.drivers_[out].kind != Circuit::Driver::Kind::kNone)
    throw NetlistError(NetlistError::Code::kDuplicateDriver,
                       "net '" + std::string(output) + "' already has a driver");
  c_.drivers_[out].kind = Circuit::Driver::Kind::kGate;
  c_.drivers_[out].gate = static_cast<std::uint32_t>(c_.gates_.size());
  c_.gates_.push_back(Gate{kind, out, inputs});
  return out;
}

NetId CircuitBuilder::add_gate(GateKind kind, std::string_view output,
                               std::initializer_list<std::string_view> inputs) {
  std::vector<NetId> ids;
  ids.reserve(inputs.size());
  for (std::string_view in : inputs) ids.push_back(net(in));
  return add_gate(kind, output, ids);
}

void CircuitBuilder::add_output(std::string_view name) {
  const NetId id = net(name);
  if (is_output_[id])
    throw NetlistError(NetlistError::Code::kSyntax,
                       "duplicate OUTPUT declaration for net '" + std::string(name) + "'");
  is_output_[id] = 1;
  c_.outputs_.push_back(id);
}

Circuit CircuitBuilder::build(std::string name) {
  for (NetId id = 0; id < c_.net_names_.size(); ++id) {
    if (c_.drivers_[id].kind == Circuit::Driver::Kind::kNone)
      throw NetlistError(NetlistError::Code::kUndeclaredNet,
                         "net '" + c_.net_names_[id] + "' has no driver");
  }

  // Kahn: a net is ready once its driver is a primary input or an emitted gate.
  std::vector<std::vector<std::uint32_t>> users(c_.net_names_.size());
  std::vector<std::size_t> missing(c_.gates_.size());
  for (std::uint32_t gi = 0; gi < c_.gates_.size(); ++gi) {
    missing[gi] = c_.gates_[gi].inputs.size();
    for (NetId in : c_.gates_[gi].inputs) users[in].push_back(gi);
  }
  std::deque<NetId> ready;
  for (NetId id = 0; id < c_.net_names_.size(); ++id) {
    if (c_.drivers_[id].kind == Circuit::Driver::Kind::kInput) ready.push_back(id);
  }
  c_.topo_.clear();
  c_.topo_.reserve(c_.gates_.size());
  while (!ready.empty()) {
    const NetId id = ready.front();
    ready.pop_front();
    for (std::uint32_t gi : users[id]) {
      if (--missing[gi] == 0) {
        c_.topo_.push_back(gi);
        ready.push_back(c_.gates_[gi].output);
      }
    }
  }
  if (c_.topo_.size() != c_.gates_.size()) {
    for (std::uint32_t gi = 0; gi < c_.gates_.size(); ++gi) {
      if (missing[gi] != 0)
        throw NetlistError(NetlistError::Code::kCycle,
                           "cycle detected through net '" +
                               c_.net_names_[c_.gates_[gi].output] + "'");
    }
  }

  c_.name_ = std::move(name);
  return std::move(c_);
}

namespace {

struct LineScanner {
  std::string_view line;
  int lineno;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw NetlistError(NetlistError::Code::kSyntax, msg, lineno,
                       static_cast<int>(pos) + 1);
  }
  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= line.size();
  }
  bool peek(char ch) {
    skip_ws();
    return pos < line.size() && line[pos] == ch;
  }
  void expect(char ch) {
    skip_ws();
    if (pos >= line.size() || line[pos] != ch) fail(std::string("expected '") + ch + "'");
    ++pos;
  }
  std::string_view name(const char* what) {
    skip_ws();
    const std::size_t start = pos;
    while (pos < line.size() && is_name_char(line[pos])) ++pos;
    if (pos == start) fail(std::string("expected ") + what);
    return line.substr(start, pos - start);
  }
};

void parse_line(CircuitBuilder& b, std::string_view line, int lineno) {
  LineScanner s{line, lineno};
  if (s.at_end() || s.peek('#')) return;

  const std::string_view head = s.name("net name or declaration");
  if (s.peek('(')) {
    s.expect('(');
    const std::string_view nm = s.name("net name");
    s.expect(')');
    if (!s.at_end()) s.fail("trailing characters after declaration");
    if (equals_ci(head, "INPUT")) {
      b.add_input(nm);
    } else if (equals_ci(head, "OUTPUT")) {
      b.add_output(nm);
    } else {
      s.fail("unknown declaration '" + std::string(head) + "'");
    }
    return;
  }

  s.expect('=');
  const std::string_view kind_name = s.name("gate kind");
  const auto kind = gate_kind_from_name(kind_name);
  if (!kind) s.fail("unknown gate kind '" + std::string(kind_name) + "'");
  s.expect('(');
  std::vector<NetId> ins;
  if (!s.peek(')')) {
    for (;;) {
      ins.push_back(b.net(s.name("net name")));
      if (s.peek(',')) {
        s.expect(',');
        continue;
      }
      break;
    }
  }
  s.expect(')');
  if (!s.at_end()) s.fail("trailing characters after gate");
  b.add_gate(*kind, head, ins);
}

}  // namespace

Circuit parse_bench(std::string_view text, std::string name) {
  CircuitBuilder b;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    try {
      parse_line(b, line, lineno);
    } catch (const NetlistError& e) {
      if (e.line() == 0) throw NetlistError(e.code(), e.detail(), lineno);
      throw;
    }
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return b.build(std::move(name));
}

std::string emit_bench(const Circuit& c) {
  std::string out;
  for (NetId id : c.inputs()) {
    out += "INPUT(";
    out += c.net_name(id);
    out += ")\n";
  }
  for (NetId id : c.outputs()) {
    out += "OUTPUT(";
    out += c.net_name(id);
    out += ")\n";
  }
  for (const Gate& g : c.gates()) {
    out += c.net_name(g.output);
    out += " = ";
    out += gate_kind_name(g.kind);
    out += "(";
    for (std::size_t i = 0; i < g.inputs.size(); ++i) {
      if (i) out += ", ";
      out += c.net_name(g.inputs[i]);
    }
    out += ")\n";
  }
  return out;
}

StructuralMetrics structural_metrics(const Circuit& c) {
  StructuralMetrics m;
  m.size_s0 = c.gates().size();
  m.n_inputs = static_cast<std::uint32_t>(c.inputs().size());
  m.m_outputs = static_cast<std::uint32_t>(c.outputs().size());

  std::size_t fanin_sum = 0;
  for (const Gate& g : c.gates()) {
    fanin_sum += g.inputs.size();
    m.max_fanin = std::max<std::uint32_t>(m.max_fanin,
                                          static_cast<std::uint32_t>(g.inputs.size()));
  }
  m.avg_fanin_k = c.gates().empty()
                      ? 0.0
                      : static_cast<double>(fanin_sum) / static_cast<double>(c.gates().size());

  std::vector<std::uint32_t> level(c.net_count(), 0);
  for (std::uint32_t gi : c.topo_order()) {
    const Gate& g = c.gates()[gi];
    std::uint32_t lv = 0;
    for (NetId in : g.inputs) lv = std::max(lv, level[in]);
    level[g.output] = lv + 1;
  }
  for (NetId out : c.outputs()) m.depth_d0 = std::max(m.depth_d0, level[out]);
  return m;
}

Circuit gen_parity(std::uint32_t n_inputs, std::uint32_t arity) {
  if (n_inputs < 2)
    throw NetlistError(NetlistError::Code::kPrecondition, "parity generator needs n >= 2");
  if (arity < 2)
    throw NetlistError(NetlistError::Code::kPrecondition, "parity generator needs k >= 2");

  CircuitBuilder b;
  std::deque<NetId> frontier;
  for (std::uint32_t i = 0; i < n_inputs; ++i)
    frontier.push_back(b.add_input("x" + std::to_string(i)));

  // The first gate absorbs the remainder so every later gate is exactly k-ary;
  // FIFO reduction then yields a minimum-depth tree.
  std::size_t take = ((n_inputs - 2) % (arity - 1)) + 2;
  std::uint32_t tmp = 0;
  while (frontier.size() > 1) {
    std::vector<NetId> ins;
    ins.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
      ins.push_back(frontier.front());
      frontier.pop_front();
    }
    const bool root = frontier.empty();
    frontier.push_back(
        b.add_gate(GateKind::kXor, root ? "par" : ("t" + std::to_string(tmp++)), ins));
    take = arity;
  }
  b.add_output("par");

  std::string name = "parity" + std::to_string(n_inputs);
  if (arity != 2) name += "_k" + std::to_string(arity);
  return b.build(std::move(name));
}

Circuit gen_ripple_adder(std::uint32_t width) {
  if (width < 1)
    throw NetlistError(NetlistError::Code::kPrecondition, "adder generator needs width >= 1");

  CircuitBuilder b;
  std::vector<NetId> a(width), bb(width);
  for (std::uint32_t i = 0; i < width; ++i) a[i] = b.add_input("a" + std::to_string(i));
  for (std::uint32_t i = 0; i < width; ++i) bb[i] = b.add_input("b" + std::to_string(i));
  NetId carry = b.add_input("cin");

  for (std::uint32_t i = 0; i < width; ++i) {
    const std::string idx = std::to_string(i);
    const NetId t = b.add_gate(GateKind::kXor, "t" + idx, {a[i], bb[i]});
    b.add_gate(GateKind::kXor, "s" + idx, {t, carry});
    const NetId g = b.add_gate(GateKind::kAnd, "g" + idx, {a[i], bb[i]});
    const NetId h = b.add_gate(GateKind::kAnd, "h" + idx, {t, carry});
    const std::string cname = (i + 1 == width) ? "cout" : "c" + std::to_string(i + 1);
    carry = b.add_gate(GateKind::kOr, cname, {g, h});
  }
  for (std::uint32_t i = 0; i < width; ++i) b.add_output("s" + std::to_string(i));
  b.add_output("cout");
  return b.build("adder" + std::to_string(width));
}

Circuit gen_array_multiplier(std::uint32_t width) {
  if (width < 1)
    throw NetlistError(NetlistError::Code::kPrecondition,
                       "multiplier generator needs width >= 1");

  CircuitBuilder b;
  std::vector<NetId> a(width), bn(width);
  for (std::uint32_t i = 0; i < width; ++i) a[i] = b.add_input("a" + std::to_string(i));
  for (std::uint32_t i = 0; i < width; ++i) bn[i] = b.add_input("b" + std::to_string(i));

  if (width == 1) {
    b.add_gate(GateKind::kAnd, "p0", {a[0], bn[0]});
    b.add_output("p0");
    return b.build("mult1");
  }

  std::uint32_t aux = 0;
  auto tmp = [&aux] { return "m" + std::to_string(aux++); };
  auto ha = [&](NetId x, NetId y, const std::string& s, const std::string& c) {
    const NetId sn = b.add_gate(GateKind::kXor, s, {x, y});
    const NetId cn = b.add_gate(GateKind::kAnd, c, {x, y});
    return std::pair{sn, cn};
  };
  auto fa = [&](NetId x, NetId y, NetId z, const std::string& s, const std::string& c) {
    const NetId t = b.add_gate(GateKind::kXor, tmp(), {x, y});
    const NetId sn = b.add_gate(GateKind::kXor, s, {t, z});
    const NetId g1 = b.add_gate(GateKind::kAnd, tmp(), {x, y});
    const NetId g2 = b.add_gate(GateKind::kAnd, tmp(), {t, z});
    const NetId cn = b.add_gate(GateKind::kOr, c, {g1, g2});
    return std::pair{sn, cn};
  };

  std::vector<std::vector<NetId>> pp(width, std::vector<NetId>(width));
  for (std::uint32_t j = 0; j < width; ++j) {
    for (std::uint32_t i = 0; i < width; ++i) {
      const std::string nm = (j == 0 && i == 0)
                                 ? std::string("p0")
                                 : "pp" + std::to_string(j) + "_" + std::to_string(i);
      pp[j][i] = b.add_gate(GateKind::kAnd, nm, {a[i], bn[j]});
    }
  }

  // acc holds the running sum bits above the lowest still-open product bit.
  std::vector<NetId> acc(pp[0].begin() + 1, pp[0].end());
  for (std::uint32_t j = 1; j < width; ++j) {
    const bool last_row = (j + 1 == width);
    auto sum_name = [&](std::uint32_t rel) {
      if (rel == 0) return "p" + std::to_string(j);
      if (last_row) return "p" + std::to_string(j + rel);
      return "s" + std::to_string(j) + "_" + std::to_string(rel);
    };

    std::vector<NetId> next;
    auto [s0, c0] = ha(acc[0], pp[j][0], sum_name(0), tmp());
    (void)s0;
    NetId carry = c0;
    for (std::uint32_t i = 1; i < width; ++i) {
      const bool top_cell = (i + 1 == width);
      const std::string cname =
          (last_row && top_cell) ? "p" + std::to_string(2 * width - 1) : tmp();
      std::pair<NetId, NetId> sc;
      if (i < acc.size())
        sc = fa(acc[i], pp[j][i], carry, sum_name(i), cname);
      else
        sc = ha(pp[j][i], carry, sum_name(i), cname);
      next.push_back(sc.first);
      carry = sc.second;
    }
    next.push_back(carry);
    acc = std::move(next);
  }

  for (std::uint32_t i = 0; i < 2 * width; ++i) b.add_output("p" + std::to_string(i));
  return b.build("mult" + std::to_string(width));
}

Circuit nmr_transform(const Circuit& c, std::uint32_t copies) {
  if (copies < 3 || copies % 2 == 0)
    throw NetlistError(NetlistError::Code::kPrecondition,
                       "nmr copies must be odd and >= 3");

  CircuitBuilder b;
  for (NetId in : c.inputs()) b.add_input(c.net_name(in));

  for (std::uint32_t r = 0; r < copies; ++r) {
    const std::string suffix = "__r" + std::to_string(r);
    auto mapped = [&](NetId id) {
      return c.is_input(id) ? b.net(c.net_name(id)) : b.net(c.net_name(id) + suffix);
    };
    for (const Gate& g : c.gates()) {
      std::vector<NetId> ins;
      ins.reserve(g.inputs.size());
      for (NetId in : g.inputs) ins.push_back(mapped(in));
      b.add_gate(g.kind, c.net_name(g.output) + suffix, ins);
    }
  }

  for (NetId out : c.outputs()) {
    const std::string& base = c.net_name(out);
    if (c.is_input(out)) {
      // Pass-through output: nothing to vote on.
      b.add_output(base);
      continue;
    }
    std::deque<NetId> q;
    for (std::uint32_t r = 0; r < copies; ++r) q.push_back(b.net(base + "__r" + std::to_string(r)));
    std::uint32_t v = 0;
    while (q.size() > 1) {
      std::vector<NetId> ins;
      for (int i = 0; i < 3; ++i) {
        ins.push_back(q.front());
        q.pop_front();
      }
      const bool root = q.empty();
      q.push_back(b.add_gate(GateKind::kMaj3,
                             root ? base : base + "__v" + std::to_string(v++), ins));
    }
    b.add_output(base);
  }

  return b.build(c.name() + "_nmr" + std::to_string(copies));
}

}  // namespace faultbound
