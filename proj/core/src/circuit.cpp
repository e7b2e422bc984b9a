#include "widthkit/circuit.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "widthkit/error.hpp"
#include "parallel.hpp"

namespace widthkit {

const char* to_string(NodeKind k) noexcept {
  switch (k) {
    case NodeKind::InputActual: return "INPUT";
    case NodeKind::InputGuess: return "GUESS";
    case NodeKind::Const: return "CONST";
    case NodeKind::And: return "AND";
    case NodeKind::Or: return "OR";
    case NodeKind::Not: return "NOT";
    case NodeKind::U2: return "U2";
    case NodeKind::Copy: return "COPY";
  }
  return "?";
}

const char* to_string(Basis b) noexcept { return b == Basis::U2 ? "u2" : "and-or-not"; }

const char* to_string(Violation::Code c) noexcept {
  switch (c) {
    case Violation::Code::Topology: return "topology";
    case Violation::Code::FanIn: return "fan-in";
    case Violation::Code::GuessMultiplicity: return "guess multiplicity";
    case Violation::Code::DegenerateU2: return "degenerate U2";
    case Violation::Code::Basis: return "basis";
    case Violation::Code::VariableRange: return "variable range";
    case Violation::Code::Output: return "output";
  }
  return "?";
}

NodeId Circuit::add_raw(Node n) {
  if (n.kind == NodeKind::Const && const_[n.value ? 1 : 0] == kNoNode)
    const_[n.value ? 1 : 0] = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Circuit::add_input(unsigned var) {
  Node n;
  n.kind = NodeKind::InputActual;
  n.var = var;
  return add_raw(std::move(n));
}

NodeId Circuit::add_guess(unsigned var) {
  Node n;
  n.kind = NodeKind::InputGuess;
  n.var = var;
  return add_raw(std::move(n));
}

NodeId Circuit::add_const(bool value) {
  NodeId& slot = const_[value ? 1 : 0];
  if (slot == kNoNode || slot >= nodes_.size() || nodes_[slot].kind != NodeKind::Const ||
      nodes_[slot].value != value) {
    Node n;
    n.kind = NodeKind::Const;
    n.value = value;
    slot = add_raw(std::move(n));
  }
  return slot;
}

namespace {
Node gate(NodeKind k, std::vector<NodeId> in, U2Params f = {}) {
  Node n;
  n.kind = k;
  n.u2 = f;
  n.fanin = std::move(in);
  return n;
}
}  // namespace

NodeId Circuit::add_and(NodeId p, NodeId q) { return add_raw(gate(NodeKind::And, {p, q})); }
NodeId Circuit::add_or(NodeId p, NodeId q) { return add_raw(gate(NodeKind::Or, {p, q})); }
NodeId Circuit::add_not(NodeId p) { return add_raw(gate(NodeKind::Not, {p})); }
NodeId Circuit::add_copy(NodeId p) { return add_raw(gate(NodeKind::Copy, {p})); }

NodeId Circuit::add_u2(U2Params f, NodeId p, NodeId q) {
  const Node& np = nodes_.at(p);
  const Node& nq = nodes_.at(q);
  // Residual x ^ flip as a wire or NOT gate.
  auto literal = [this](NodeId x, bool flip) {
    if (nodes_[x].kind == NodeKind::Const) return add_const(nodes_[x].value != flip);
    return flip ? add_not(x) : x;
  };
  if (np.kind == NodeKind::Const) {
    if (np.value == f.a) return add_const(f.c);
    return literal(q, f.b != f.c);
  }
  if (nq.kind == NodeKind::Const) {
    if (nq.value == f.b) return add_const(f.c);
    return literal(p, f.a != f.c);
  }
  if (p == q) {
    if (f.a == f.b) return literal(p, f.a != f.c);
    return add_const(f.c);
  }
  return add_raw(gate(NodeKind::U2, {p, q}, f));
}

NodeId Circuit::add_and2(NodeId p, NodeId q) {
  return basis_ == Basis::U2 ? add_u2(kU2And, p, q) : add_and(p, q);
}
NodeId Circuit::add_or2(NodeId p, NodeId q) {
  return basis_ == Basis::U2 ? add_u2(kU2Or, p, q) : add_or(p, q);
}

std::size_t Circuit::size() const noexcept {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) {
    return is_gate(n.kind) && n.kind != NodeKind::Copy;
  }));
}

std::size_t Circuit::copy_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const Node& n) { return n.kind == NodeKind::Copy; }));
}

bool ValidationReport::has(Violation::Code c) const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [c](const Violation& v) { return v.code == c; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << "node " << v.node << ": " << widthkit::to_string(v.code) << ": " << v.message << '\n';
  }
  return os.str();
}

ValidationReport validate(const Circuit& c) {
  ValidationReport r;
  auto add = [&r](Violation::Code code, NodeId id, std::string msg) {
    r.violations.push_back({code, id, std::move(msg)});
  };
  const auto& nodes = c.nodes();
  std::vector<unsigned> guess_nodes(c.n_guess(), 0);
  for (NodeId id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    if (n.fanin.size() != expected_fanin(n.kind)) {
      add(Violation::Code::FanIn, id,
          std::string(to_string(n.kind)) + " expects " + std::to_string(expected_fanin(n.kind)) +
              " operands, has " + std::to_string(n.fanin.size()));
    }
    for (NodeId p : n.fanin) {
      if (p >= id) {
        add(Violation::Code::Topology, id,
            "operand " + std::to_string(p) + " does not precede node " + std::to_string(id));
      }
    }
    switch (n.kind) {
      case NodeKind::InputActual:
        if (n.var >= c.n_actual())
          add(Violation::Code::VariableRange, id, "x" + std::to_string(n.var + 1) + " undeclared");
        break;
      case NodeKind::InputGuess:
        if (n.var >= c.n_guess()) {
          add(Violation::Code::VariableRange, id, "y" + std::to_string(n.var + 1) + " undeclared");
        } else if (++guess_nodes[n.var] == 2) {
          add(Violation::Code::GuessMultiplicity, id,
              "y" + std::to_string(n.var + 1) + " labels more than one node");
        }
        break;
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Not:
        if (c.basis() == Basis::U2 && n.kind != NodeKind::Not)
          add(Violation::Code::Basis, id, std::string(to_string(n.kind)) + " in a u2 circuit");
        break;
      case NodeKind::U2:
        if (c.basis() != Basis::U2) add(Violation::Code::Basis, id, "U2 in an and-or-not circuit");
        if (n.fanin.size() == 2) {
          const bool same = n.fanin[0] == n.fanin[1];
          const bool has_const =
              std::any_of(n.fanin.begin(), n.fanin.end(), [&nodes](NodeId p) {
                return p < nodes.size() && nodes[p].kind == NodeKind::Const;
              });
          if (same || has_const)
            add(Violation::Code::DegenerateU2, id,
                same ? "both operands are the same node" : "constant operand");
        }
        break;
      default:
        break;
    }
  }
  if (c.output() >= nodes.size()) add(Violation::Code::Output, c.output(), "missing output node");
  return r;
}

void require_valid(const Circuit& c) {
  auto r = validate(c);
  if (!r.ok()) throw InvalidCircuit("invalid circuit:\n" + r.to_string());
}

Assignment Assignment::from_valuation(unsigned n_actual, std::uint64_t valuation, unsigned n_guess,
                                      std::uint64_t guess_valuation) {
  Assignment a(n_actual, n_guess);
  for (unsigned i = 0; i < n_actual; ++i) a.actual_[i] = static_cast<std::int8_t>((valuation >> i) & 1u);
  for (unsigned j = 0; j < n_guess; ++j)
    a.guess_[j] = static_cast<std::int8_t>((guess_valuation >> j) & 1u);
  return a;
}

void Assignment::set_actual(unsigned i, bool b) { actual_.at(i) = b ? 1 : 0; }
void Assignment::set_guess(unsigned j, bool b) { guess_.at(j) = b ? 1 : 0; }
void Assignment::unset_actual(unsigned i) { actual_.at(i) = -1; }

std::optional<bool> Assignment::actual(unsigned i) const {
  if (i >= actual_.size() || actual_[i] < 0) return std::nullopt;
  return actual_[i] == 1;
}

std::optional<bool> Assignment::guess(unsigned j) const {
  if (j >= guess_.size() || guess_[j] < 0) return std::nullopt;
  return guess_[j] == 1;
}

bool Assignment::actual_total() const noexcept {
  return std::none_of(actual_.begin(), actual_.end(), [](std::int8_t v) { return v < 0; });
}

std::size_t Assignment::assigned_actual_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(actual_.begin(), actual_.end(), [](std::int8_t v) { return v >= 0; }));
}

std::uint64_t eval_words(const Circuit& c, std::span<const std::uint64_t> actual,
                         std::span<const std::uint64_t> guess) {
  const auto& nodes = c.nodes();
  std::vector<std::uint64_t> val(nodes.size());
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    switch (n.kind) {
      case NodeKind::InputActual: val[id] = actual[n.var]; break;
      case NodeKind::InputGuess: val[id] = guess[n.var]; break;
      case NodeKind::Const: val[id] = n.value ? ~std::uint64_t{0} : 0; break;
      case NodeKind::And: val[id] = val[n.fanin[0]] & val[n.fanin[1]]; break;
      case NodeKind::Or: val[id] = val[n.fanin[0]] | val[n.fanin[1]]; break;
      case NodeKind::Not: val[id] = ~val[n.fanin[0]]; break;
      case NodeKind::Copy: val[id] = val[n.fanin[0]]; break;
      case NodeKind::U2: val[id] = n.u2.apply(val[n.fanin[0]], val[n.fanin[1]]); break;
    }
  }
  return val.at(c.output());
}

bool eval_det(const Circuit& c, const Assignment& a) {
  std::vector<std::uint64_t> xs(c.n_actual(), 0), ys(c.n_guess(), 0);
  for (const Node& n : c.nodes()) {
    if (n.kind == NodeKind::InputActual) {
      auto v = a.actual(n.var);
      if (!v) throw MissingVariable("x" + std::to_string(n.var + 1) + " is unassigned");
      xs[n.var] = *v ? 1 : 0;
    } else if (n.kind == NodeKind::InputGuess) {
      auto v = a.guess(n.var);
      if (!v) throw MissingVariable("y" + std::to_string(n.var + 1) + " is unassigned");
      ys[n.var] = *v ? 1 : 0;
    }
  }
  return eval_words(c, xs, ys) & 1u;
}

namespace {

// Guess words enumerating 64 guess valuations per block (guess j bit pattern).
std::vector<std::uint64_t> guess_block(unsigned n_guess, std::uint64_t block) {
  std::vector<std::uint64_t> ys(n_guess);
  for (unsigned j = 0; j < n_guess; ++j) ys[j] = variable_word(j, block);
  return ys;
}

std::uint64_t guess_mask(unsigned n_guess) { return valid_mask(n_guess); }

}  // namespace

bool eval_nd(const Circuit& c, const Assignment& x) {
  std::vector<std::uint64_t> xs(c.n_actual(), 0);
  for (const Node& n : c.nodes()) {
    if (n.kind != NodeKind::InputActual) continue;
    auto v = x.actual(n.var);
    if (!v) throw MissingVariable("x" + std::to_string(n.var + 1) + " is unassigned");
    xs[n.var] = *v ? ~std::uint64_t{0} : 0;
  }
  const unsigned g = c.n_guess();
  const std::uint64_t blocks = g >= 6 ? (std::uint64_t{1} << (g - 6)) : 1;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    auto ys = guess_block(g, b);
    if (eval_words(c, xs, ys) & guess_mask(g)) return true;
  }
  return false;
}

TruthTable truth_table(const Circuit& c, unsigned arity_limit, unsigned jobs) {
  const unsigned n = c.n_actual();
  if (n > arity_limit)
    throw LimitExceeded("arity " + std::to_string(n) + " exceeds limit " +
                        std::to_string(arity_limit));
  TruthTable t(n);
  auto& words = t.words();
  const unsigned g = c.n_guess();

  // Each table word: OR over guess valuations of the 64 actual valuations.
  auto fill = [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> xs(n);
    std::vector<std::uint64_t> ys(g);
    for (std::size_t w = begin; w < end; ++w) {
      for (unsigned i = 0; i < n; ++i) xs[i] = variable_word(i, w);
      std::uint64_t acc = 0;
      // All 64 actual valuations of a word share one guess valuation per pass.
      for (std::uint64_t gv = 0; gv < (std::uint64_t{1} << g) && acc != ~std::uint64_t{0}; ++gv) {
        for (unsigned j = 0; j < g; ++j) ys[j] = ((gv >> j) & 1u) ? ~std::uint64_t{0} : 0;
        acc |= eval_words(c, xs, ys);
      }
      words[w] = acc;
    }
  };

  detail::parallel_chunks(words.size(), jobs, fill);
  t.clear_padding();
  return t;
}

unsigned read_count(const Circuit& c, unsigned var) {
  if (var >= c.n_actual()) throw Error("unknown variable x" + std::to_string(var + 1));
  return static_cast<unsigned>(std::count_if(c.nodes().begin(), c.nodes().end(), [var](const Node& n) {
    return n.kind == NodeKind::InputActual && n.var == var;
  }));
}

std::vector<unsigned> read_counts(const Circuit& c) {
  std::vector<unsigned> r(c.n_actual(), 0);
  for (const Node& n : c.nodes())
    if (n.kind == NodeKind::InputActual && n.var < r.size()) ++r[n.var];
  return r;
}

bool is_read_k(const Circuit& c, unsigned k) {
  auto r = read_counts(c);
  return std::all_of(r.begin(), r.end(), [k](unsigned v) { return v <= k; });
}

std::size_t actual_input_node_count(const Circuit& c) {
  return static_cast<std::size_t>(std::count_if(c.nodes().begin(), c.nodes().end(), [](const Node& n) {
    return n.kind == NodeKind::InputActual;
  }));
}

std::vector<bool> live_nodes(const Circuit& c) {
  std::vector<bool> live(c.node_count(), false);
  if (c.output() >= c.node_count()) return live;
  live[c.output()] = true;
  for (std::size_t i = c.node_count(); i-- > 0;) {
    if (!live[i]) continue;
    for (NodeId p : c.nodes()[i].fanin) live[p] = true;
  }
  return live;
}

Circuit remove_dead(const Circuit& c) {
  auto live = live_nodes(c);
  Circuit out(c.basis(), c.n_actual(), c.n_guess());
  std::vector<NodeId> remap(c.node_count(), kNoNode);
  for (NodeId id = 0; id < c.node_count(); ++id) {
    if (!live[id]) continue;
    Node n = c.nodes()[id];
    for (auto& p : n.fanin) p = remap[p];
    remap[id] = n.kind == NodeKind::Const ? out.add_const(n.value) : out.add_raw(std::move(n));
  }
  out.set_output(remap.at(c.output()));
  return out;
}

}  // namespace widthkit
