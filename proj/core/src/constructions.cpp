#include "widthkit/constructions.hpp"

#include <bit>
#include <cmath>

#include "widthkit/error.hpp"

namespace widthkit {

namespace {

constexpr U2Params kAndNotRight{false, true, false};  // p & !q
constexpr U2Params kAndNotLeft{true, false, false};   // !p & q

unsigned exact_root(unsigned n) {
  auto m = static_cast<unsigned>(std::lround(std::sqrt(static_cast<double>(n))));
  while (m * m > n) --m;
  while ((m + 1) * (m + 1) <= n) ++m;
  if (n == 0 || m * m != n) throw Error("n = " + std::to_string(n) + " is not a positive perfect square");
  return m;
}

unsigned ceil_log2(unsigned m) { return m <= 1 ? 0 : static_cast<unsigned>(std::bit_width(m - 1)); }

}  // namespace

BooleanFunction BooleanFunction::from_table(TruthTable t) {
  const unsigned n = t.arity();
  BooleanFunction f(n, [t](std::uint64_t v) { return t.get(v); });
  f.table_ = std::move(t);
  return f;
}

const TruthTable& BooleanFunction::table(unsigned arity_limit) const {
  if (!table_) {
    if (arity_ > arity_limit)
      throw LimitExceeded("arity " + std::to_string(arity_) + " exceeds limit " + std::to_string(arity_limit));
    TruthTable t(arity_);
    for (std::uint64_t v = 0; v < t.size(); ++v) t.set(v, eval_(v));
    table_ = std::move(t);
  }
  return *table_;
}

BooleanFunction parity_function(unsigned n) {
  return BooleanFunction(n, [](std::uint64_t v) { return (std::popcount(v) & 1) != 0; });
}

BooleanFunction or_of_parities_function(unsigned n) {
  const unsigned m = exact_root(n);
  return BooleanFunction(n, [m](std::uint64_t v) {
    const std::uint64_t block = m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    for (unsigned i = 0; i < m; ++i)
      if (std::popcount((v >> (i * m)) & block) & 1) return true;
    return false;
  });
}

NodeId add_xor(Circuit& c, NodeId p, NodeId q) {
  NodeId g1 = c.add_u2(kAndNotRight, p, q);
  NodeId g2 = c.add_u2(kAndNotLeft, p, q);
  return c.add_u2(kU2Or, g1, g2);
}

Circuit build_parity(unsigned n) {
  if (n == 0) throw Error("parity needs at least one input");
  Circuit c(Basis::U2, n);
  if (n == 1) {
    c.set_output(c.add_input(0));
    return c;
  }
  NodeId acc_left = c.add_input(0), acc_right = c.add_input(0);
  NodeId acc = kNoNode;
  for (unsigned i = 1; i < n; ++i) {
    NodeId g1 = c.add_u2(kAndNotRight, acc_left, c.add_input(i));
    NodeId g2 = c.add_u2(kAndNotLeft, acc_right, c.add_input(i));
    acc = c.add_u2(kU2Or, g1, g2);
    acc_left = acc_right = acc;
  }
  c.set_output(acc);
  return c;
}

BlockingAssignment find_blocking_assignment(const Circuit& c) {
  const auto& nodes = c.nodes();
  for (NodeId id = 0; id < nodes.size(); ++id) {
    const Node& g = nodes[id];
    if (g.kind != NodeKind::U2 && g.kind != NodeKind::And && g.kind != NodeKind::Or) continue;
    const Node& p = nodes[g.fanin[0]];
    const Node& q = nodes[g.fanin[1]];
    if (p.kind != NodeKind::InputActual || q.kind != NodeKind::InputActual) continue;
    U2Params f = g.kind == NodeKind::U2 ? g.u2 : g.kind == NodeKind::And ? kU2And : kU2Or;
    BlockingAssignment a{p.var, f.a, id};
    if (q.var < p.var || (q.var == p.var && f.b < f.a)) a = {q.var, f.b, id};
    return a;
  }
  throw Error("circuit has no gate fed by two actual inputs");
}

Elimination gate_eliminate(const Circuit& c, unsigned var, bool value) {
  if (var >= c.n_actual()) throw Error("unknown variable x" + std::to_string(var + 1));
  Assignment a(c.n_actual(), c.n_guess());
  a.set_actual(var, value);
  TracedCircuit t = restrict_traced(c, a);
  Elimination e{std::move(t.circuit), {}};
  e.trace.var = var;
  e.trace.value = value;
  for (NodeId id = 0; id < c.node_count(); ++id) {
    const NodeKind k = c.nodes()[id].kind;
    if (!is_gate(k) || k == NodeKind::Copy || t.fate[id] == Fate::Kept) continue;
    e.trace.eliminated.push_back(id);
    e.trace.fate.push_back(t.fate[id]);
  }
  e.trace.count = e.trace.eliminated.size();
  return e;
}

Circuit build_or_of_parities_det(unsigned n) {
  const unsigned m = exact_root(n);
  Circuit c(Basis::U2, n);
  NodeId acc = kNoNode;
  for (unsigned i = 0; i < m; ++i) {
    NodeId block;
    if (m == 1) {
      block = c.add_input(0);
    } else {
      NodeId left = c.add_input(i * m), right = c.add_input(i * m);
      block = kNoNode;
      for (unsigned j = 1; j < m; ++j) {
        NodeId g1 = c.add_u2(kAndNotRight, left, c.add_input(i * m + j));
        NodeId g2 = c.add_u2(kAndNotLeft, right, c.add_input(i * m + j));
        block = c.add_u2(kU2Or, g1, g2);
        left = right = block;
      }
    }
    acc = acc == kNoNode ? block : c.add_u2(kU2Or, acc, block);
  }
  c.set_output(acc);
  return c;
}

SelectorBundle build_selector(unsigned n) {
  const unsigned m = exact_root(n);
  const unsigned k = ceil_log2(m);
  SelectorBundle s{Circuit(Basis::U2, n, k), {}, m};
  Circuit& c = s.circuit;
  std::vector<NodeId> y(k);
  for (unsigned j = 0; j < k; ++j) y[j] = c.add_guess(j);

  // Block i is selected when y_j equals bit j of i. A selector is either a
  // literal of y (node plus polarity) or an AND chain; polarity is folded
  // into the U2 parameters of the consuming gate.
  struct Lit {
    NodeId node;
    bool neg;
  };
  std::vector<std::optional<Lit>> select(m);
  for (unsigned i = 0; i < m && k > 0; ++i) {
    Lit l{y[0], ((i >> 0) & 1u) == 0};
    for (unsigned j = 1; j < k; ++j) {
      const bool want = (i >> j) & 1u;
      l = Lit{c.add_u2(U2Params{l.neg, !want, false}, l.node, y[j]), false};
    }
    select[i] = l;
  }
  for (unsigned j = 0; j < m; ++j) {
    NodeId out = kNoNode;
    for (unsigned i = 0; i < m; ++i) {
      NodeId x = c.add_input(i * m + j);
      NodeId t = select[i] ? c.add_u2(U2Params{select[i]->neg, false, false}, select[i]->node, x) : x;
      out = out == kNoNode ? t : c.add_u2(kU2Or, out, t);
    }
    s.outputs.push_back(out);
  }
  c.set_output(s.outputs.front());
  return s;
}

Circuit build_nd_selector_f(unsigned n) {
  const unsigned m = exact_root(n);
  if (m < 2) throw Error("nondeterministic selector needs n >= 4");
  SelectorBundle s = build_selector(n);
  Circuit& c = s.circuit;
  NodeId acc = s.outputs[0];
  for (unsigned j = 1; j < m; ++j) acc = add_xor(c, acc, s.outputs[j]);
  c.set_output(acc);
  return std::move(c);
}

BooleanFunction compose_selector_function(const BooleanFunction& inner) {
  const unsigned n = inner.arity();
  if (4ull * n > 64) throw LimitExceeded("composed arity exceeds 64");
  return BooleanFunction(4 * n, [inner, n](std::uint64_t v) {
    const std::uint64_t xs = v & ((std::uint64_t{1} << (2 * n)) - 1);
    const std::uint64_t zs = (v >> (2 * n)) & ((std::uint64_t{1} << (2 * n)) - 1);
    if (static_cast<unsigned>(std::popcount(zs)) != n) return false;
    std::uint64_t sel = 0;
    unsigned k = 0;
    for (unsigned i = 0; i < 2 * n; ++i)
      if ((zs >> i) & 1u) sel |= ((xs >> i) & 1u) << k++;
    return inner(sel);
  });
}

EnumerationResult enumerate_small_circuits(const TruthTable& target, unsigned max_gates) {
  const unsigned n = target.arity();
  if (n > 6) throw LimitExceeded("enumeration supports at most 6 inputs");
  const std::uint64_t mask = valid_mask(n);
  const std::uint64_t want = target.words()[0];
  std::vector<std::uint64_t> funcs;
  for (unsigned i = 0; i < n; ++i) funcs.push_back(variable_word(i, 0) & mask);

  EnumerationResult r;
  // Depth-first over gate sequences; at each depth every node may be the output.
  auto rec = [&](auto&& self, unsigned gates) -> void {
    for (std::uint64_t f : funcs) {
      ++r.circuits;
      if (f == want) ++r.matching;
    }
    if (gates == max_gates) return;
    const std::size_t count = funcs.size();
    for (std::size_t p = 0; p < count; ++p) {
      funcs.push_back(~funcs[p] & mask);  // NOT
      self(self, gates + 1);
      funcs.pop_back();
      for (std::size_t q = 0; q < count; ++q) {
        if (p == q) continue;
        for (unsigned abc = 0; abc < 8; ++abc) {
          U2Params f{(abc & 4u) != 0, (abc & 2u) != 0, (abc & 1u) != 0};
          funcs.push_back(f.apply(funcs[p], funcs[q]) & mask);
          self(self, gates + 1);
          funcs.pop_back();
        }
      }
    }
  };
  rec(rec, 0);
  return r;
}

}  // namespace widthkit
