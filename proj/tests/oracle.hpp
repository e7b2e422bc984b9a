#pragma once

// Reference semantics written independently of the library: node-at-a-time
// bool evaluation, explicit guess enumeration, and path enumeration over
// branching programs.

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "widthkit/branching_program.hpp"
#include "widthkit/circuit.hpp"

namespace oracle {

using widthkit::BranchingProgram;
using widthkit::Circuit;
using widthkit::NodeKind;

inline bool eval(const Circuit& c, std::uint64_t x, std::uint64_t y) {
  std::vector<bool> v(c.node_count());
  for (std::size_t i = 0; i < c.node_count(); ++i) {
    const auto& n = c.nodes()[i];
    auto in = [&](int k) { return static_cast<bool>(v[n.fanin[k]]); };
    switch (n.kind) {
      case NodeKind::InputActual: v[i] = (x >> n.var) & 1u; break;
      case NodeKind::InputGuess: v[i] = (y >> n.var) & 1u; break;
      case NodeKind::Const: v[i] = n.value; break;
      case NodeKind::And: v[i] = in(0) && in(1); break;
      case NodeKind::Or: v[i] = in(0) || in(1); break;
      case NodeKind::Not: v[i] = !in(0); break;
      case NodeKind::Copy: v[i] = in(0); break;
      case NodeKind::U2: {
        const bool p = in(0) ^ n.u2.a, q = in(1) ^ n.u2.b;
        v[i] = (p && q) ^ n.u2.c;
        break;
      }
    }
  }
  return v[c.output()];
}

inline bool eval_nd(const Circuit& c, std::uint64_t x) {
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << c.n_guess()); ++y)
    if (eval(c, x, y)) return true;
  return false;
}

inline std::vector<bool> table(const Circuit& c) {
  std::vector<bool> t(std::uint64_t{1} << c.n_actual());
  for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = eval_nd(c, x);
  return t;
}

/// Depth-first search over consistent paths.
inline bool bp_eval(const BranchingProgram& bp, std::uint64_t x) {
  std::function<bool(widthkit::BpNodeId)> go = [&](widthkit::BpNodeId u) {
    const auto& n = bp.nodes()[u];
    if (n.sink) return n.value;
    const bool bit = (x >> n.var) & 1u;
    for (const auto& e : bp.edges())
      if (e.from == u && e.label == bit && go(e.to)) return true;
    return false;
  };
  return go(bp.start());
}

inline std::vector<bool> bp_table(const BranchingProgram& bp) {
  std::vector<bool> t(std::uint64_t{1} << bp.n_vars());
  for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = bp_eval(bp, x);
  return t;
}

/// Largest number of `var` nodes on any start path, by enumerating paths.
inline unsigned path_reads(const BranchingProgram& bp, unsigned var) {
  std::function<unsigned(widthkit::BpNodeId)> go = [&](widthkit::BpNodeId u) {
    const auto& n = bp.nodes()[u];
    unsigned best = 0;
    for (const auto& e : bp.edges())
      if (e.from == u) best = std::max(best, go(e.to));
    return best + (!n.sink && n.var == var ? 1u : 0u);
  };
  return go(bp.start());
}

inline bool parity(std::uint64_t x) { return std::popcount(x) & 1; }

template <class Table>
std::vector<bool> as_bits(const Table& t) {
  std::vector<bool> out(t.size());
  for (std::uint64_t v = 0; v < t.size(); ++v) out[v] = t.get(v);
  return out;
}

}  // namespace oracle
