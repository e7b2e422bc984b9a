#pragma once

#include <map>
#include <utility>
#include <vector>

#include "widthkit/circuit.hpp"
#include "widthkit/layered.hpp"

namespace widthkit {

/// Emits a deterministic circuit gate by gate at explicit layers.
///
/// Wires are literals: a constant, an actual input or a gate output, each
/// possibly negated. Negation is free in the U2 basis (absorbed into the
/// consuming gate); in the AND/OR/NOT basis a consuming gate at layer L
/// materializes it as a NOT gate at L-1. Every operation folds constants,
/// repeated operands and projections before placing a gate, so a folded gate
/// never occupies a layer slot.
class ScheduledBuilder {
 public:
  struct Wire {
    enum class Kind : std::uint8_t { Const, Var, Gate };
    Kind kind = Kind::Const;
    bool value = false;  // Const
    unsigned var = 0;    // Var
    NodeId id = kNoNode; // Gate
    bool neg = false;    // Var, Gate

    static Wire constant(bool b) { return Wire{Kind::Const, b, 0, kNoNode, false}; }
    static Wire input(unsigned v) { return Wire{Kind::Var, false, v, kNoNode, false}; }
    bool is_const() const noexcept { return kind == Kind::Const; }
    bool is_const(bool b) const noexcept { return kind == Kind::Const && value == b; }
    bool same_source(const Wire& o) const noexcept {
      return kind == o.kind && kind != Kind::Const && var == o.var && id == o.id;
    }
    Wire operator!() const {
      Wire w = *this;
      if (kind == Kind::Const)
        w.value = !value;
      else
        w.neg = !neg;
      return w;
    }
  };

  ScheduledBuilder(Basis basis, unsigned n_actual);

  Basis basis() const noexcept { return basis_; }
  /// -1 for constants and inputs.
  int layer_of(const Wire& w) const;
  /// Last layer holding a gate, -1 when none.
  int last_layer() const noexcept { return last_layer_; }

  /// ((x ^ a) & (y ^ b)) ^ c placed at layer L. In the AND/OR/NOT basis it is
  /// realized as one AND or OR gate.
  Wire u2(U2Params f, Wire x, Wire y, int L);
  Wire and2(Wire x, Wire y, int L) { return u2(kU2And, x, y, L); }
  Wire or2(Wire x, Wire y, int L) { return u2(kU2Or, x, y, L); }
  /// NOT placed at layer L in the AND/OR/NOT basis; a free flip in U2.
  Wire not1(Wire x, int L);

  /// Non-COPY gates emitted so far, dead ones included.
  std::size_t gate_count() const noexcept { return c_.size(); }

  /// Drops dead gates, removes empty layers and inserts COPY chains.
  LayeredCircuit finish(Wire out);

 private:
  NodeId node_of(const Wire& w, int L);
  NodeId input_node(unsigned var);
  NodeId place(Node n, int L);

  Basis basis_;
  Circuit c_;
  std::vector<int> layer_;
  std::map<unsigned, NodeId> inputs_;
  std::map<std::pair<std::uint64_t, int>, NodeId> negated_;  // (source, layer) -> NOT
  int last_layer_ = -1;
};

}  // namespace widthkit
