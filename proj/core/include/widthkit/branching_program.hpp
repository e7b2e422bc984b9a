#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "widthkit/circuit.hpp"
#include "widthkit/truth_table.hpp"

namespace widthkit {

using BpNodeId = std::uint32_t;

struct BpNode {
  bool sink = false;
  std::uint32_t var = 0;  // inner nodes
  bool value = false;     // sinks

  friend bool operator==(const BpNode&, const BpNode&) = default;
};

struct BpEdge {
  BpNodeId from = 0;
  bool label = false;
  BpNodeId to = 0;

  friend bool operator==(const BpEdge&, const BpEdge&) = default;
};

/// Nondeterministic branching program over n variables. An inner node may
/// carry several edges with the same label, or none for one label. Edges are
/// kept in insertion order so that serialization round-trips exactly.
class BranchingProgram {
 public:
  BranchingProgram() = default;
  explicit BranchingProgram(unsigned n_vars) : n_vars_(n_vars) {}

  unsigned n_vars() const noexcept { return n_vars_; }
  const std::vector<BpNode>& nodes() const noexcept { return nodes_; }
  const std::vector<BpEdge>& edges() const noexcept { return edges_; }
  BpNodeId start() const noexcept { return start_; }
  void set_start(BpNodeId s) noexcept { start_ = s; }
  /// Number of nodes.
  std::size_t size() const noexcept { return nodes_.size(); }

  BpNodeId add_var(unsigned var);
  BpNodeId add_sink(bool value);
  void add_edge(BpNodeId from, bool label, BpNodeId to);

  /// Out-edge index lists, one per node, in insertion order.
  std::vector<std::vector<std::uint32_t>> out_edges() const;

  friend bool operator==(const BranchingProgram&, const BranchingProgram&) = default;

 private:
  unsigned n_vars_ = 0;
  std::vector<BpNode> nodes_;
  std::vector<BpEdge> edges_;
  BpNodeId start_ = 0;
};

/// Violation messages; empty iff `bp` is a well-formed DAG whose sinks have
/// no out-edges and whose inner nodes have at least one.
std::vector<std::string> validate(const BranchingProgram& bp);
/// Throws InvalidCircuit listing the violations.
void require_valid(const BranchingProgram& bp);

/// Node ids in an order where every edge goes forward. Throws on a cycle.
std::vector<BpNodeId> topological_order(const BranchingProgram& bp);

/// 1 iff a label-consistent path from the start reaches a 1-sink. Throws
/// MissingVariable when the search reaches a node whose variable `a` leaves
/// unset.
bool bp_eval(const BranchingProgram& bp, const Assignment& a);

/// Largest number of `var`-labeled nodes on any path from the start,
/// label consistency ignored.
unsigned read_multiplicity(const BranchingProgram& bp, unsigned var);
std::vector<unsigned> read_multiplicities(const BranchingProgram& bp);
bool is_syntactic_read_k(const BranchingProgram& bp, unsigned k);

TruthTable bp_truth_table(const BranchingProgram& bp, unsigned arity_limit = kDefaultArityLimit,
                          unsigned jobs = 1);

/// Keeps only nodes reachable from the start that can reach a 1-sink; a
/// program accepting nothing becomes a single 0-sink.
BranchingProgram trim(const BranchingProgram& bp);

}  // namespace widthkit
