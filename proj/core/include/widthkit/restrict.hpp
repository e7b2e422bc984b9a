#pragma once

#include <vector>

#include "widthkit/circuit.hpp"
#include "widthkit/layered.hpp"

namespace widthkit {

/// What restriction did to an original gate.
enum class Fate : std::uint8_t {
  Kept,       // survives as a gate
  Constant,   // blocked or constant-propagated
  Forwarded,  // became a wire to another node (projection, double negation)
  Dead,       // simplified but no longer reaches the output
};

const char* to_string(Fate f) noexcept;

/// Restricted circuit plus provenance: per new node the original gate it
/// stands for (kNoNode for sources), and per original node its fate
/// (meaningful for gates only).
struct TracedCircuit {
  Circuit circuit;
  std::vector<NodeId> origin;
  std::vector<Fate> fate;
};

/// Fixes the assigned actual variables and simplifies: constant propagation,
/// blocked-gate collapse, projection forwarding, double-negation removal and
/// dead-node removal. In the U2 basis negations are absorbed into consumer
/// gates; a NOT gate survives only when the output itself is a negated input
/// or a shared gate. The result never has more gates than `c`.
///
/// Throws Error if `a` assigns a guess variable.
TracedCircuit restrict_traced(const Circuit& c, const Assignment& a);
Circuit restrict(const Circuit& c, const Assignment& a);

/// Schedule-preserving restriction: every surviving gate stays in its layer,
/// and gates that collapse onto a single operand become COPY (or NOT) gates in
/// place. Width and per-variable read counts never increase.
LayeredCircuit restrict(const LayeredCircuit& lc, const Assignment& a);

}  // namespace widthkit
