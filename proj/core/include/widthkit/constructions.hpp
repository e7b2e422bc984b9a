#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "widthkit/circuit.hpp"
#include "widthkit/restrict.hpp"
#include "widthkit/truth_table.hpp"

namespace widthkit {

/// Total function on `arity` <= 64 variables; variable i is bit i of the
/// valuation.
class BooleanFunction {
 public:
  using Eval = std::function<bool(std::uint64_t)>;

  BooleanFunction(unsigned arity, Eval eval) : arity_(arity), eval_(std::move(eval)) {}
  static BooleanFunction from_table(TruthTable t);

  unsigned arity() const noexcept { return arity_; }
  bool operator()(std::uint64_t valuation) const { return eval_(valuation); }
  /// Cached after the first call.
  const TruthTable& table(unsigned arity_limit = kDefaultArityLimit) const;

 private:
  unsigned arity_;
  Eval eval_;
  mutable std::optional<TruthTable> table_;
};

BooleanFunction parity_function(unsigned n);
/// OR over the sqrt(n) consecutive blocks of Parity of the block.
BooleanFunction or_of_parities_function(unsigned n);

/// Chain of three-gate blocks (p & !q) | (!p & q) over U2; 3(n-1) gates.
/// Every gate reads its own input node, so each variable is read twice for
/// n >= 2. Throws Error for n = 0.
Circuit build_parity(unsigned n);

/// XOR of two existing nodes as three U2 gates.
NodeId add_xor(Circuit& c, NodeId p, NodeId q);

/// A gate whose operands are two actual-input nodes and an assignment to
/// one of them that makes it constant.
struct BlockingAssignment {
  unsigned var = 0;
  bool value = false;
  NodeId gate = kNoNode;
};

/// Lowest gate id first, then lowest variable, then 0 before 1. Accepts U2,
/// AND and OR gates. Throws Error when no such gate exists.
BlockingAssignment find_blocking_assignment(const Circuit& c);

struct EliminationTrace {
  unsigned var = 0;
  bool value = false;
  /// Original gates absent from the result, ascending, with their fate.
  std::vector<NodeId> eliminated;
  std::vector<Fate> fate;
  std::size_t count = 0;
};

struct Elimination {
  Circuit circuit;
  EliminationTrace trace;
};

/// restrict(c, var := value) with the gates it removed. Throws Error for an
/// unknown variable.
Elimination gate_eliminate(const Circuit& c, unsigned var, bool value);

/// n = m^2 inputs: OR of m parity blocks, m * 3(m-1) + (m-1) gates.
/// Throws Error when n is not a perfect square.
Circuit build_or_of_parities_det(unsigned n);

/// Selector with m outputs and ceil(log2 m) guess inputs: when the guesses
/// encode block i < m in binary, output j carries x_{m*i+j+1}; for any other
/// guess value every output is 0.
struct SelectorBundle {
  Circuit circuit;  // output() is outputs.front()
  std::vector<NodeId> outputs;
  unsigned block_size = 0;
};
SelectorBundle build_selector(unsigned n);

/// Selector feeding one parity block. Throws Error unless n = m^2 with m >= 2.
Circuit build_nd_selector_f(unsigned n);

/// Pinned constant c of size(build_nd_selector_f(n)) <= 2n + c sqrt(n) log2(n).
inline constexpr double kSelectorSizeC = 1.0;

/// f(x_1..x_2n, z_1..z_2n): 0 unless exactly n of the z are 1, in which
/// case `inner` of the selected x in ascending order. Variables 0..2n-1 are
/// x, 2n..4n-1 are z.
BooleanFunction compose_selector_function(const BooleanFunction& inner);

/// Exhaustive search over U2-basis circuits on `arity` inputs with at most
/// `max_gates` gates (U2 and NOT, non-degenerate, any node as output).
struct EnumerationResult {
  std::uint64_t circuits = 0;
  std::uint64_t matching = 0;
};
EnumerationResult enumerate_small_circuits(const TruthTable& target, unsigned max_gates);

}  // namespace widthkit
