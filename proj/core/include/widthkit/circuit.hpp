#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "widthkit/truth_table.hpp"

namespace widthkit {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = ~NodeId{0};

enum class Basis : std::uint8_t { AndOrNot, U2 };

enum class NodeKind : std::uint8_t {
  InputActual,
  InputGuess,
  Const,
  And,
  Or,
  Not,
  U2,
  Copy,
};

/// Parameters of a U2 gate computing ((x ^ a) & (y ^ b)) ^ c.
struct U2Params {
  bool a = false;
  bool b = false;
  bool c = false;

  bool apply(bool x, bool y) const noexcept { return ((x != a) && (y != b)) != c; }
  std::uint64_t apply(std::uint64_t x, std::uint64_t y) const noexcept {
    const std::uint64_t ma = a ? ~std::uint64_t{0} : 0;
    const std::uint64_t mb = b ? ~std::uint64_t{0} : 0;
    const std::uint64_t mc = c ? ~std::uint64_t{0} : 0;
    return ((x ^ ma) & (y ^ mb)) ^ mc;
  }
  friend bool operator==(const U2Params&, const U2Params&) = default;
};

inline constexpr U2Params kU2And{false, false, false};
inline constexpr U2Params kU2Or{true, true, true};

struct Node {
  NodeKind kind = NodeKind::Const;
  std::uint32_t var = 0;  // InputActual / InputGuess
  bool value = false;     // Const
  U2Params u2{};          // U2
  std::vector<NodeId> fanin;

  friend bool operator==(const Node&, const Node&) = default;
};

constexpr bool is_gate(NodeKind k) noexcept {
  return k != NodeKind::InputActual && k != NodeKind::InputGuess && k != NodeKind::Const;
}
constexpr bool is_source(NodeKind k) noexcept { return !is_gate(k); }
constexpr unsigned expected_fanin(NodeKind k) noexcept {
  switch (k) {
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::U2:
      return 2;
    case NodeKind::Not:
    case NodeKind::Copy:
      return 1;
    default:
      return 0;
  }
}
const char* to_string(NodeKind k) noexcept;
const char* to_string(Basis b) noexcept;

/// Single-output gate DAG stored in topological order.
///
/// Nodes are append-only. The `add_*` helpers never check invariants except
/// `add_u2`, which folds degenerate U2 functions (constant or repeated
/// operands) into constants, wires, or a NOT gate. Use validate() for a full
/// check of externally produced circuits.
class Circuit {
 public:
  Circuit() = default;
  Circuit(Basis basis, unsigned n_actual, unsigned n_guess = 0)
      : basis_(basis), n_actual_(n_actual), n_guess_(n_guess) {}

  Basis basis() const noexcept { return basis_; }
  unsigned n_actual() const noexcept { return n_actual_; }
  unsigned n_guess() const noexcept { return n_guess_; }
  void set_n_guess(unsigned g) noexcept { n_guess_ = g; }

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  NodeId output() const noexcept { return output_; }
  void set_output(NodeId id) noexcept { output_ = id; }

  NodeId add_raw(Node n);
  NodeId add_input(unsigned var);
  NodeId add_guess(unsigned var);
  /// Constants are shared: one node per value.
  NodeId add_const(bool value);
  NodeId add_and(NodeId p, NodeId q);
  NodeId add_or(NodeId p, NodeId q);
  NodeId add_not(NodeId p);
  NodeId add_copy(NodeId p);
  NodeId add_u2(U2Params f, NodeId p, NodeId q);
  /// Basis-appropriate two-input AND/OR.
  NodeId add_and2(NodeId p, NodeId q);
  NodeId add_or2(NodeId p, NodeId q);

  /// Number of gates, COPY gates excluded.
  std::size_t size() const noexcept;
  std::size_t copy_count() const noexcept;

  friend bool operator==(const Circuit& l, const Circuit& r) {
    return l.basis_ == r.basis_ && l.n_actual_ == r.n_actual_ && l.n_guess_ == r.n_guess_ &&
           l.output_ == r.output_ && l.nodes_ == r.nodes_;
  }

 private:
  Basis basis_ = Basis::AndOrNot;
  unsigned n_actual_ = 0;
  unsigned n_guess_ = 0;
  std::vector<Node> nodes_;
  NodeId output_ = kNoNode;
  NodeId const_[2] = {kNoNode, kNoNode};
};

using NDCircuit = Circuit;

struct Violation {
  enum class Code {
    Topology,
    FanIn,
    GuessMultiplicity,
    DegenerateU2,
    Basis,
    VariableRange,
    Output,
  };
  Code code;
  NodeId node;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool has(Violation::Code c) const noexcept;
  std::string to_string() const;
};

const char* to_string(Violation::Code c) noexcept;

ValidationReport validate(const Circuit& c);
/// Throws InvalidCircuit carrying the report text.
void require_valid(const Circuit& c);

/// Partial or total map from actual and guess variables to bits.
class Assignment {
 public:
  Assignment() = default;
  Assignment(unsigned n_actual, unsigned n_guess) : actual_(n_actual, -1), guess_(n_guess, -1) {}

  /// Total assignment of the actual inputs from the bits of `valuation`.
  static Assignment from_valuation(unsigned n_actual, std::uint64_t valuation, unsigned n_guess = 0,
                                   std::uint64_t guess_valuation = 0);

  unsigned n_actual() const noexcept { return static_cast<unsigned>(actual_.size()); }
  unsigned n_guess() const noexcept { return static_cast<unsigned>(guess_.size()); }

  void set_actual(unsigned i, bool b);
  void set_guess(unsigned j, bool b);
  void unset_actual(unsigned i);
  std::optional<bool> actual(unsigned i) const;
  std::optional<bool> guess(unsigned j) const;

  bool actual_total() const noexcept;
  std::size_t assigned_actual_count() const noexcept;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::int8_t> actual_;
  std::vector<std::int8_t> guess_;
};

/// Gate semantics on 64 valuations at once. `actual` and `guess` hold one
/// word per variable.
std::uint64_t eval_words(const Circuit& c, std::span<const std::uint64_t> actual,
                         std::span<const std::uint64_t> guess);

/// Guess inputs are treated as ordinary inputs and must be assigned.
bool eval_det(const Circuit& c, const Assignment& a);

/// 1 iff some setting of the guess inputs makes the output 1.
bool eval_nd(const Circuit& c, const Assignment& x);

/// Nondeterministic truth table over the actual inputs. `jobs > 1` splits the
/// valuation space across threads; the result does not depend on `jobs`.
TruthTable truth_table(const Circuit& c, unsigned arity_limit = kDefaultArityLimit,
                       unsigned jobs = 1);

/// Number of nodes labeled by actual variable `var`.
unsigned read_count(const Circuit& c, unsigned var);
std::vector<unsigned> read_counts(const Circuit& c);
bool is_read_k(const Circuit& c, unsigned k);
/// Number of nodes labeled by any actual variable.
std::size_t actual_input_node_count(const Circuit& c);

/// Marks nodes with a path to the output.
std::vector<bool> live_nodes(const Circuit& c);
/// Copy of `c` without nodes that cannot reach the output.
Circuit remove_dead(const Circuit& c);

}  // namespace widthkit
