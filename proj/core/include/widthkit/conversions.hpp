#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "widthkit/branching_program.hpp"
#include "widthkit/layered.hpp"

namespace widthkit {

/// Measured parameters of one conversion and the bound it is checked
/// against. `bound_value` and `bound_ok` are always recomputed from the
/// stored measurements by finalize().
struct ConversionReport {
  std::string pass;
  std::size_t s_in = 0, w_in = 0;
  std::size_t s_out = 0, w_out = 0;
  unsigned depth = 0;
  double bound_value = 0;
  bool bound_ok = false;
  /// determinize: C with log2(s_out) = C (w_in + log2 s_in) log2 s_in.
  /// bp-to-circuit: w_out / ceil(log2 s_in).
  double fitted = 0;
  /// determinize only: width of a base-case enumeration, w_in + 1.
  std::size_t w_base = 0;

  static std::string csv_header();
  std::string csv_row() const;
};

struct BpConversion {
  BranchingProgram bp;
  ConversionReport report;
};

/// Layered ND circuit to a nondeterministic branching program of size at
/// most 4^w s. Nodes are the reachable (layer, read position, residual gate
/// functions) triples; a layer's variables are read once each, guesses
/// first, then actual inputs in ascending order. Guess reads become
/// duplicate-label forks. Unproductive nodes are trimmed.
BpConversion circuit_to_bp(const LayeredCircuit& lc);

/// Split of layers [0, layer] | [layer+1, last] and the gate count of each
/// side (COPY excluded).
struct Cut {
  int layer = -1;
  std::size_t left = 0;
  std::size_t right = 0;
};

/// Scans left to right for the first prefix holding at least half of the
/// gates and keeps that layer or the one before, whichever balances better.
/// Empty when the circuit has fewer than two live layers.
std::optional<Cut> find_cut(const LayeredCircuit& lc);

struct SplitResult {
  LayeredCircuit circuit;
  Cut cut;
  /// Cut states enumerated: 2^(live gates in the cut layer).
  std::size_t cut_states = 0;
};

/// One split-and-enumerate level: OR over cut states s of
/// [left half reaches s] AND [right half accepts from s], each half
/// determinized by guess enumeration. Throws Error for a cut outside
/// [0, output layer - 1].
SplitResult split_determinize(const LayeredCircuit& lc, int cut_layer);

inline constexpr std::size_t kDefaultBaseSize = 8;

struct Determinized {
  LayeredCircuit circuit;
  ConversionReport report;
};

/// Recursive split-and-enumerate down to segments of at most `base_size`
/// gates, a single layer, or no guesses. The result has no guess inputs,
/// and its width is at most (w + 1) + 2 * report.depth.
Determinized determinize(const LayeredCircuit& lc, std::size_t base_size = kDefaultBaseSize);

/// Width and size constants checked by bp_to_width_circuit:
/// width <= kBpWidthC1 * ceil(log2 s) and size <= 2^(kBpSizeC2 * ceil(log2 s)^2).
inline constexpr double kBpWidthC1 = 4.0;
inline constexpr double kBpSizeC2 = 1.0;

struct WidthCircuit {
  LayeredCircuit circuit;
  ConversionReport report;
};

/// Deterministic layered circuit deciding reachability of a 1-sink by
/// divide and conquer over the topological order of the nodes.
WidthCircuit bp_to_width_circuit(const BranchingProgram& bp);

}  // namespace widthkit
