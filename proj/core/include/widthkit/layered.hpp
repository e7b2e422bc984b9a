#pragma once

#include <span>
#include <string>
#include <vector>

#include "widthkit/circuit.hpp"

namespace widthkit {

/// A circuit whose gates are partitioned into layers 0..depth-1.
///
/// Invariants (see check_layering):
///  - every gate-to-gate edge goes from layer L to layer L+1;
///  - input and constant nodes belong to no layer;
///  - all consumers of one input node (actual or guess) sit in a single layer,
///    so the number of layers reading a variable never exceeds its read count.
struct LayeredCircuit {
  Circuit circuit;
  std::vector<std::vector<NodeId>> layers;
  std::vector<int> layer_of;  // -1 for sources

  std::size_t depth() const noexcept { return layers.size(); }
  /// Largest layer, COPY gates included.
  std::size_t width() const noexcept;
  /// Gates excluding COPY.
  std::size_t size() const noexcept { return circuit.size(); }
};

/// Canonical layering: each gate sits at its longest gate-path distance from
/// the sources. Edges skipping layers get COPY chains shared per source gate;
/// guess inputs read in several layers are carried by COPY from the first
/// consuming layer; actual input nodes are split per consuming layer.
LayeredCircuit layerize(const Circuit& c);

/// Same as layerize but with an explicit layer per node (entries for sources
/// are ignored). Requires layer[q] > layer[p] for every gate edge p -> q.
LayeredCircuit layerize_with(const Circuit& c, std::span<const int> layer);

/// Empty iff `lc` satisfies the LayeredCircuit invariants and its circuit
/// passes validate().
std::vector<std::string> check_layering(const LayeredCircuit& lc);

inline std::size_t size(const Circuit& c) { return c.size(); }
inline std::size_t width(const LayeredCircuit& lc) { return lc.width(); }

}  // namespace widthkit
