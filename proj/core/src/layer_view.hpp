#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "widthkit/error.hpp"
#include "widthkit/layered.hpp"

namespace widthkit::detail {

/// Live gates of a layered circuit grouped by layer, plus the inputs each
/// layer reads.
struct LayerView {
  const LayeredCircuit& lc;
  std::vector<bool> live;
  int out_layer = -1;  // -1 when the output is a source node
  std::vector<std::vector<NodeId>> gates;
  std::vector<int> slot;  // node -> position in its layer's gate list
  std::vector<std::vector<NodeId>> guesses;    // guess nodes, ascending variable
  std::vector<std::vector<unsigned>> actuals;  // distinct actual variables, ascending
  std::vector<std::size_t> sizes;              // live gates excluding COPY

  explicit LayerView(const LayeredCircuit& l) : lc(l) {
    auto errs = check_layering(lc);
    if (!errs.empty()) throw InvalidCircuit("not a layered circuit: " + errs.front());
    const Circuit& c = lc.circuit;
    live = live_nodes(c);
    slot.assign(c.node_count(), -1);
    const NodeId o = c.output();
    if (!is_gate(c.nodes()[o].kind)) return;
    out_layer = lc.layer_of[o];
    const auto n = static_cast<std::size_t>(out_layer + 1);
    gates.assign(n, {});
    guesses.assign(n, {});
    actuals.assign(n, {});
    sizes.assign(n, 0);
    for (std::size_t l = 0; l < n; ++l) {
      for (NodeId g : lc.layers[l]) {
        if (!live[g]) continue;
        slot[g] = static_cast<int>(gates[l].size());
        gates[l].push_back(g);
        if (c.nodes()[g].kind != NodeKind::Copy) ++sizes[l];
        for (NodeId p : c.nodes()[g].fanin) {
          const Node& src = c.nodes()[p];
          if (src.kind == NodeKind::InputGuess)
            guesses[l].push_back(p);
          else if (src.kind == NodeKind::InputActual)
            actuals[l].push_back(src.var);
        }
      }
      auto by_var = [&](NodeId x, NodeId y) { return c.nodes()[x].var < c.nodes()[y].var; };
      std::sort(guesses[l].begin(), guesses[l].end(), by_var);
      guesses[l].erase(std::unique(guesses[l].begin(), guesses[l].end()), guesses[l].end());
      std::sort(actuals[l].begin(), actuals[l].end());
      actuals[l].erase(std::unique(actuals[l].begin(), actuals[l].end()), actuals[l].end());
    }
  }

  std::size_t size_between(int a, int b) const {
    std::size_t s = 0;
    for (int l = a; l <= b; ++l) s += sizes[static_cast<std::size_t>(l)];
    return s;
  }
  std::size_t guesses_between(int a, int b) const {
    std::size_t g = 0;
    for (int l = a; l <= b; ++l) g += guesses[static_cast<std::size_t>(l)].size();
    return g;
  }
};

}  // namespace widthkit::detail
