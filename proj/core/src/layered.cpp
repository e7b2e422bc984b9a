#include "widthkit/layered.hpp"

#include <algorithm>
#include <map>

#include "widthkit/error.hpp"

namespace widthkit {

std::size_t LayeredCircuit::width() const noexcept {
  std::size_t w = 0;
  for (const auto& l : layers) w = std::max(w, l.size());
  return w;
}

LayeredCircuit layerize(const Circuit& c) {
  require_valid(c);
  std::vector<int> layer(c.node_count(), -1);
  for (NodeId id = 0; id < c.node_count(); ++id) {
    const Node& n = c.nodes()[id];
    if (!is_gate(n.kind)) continue;
    int d = 0;
    for (NodeId p : n.fanin) d = std::max(d, layer[p] + 1);
    layer[id] = d;
  }
  return layerize_with(c, layer);
}

LayeredCircuit layerize_with(const Circuit& c, std::span<const int> layer) {
  require_valid(c);
  const auto& nodes = c.nodes();
  if (layer.size() != nodes.size()) throw InvalidCircuit("layer vector has wrong length");

  int depth = 0;
  for (NodeId id = 0; id < nodes.size(); ++id) {
    if (!is_gate(nodes[id].kind)) continue;
    if (layer[id] < 0) throw InvalidCircuit("gate " + std::to_string(id) + " has no layer");
    for (NodeId p : nodes[id].fanin)
      if (is_gate(nodes[p].kind) && layer[p] >= layer[id])
        throw InvalidCircuit("gate " + std::to_string(id) + " is not after its operand " +
                             std::to_string(p));
    depth = std::max(depth, layer[id] + 1);
  }

  // Layers in which each node is consumed.
  std::vector<int> max_use(nodes.size(), -1), min_use(nodes.size(), -1);
  for (NodeId id = 0; id < nodes.size(); ++id) {
    if (!is_gate(nodes[id].kind)) continue;
    for (NodeId p : nodes[id].fanin) {
      max_use[p] = std::max(max_use[p], layer[id]);
      min_use[p] = min_use[p] < 0 ? layer[id] : std::min(min_use[p], layer[id]);
    }
  }

  LayeredCircuit out;
  out.circuit = Circuit(c.basis(), c.n_actual(), c.n_guess());
  Circuit& nc = out.circuit;
  out.layers.assign(static_cast<std::size_t>(depth), {});

  std::vector<NodeId> remap(nodes.size(), kNoNode);
  // Per source gate (or guess), the COPY carrying it into layer L.
  std::vector<std::map<int, NodeId>> carried(nodes.size());
  std::map<std::pair<unsigned, int>, NodeId> input_at;  // (var, layer) -> node
  std::vector<int> new_layer;

  auto push_layer = [&](NodeId id, int l) {
    if (new_layer.size() <= id) new_layer.resize(id + 1, -1);
    new_layer[id] = l;
    if (l >= 0) out.layers[static_cast<std::size_t>(l)].push_back(id);
  };

  for (NodeId id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    if (n.kind == NodeKind::Const) {
      remap[id] = nc.add_const(n.value);
      push_layer(remap[id], -1);
    } else if (n.kind == NodeKind::InputGuess && (max_use[id] >= 0 || id == c.output())) {
      remap[id] = nc.add_raw(n);
      push_layer(remap[id], -1);
    }
  }

  // Operand of a gate at layer l reading original node p.
  auto operand = [&](NodeId p, int l) -> NodeId {
    const Node& src = nodes[p];
    if (src.kind == NodeKind::InputActual) {
      auto key = std::make_pair(src.var, l);
      auto it = input_at.find(key);
      if (it != input_at.end()) return it->second;
      NodeId nid = nc.add_input(src.var);
      push_layer(nid, -1);
      input_at.emplace(key, nid);
      return nid;
    }
    if (src.kind == NodeKind::Const) return remap[p];
    const int origin = src.kind == NodeKind::InputGuess ? min_use[p] - 1 : layer[p];
    if (l == origin + 1) return remap[p];
    return carried[p].at(l - 1);
  };

  // Sources carried into each layer, and the gates placed in it.
  std::vector<std::vector<NodeId>> entering(static_cast<std::size_t>(depth));
  std::vector<std::vector<NodeId>> placed(static_cast<std::size_t>(depth));
  for (NodeId p = 0; p < nodes.size(); ++p) {
    const Node& src = nodes[p];
    int origin;
    if (is_gate(src.kind)) {
      origin = layer[p];
      placed[static_cast<std::size_t>(origin)].push_back(p);
    } else if (src.kind == NodeKind::InputGuess && min_use[p] >= 0) {
      origin = min_use[p] - 1;
    } else {
      continue;
    }
    for (int l = origin + 1; l < max_use[p]; ++l) entering[static_cast<std::size_t>(l)].push_back(p);
  }

  for (int l = 0; l < depth; ++l) {
    for (NodeId p : entering[static_cast<std::size_t>(l)]) {
      const int origin = is_gate(nodes[p].kind) ? layer[p] : min_use[p] - 1;
      NodeId prev = (l == origin + 1) ? remap[p] : carried[p].at(l - 1);
      NodeId cp = nc.add_copy(prev);
      push_layer(cp, l);
      carried[p][l] = cp;
    }
    for (NodeId id : placed[static_cast<std::size_t>(l)]) {
      Node g = nodes[id];
      const std::vector<NodeId> orig = g.fanin;
      for (auto& p : g.fanin) p = operand(p, l);
      // Two distinct nodes of one variable stay distinct operands.
      if (g.fanin.size() == 2 && g.fanin[0] == g.fanin[1] && orig[0] != orig[1]) {
        g.fanin[1] = nc.add_input(nodes[orig[1]].var);
        push_layer(g.fanin[1], -1);
      }
      remap[id] = nc.add_raw(std::move(g));
      push_layer(remap[id], l);
    }
  }

  const NodeId o = c.output();
  if (nodes[o].kind == NodeKind::InputActual) {
    remap[o] = nc.add_input(nodes[o].var);
    push_layer(remap[o], -1);
  }
  nc.set_output(remap[o]);
  new_layer.resize(nc.node_count(), -1);
  out.layer_of = std::move(new_layer);
  return out;
}

std::vector<std::string> check_layering(const LayeredCircuit& lc) {
  std::vector<std::string> errs;
  const Circuit& c = lc.circuit;
  auto rep = validate(c);
  for (const auto& v : rep.violations) errs.push_back(to_string(v.code) + (": " + v.message));
  if (lc.layer_of.size() != c.node_count()) {
    errs.push_back("layer_of has wrong length");
    return errs;
  }
  std::vector<int> seen(c.node_count(), -1);
  for (std::size_t l = 0; l < lc.layers.size(); ++l) {
    for (NodeId id : lc.layers[l]) {
      if (id >= c.node_count()) {
        errs.push_back("layer member out of range");
        continue;
      }
      if (seen[id] >= 0) errs.push_back("node " + std::to_string(id) + " in two layers");
      seen[id] = static_cast<int>(l);
      if (!is_gate(c.nodes()[id].kind)) errs.push_back("source node inside a layer");
    }
  }
  std::vector<int> use_layer(c.node_count(), -2);
  for (NodeId id = 0; id < c.node_count(); ++id) {
    const Node& n = c.nodes()[id];
    if (!is_gate(n.kind)) {
      if (lc.layer_of[id] != -1) errs.push_back("source " + std::to_string(id) + " has a layer");
      continue;
    }
    if (seen[id] < 0 || seen[id] != lc.layer_of[id]) {
      errs.push_back("gate " + std::to_string(id) + " layer mismatch");
      continue;
    }
    for (NodeId p : n.fanin) {
      if (p >= c.node_count()) continue;
      const Node& src = c.nodes()[p];
      if (is_gate(src.kind)) {
        if (lc.layer_of[p] + 1 != lc.layer_of[id])
          errs.push_back("edge " + std::to_string(p) + "->" + std::to_string(id) +
                         " is not between adjacent layers");
      } else if (src.kind != NodeKind::Const) {
        if (use_layer[p] == -2)
          use_layer[p] = lc.layer_of[id];
        else if (use_layer[p] != lc.layer_of[id])
          errs.push_back("input node " + std::to_string(p) + " is read in several layers");
      }
    }
  }
  return errs;
}

}  // namespace widthkit
