#include "widthkit/restrict.hpp"

#include <algorithm>
#include <unordered_map>

#include "widthkit/error.hpp"

namespace widthkit {

namespace {

void reject_guess_assignment(const Assignment& a) {
  for (unsigned j = 0; j < a.n_guess(); ++j)
    if (a.guess(j)) throw Error("guess variables cannot be restricted (y" + std::to_string(j + 1) + ")");
}

struct Lit {
  bool is_const = true;
  bool value = false;  // when is_const
  NodeId id = kNoNode;
  bool neg = false;

  static Lit constant(bool b) { return {true, b, kNoNode, false}; }
  static Lit node(NodeId id, bool neg = false) { return {false, false, id, neg}; }
  Lit operator!() const { return is_const ? constant(!value) : node(id, !neg); }
  Lit flip(bool f) const { return f ? !*this : *this; }
  bool same_node(const Lit& o) const { return !is_const && !o.is_const && id == o.id; }
};

// Drops unreachable nodes while carrying provenance along.
TracedCircuit compact(const Circuit& t, const std::vector<NodeId>& origin) {
  auto live = live_nodes(t);
  TracedCircuit out{Circuit(t.basis(), t.n_actual(), t.n_guess()), {}, {}};
  std::vector<NodeId> remap(t.node_count(), kNoNode);
  for (NodeId id = 0; id < t.node_count(); ++id) {
    if (!live[id]) continue;
    Node n = t.nodes()[id];
    for (auto& p : n.fanin) p = remap[p];
    remap[id] = n.kind == NodeKind::Const ? out.circuit.add_const(n.value)
                                          : out.circuit.add_raw(std::move(n));
    if (out.origin.size() <= remap[id]) out.origin.resize(remap[id] + 1, kNoNode);
    out.origin[remap[id]] = id < origin.size() ? origin[id] : kNoNode;
  }
  out.circuit.set_output(remap.at(t.output()));
  out.origin.resize(out.circuit.node_count(), kNoNode);
  return out;
}

}  // namespace

const char* to_string(Fate f) noexcept {
  switch (f) {
    case Fate::Kept: return "kept";
    case Fate::Constant: return "constant";
    case Fate::Forwarded: return "forwarded";
    case Fate::Dead: return "dead";
  }
  return "?";
}

TracedCircuit restrict_traced(const Circuit& c, const Assignment& a) {
  require_valid(c);
  reject_guess_assignment(a);
  const auto& nodes = c.nodes();
  const bool u2 = c.basis() == Basis::U2;

  Circuit t(c.basis(), c.n_actual(), c.n_guess());
  std::vector<NodeId> origin;
  auto add = [&](Node n, NodeId from) {
    NodeId id = t.add_raw(std::move(n));
    origin.resize(t.node_count(), kNoNode);
    origin[id] = from;
    return id;
  };

  std::vector<Lit> lit(nodes.size());
  std::unordered_map<NodeId, NodeId> neg_origin;  // temp node -> NOT gate that negated it
  std::unordered_map<NodeId, NodeId> not_cache;

  auto materialize = [&](const Lit& l, NodeId fallback_origin) -> NodeId {
    if (l.is_const) return t.add_const(l.value);
    if (!l.neg) return l.id;
    auto it = not_cache.find(l.id);
    if (it != not_cache.end()) return it->second;
    auto no = neg_origin.find(l.id);
    Node n;
    n.kind = NodeKind::Not;
    n.fanin = {l.id};
    NodeId id = add(std::move(n), no != neg_origin.end() ? no->second : fallback_origin);
    not_cache.emplace(l.id, id);
    return id;
  };

  for (NodeId id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    switch (n.kind) {
      case NodeKind::InputActual: {
        auto v = n.var < a.n_actual() ? a.actual(n.var) : std::nullopt;
        lit[id] = v ? Lit::constant(*v) : Lit::node(add(n, kNoNode));
        break;
      }
      case NodeKind::InputGuess:
        lit[id] = Lit::node(add(n, kNoNode));
        break;
      case NodeKind::Const:
        lit[id] = Lit::constant(n.value);
        break;
      case NodeKind::Copy:
        lit[id] = lit[n.fanin[0]];
        break;
      case NodeKind::Not:
        lit[id] = !lit[n.fanin[0]];
        if (!lit[id].is_const && lit[id].neg) neg_origin.try_emplace(lit[id].id, id);
        break;
      case NodeKind::And:
      case NodeKind::Or: {
        const bool is_and = n.kind == NodeKind::And;
        const Lit p = lit[n.fanin[0]], q = lit[n.fanin[1]];
        const bool absorbing = !is_and;  // AND: 0 absorbs, OR: 1 absorbs
        if ((p.is_const && p.value == absorbing) || (q.is_const && q.value == absorbing)) {
          lit[id] = Lit::constant(absorbing);
        } else if (p.is_const) {
          lit[id] = q;
        } else if (q.is_const) {
          lit[id] = p;
        } else if (p.same_node(q)) {
          lit[id] = p.neg == q.neg ? p : Lit::constant(absorbing);
        } else {
          Node g;
          g.kind = n.kind;
          g.fanin = {materialize(p, kNoNode), materialize(q, kNoNode)};
          lit[id] = Lit::node(add(std::move(g), id));
        }
        break;
      }
      case NodeKind::U2: {
        const U2Params f = n.u2;
        const Lit p = lit[n.fanin[0]], q = lit[n.fanin[1]];
        if (p.is_const) {
          lit[id] = p.value == f.a ? Lit::constant(f.c) : q.flip(f.b != f.c);
        } else if (q.is_const) {
          lit[id] = q.value == f.b ? Lit::constant(f.c) : p.flip(f.a != f.c);
        } else if (p.same_node(q)) {
          // ((z^pa) & (z^qb)) ^ c with pa = p.neg^a, qb = q.neg^b.
          const bool pa = p.neg != f.a, qb = q.neg != f.b;
          lit[id] = pa == qb ? Lit::node(p.id, pa != f.c) : Lit::constant(f.c);
        } else {
          Node g;
          g.kind = NodeKind::U2;
          g.u2 = {static_cast<bool>(f.a != p.neg), static_cast<bool>(f.b != q.neg), f.c};
          g.fanin = {p.id, q.id};
          lit[id] = Lit::node(add(std::move(g), id));
        }
        break;
      }
    }
  }

  const NodeId old_out = c.output();
  const Lit out = lit[old_out];
  NodeId out_id = kNoNode;
  if (u2 && !out.is_const && out.neg && t.nodes()[out.id].kind == NodeKind::U2) {
    // Flip the gate's output polarity when nothing else reads it.
    Circuit probe = t;
    probe.set_output(out.id);
    auto live = live_nodes(probe);
    bool shared = false;
    for (NodeId id = 0; id < probe.node_count() && !shared; ++id)
      if (live[id])
        for (NodeId p : probe.nodes()[id].fanin) shared = shared || p == out.id;
    if (!shared) {
      Node g = t.nodes()[out.id];
      g.u2.c = !g.u2.c;
      out_id = add(std::move(g), out.id < origin.size() ? origin[out.id] : kNoNode);
    }
  }
  if (out_id == kNoNode) out_id = materialize(out, old_out);
  t.set_output(out_id);
  TracedCircuit r = compact(t, origin);

  std::vector<bool> survives(nodes.size(), false);
  for (NodeId o : r.origin)
    if (o != kNoNode) survives[o] = true;
  r.fate.assign(nodes.size(), Fate::Kept);
  for (NodeId id = 0; id < nodes.size(); ++id) {
    if (!is_gate(nodes[id].kind) || survives[id]) continue;
    const Lit& l = lit[id];
    if (l.is_const)
      r.fate[id] = Fate::Constant;
    else if (!l.neg && l.id < origin.size() && origin[l.id] == id)
      r.fate[id] = Fate::Dead;
    else
      r.fate[id] = Fate::Forwarded;
  }
  return r;
}

Circuit restrict(const Circuit& c, const Assignment& a) { return restrict_traced(c, a).circuit; }

LayeredCircuit restrict(const LayeredCircuit& lc, const Assignment& a) {
  const Circuit& c = lc.circuit;
  require_valid(c);
  reject_guess_assignment(a);
  const auto& nodes = c.nodes();

  struct SLit {
    bool is_const;
    bool value;
    NodeId id;
  };
  Circuit t(c.basis(), c.n_actual(), c.n_guess());
  std::vector<int> tlayer;
  auto add = [&](Node n, int layer) {
    NodeId id = t.add_raw(std::move(n));
    tlayer.resize(t.node_count(), -1);
    tlayer[id] = layer;
    return SLit{false, false, id};
  };
  auto unary = [&](NodeKind k, const SLit& p, int layer) {
    if (p.is_const) return SLit{true, k == NodeKind::Not ? !p.value : p.value, kNoNode};
    Node g;
    g.kind = k;
    g.fanin = {p.id};
    return add(std::move(g), layer);
  };
  auto residual = [&](const SLit& x, bool flip, int layer) {
    return unary(flip ? NodeKind::Not : NodeKind::Copy, x, layer);
  };

  std::vector<SLit> map(nodes.size(), SLit{true, false, kNoNode});
  for (NodeId id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    const int L = lc.layer_of[id];
    switch (n.kind) {
      case NodeKind::InputActual: {
        auto v = n.var < a.n_actual() ? a.actual(n.var) : std::nullopt;
        map[id] = v ? SLit{true, *v, kNoNode} : add(n, -1);
        break;
      }
      case NodeKind::InputGuess:
        map[id] = add(n, -1);
        break;
      case NodeKind::Const:
        map[id] = SLit{true, n.value, kNoNode};
        break;
      case NodeKind::Not:
      case NodeKind::Copy:
        map[id] = unary(n.kind, map[n.fanin[0]], L);
        break;
      case NodeKind::And:
      case NodeKind::Or: {
        const bool absorbing = n.kind == NodeKind::Or;
        const SLit p = map[n.fanin[0]], q = map[n.fanin[1]];
        if ((p.is_const && p.value == absorbing) || (q.is_const && q.value == absorbing))
          map[id] = SLit{true, absorbing, kNoNode};
        else if (p.is_const)
          map[id] = residual(q, false, L);
        else if (q.is_const || p.id == q.id)
          map[id] = residual(p, false, L);
        else {
          Node g = n;
          g.fanin = {p.id, q.id};
          map[id] = add(std::move(g), L);
        }
        break;
      }
      case NodeKind::U2: {
        const U2Params f = n.u2;
        const SLit p = map[n.fanin[0]], q = map[n.fanin[1]];
        if (p.is_const)
          map[id] = p.value == f.a ? SLit{true, f.c, kNoNode} : residual(q, f.b != f.c, L);
        else if (q.is_const)
          map[id] = q.value == f.b ? SLit{true, f.c, kNoNode} : residual(p, f.a != f.c, L);
        else if (p.id == q.id)
          map[id] = f.a == f.b ? residual(p, f.a != f.c, L) : SLit{true, f.c, kNoNode};
        else {
          Node g = n;
          g.fanin = {p.id, q.id};
          map[id] = add(std::move(g), L);
        }
        break;
      }
    }
  }

  SLit out = map[c.output()];
  NodeId out_id = out.is_const ? t.add_const(out.value) : out.id;
  tlayer.resize(t.node_count(), -1);
  t.set_output(out_id);

  // Dead-node removal and layer compaction.
  auto live = live_nodes(t);
  LayeredCircuit r;
  r.circuit = Circuit(t.basis(), t.n_actual(), t.n_guess());
  std::vector<NodeId> remap(t.node_count(), kNoNode);
  int min_layer = -1, max_layer = -1;
  for (NodeId id = 0; id < t.node_count(); ++id)
    if (live[id] && tlayer[id] >= 0) {
      min_layer = min_layer < 0 ? tlayer[id] : std::min(min_layer, tlayer[id]);
      max_layer = std::max(max_layer, tlayer[id]);
    }
  if (max_layer >= 0) r.layers.assign(static_cast<std::size_t>(max_layer - min_layer + 1), {});
  for (NodeId id = 0; id < t.node_count(); ++id) {
    if (!live[id]) continue;
    Node n = t.nodes()[id];
    for (auto& p : n.fanin) p = remap[p];
    remap[id] = n.kind == NodeKind::Const ? r.circuit.add_const(n.value) : r.circuit.add_raw(std::move(n));
    r.layer_of.resize(r.circuit.node_count(), -1);
    if (tlayer[id] >= 0) {
      r.layer_of[remap[id]] = tlayer[id] - min_layer;
      r.layers[static_cast<std::size_t>(tlayer[id] - min_layer)].push_back(remap[id]);
    }
  }
  r.circuit.set_output(remap[out_id]);
  r.layer_of.resize(r.circuit.node_count(), -1);
  // Layers emptied in the middle cannot occur: a live gate's operand gate is
  // live and sits one layer lower.
  return r;
}

}  // namespace widthkit
