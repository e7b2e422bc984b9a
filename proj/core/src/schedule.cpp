#include "widthkit/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace widthkit {

namespace {

using Wire = ScheduledBuilder::Wire;

Wire flipped(Wire w, bool f) { return f ? !w : w; }

Wire positive(Wire w) {
  w.neg = false;
  return w;
}

}  // namespace

ScheduledBuilder::ScheduledBuilder(Basis basis, unsigned n_actual)
    : basis_(basis), c_(basis, n_actual, 0) {}

int ScheduledBuilder::layer_of(const Wire& w) const {
  return w.kind == Wire::Kind::Gate ? layer_.at(w.id) : -1;
}

NodeId ScheduledBuilder::place(Node n, int L) {
  if (L < 0) throw std::logic_error("gate placed at a negative layer");
  NodeId id = c_.add_raw(std::move(n));
  layer_.resize(c_.node_count(), -1);
  layer_[id] = L;
  last_layer_ = std::max(last_layer_, L);
  return id;
}

NodeId ScheduledBuilder::input_node(unsigned var) {
  auto it = inputs_.find(var);
  if (it != inputs_.end()) return it->second;
  NodeId id = c_.add_input(var);
  layer_.resize(c_.node_count(), -1);
  inputs_.emplace(var, id);
  return id;
}

// Operand node for a gate at layer L; negations cost a NOT gate at L-1.
NodeId ScheduledBuilder::node_of(const Wire& w, int L) {
  if (w.is_const()) {
    NodeId id = c_.add_const(w.value);
    layer_.resize(c_.node_count(), -1);
    return id;
  }
  if (layer_of(w) >= L) throw std::logic_error("operand is not before its consumer");
  const NodeId src = w.kind == Wire::Kind::Var ? input_node(w.var) : w.id;
  if (!w.neg) return src;
  const std::uint64_t key = w.kind == Wire::Kind::Var ? (std::uint64_t{1} << 40) | w.var : w.id;
  auto it = negated_.find({key, L - 1});
  if (it != negated_.end()) return it->second;
  if (L - 1 <= layer_of(w)) throw std::logic_error("no layer left for a negation");
  Node n;
  n.kind = NodeKind::Not;
  n.fanin = {src};
  NodeId id = place(std::move(n), L - 1);
  negated_.emplace(std::make_pair(key, L - 1), id);
  return id;
}

Wire ScheduledBuilder::u2(U2Params f, Wire x, Wire y, int L) {
  if (x.is_const()) return x.value == f.a ? Wire::constant(f.c) : flipped(y, f.b != f.c);
  if (y.is_const()) return y.value == f.b ? Wire::constant(f.c) : flipped(x, f.a != f.c);
  if (x.same_source(y)) {
    const bool pa = x.neg != f.a, pb = y.neg != f.b;
    return pa == pb ? flipped(positive(x), pa != f.c) : Wire::constant(f.c);
  }
  const bool a = f.a != x.neg, b = f.b != y.neg;
  Node n;
  if (basis_ == Basis::U2) {
    n.kind = NodeKind::U2;
    n.u2 = {a, b, f.c};
    n.fanin = {node_of(positive(x), L), node_of(positive(y), L)};
  } else {
    // c=0: (x^a) & (y^b); c=1: (x^!a) | (y^!b).
    n.kind = f.c ? NodeKind::Or : NodeKind::And;
    Wire px = positive(x), py = positive(y);
    px.neg = f.c ? !a : a;
    py.neg = f.c ? !b : b;
    n.fanin = {node_of(px, L), node_of(py, L)};
  }
  Wire out;
  out.kind = Wire::Kind::Gate;
  out.id = place(std::move(n), L);
  return out;
}

Wire ScheduledBuilder::not1(Wire x, int L) {
  if (x.is_const() || basis_ == Basis::U2 || x.neg) return !x;
  Node n;
  n.kind = NodeKind::Not;
  n.fanin = {node_of(x, L)};
  Wire out;
  out.kind = Wire::Kind::Gate;
  out.id = place(std::move(n), L);
  return out;
}

LayeredCircuit ScheduledBuilder::finish(Wire out) {
  NodeId o;
  if (out.neg) {
    Node n;
    n.kind = NodeKind::Not;
    n.fanin = {node_of(positive(out), layer_of(out) + 1)};
    o = place(std::move(n), layer_of(out) + 1);
  } else {
    o = node_of(out, layer_of(out) + 1);
  }
  c_.set_output(o);

  auto live = live_nodes(c_);
  std::vector<bool> used(static_cast<std::size_t>(last_layer_ + 1), false);
  for (NodeId id = 0; id < c_.node_count(); ++id)
    if (live[id] && layer_[id] >= 0) used[static_cast<std::size_t>(layer_[id])] = true;
  std::vector<int> dense(used.size(), -1);
  int next = 0;
  for (std::size_t l = 0; l < used.size(); ++l)
    if (used[l]) dense[l] = next++;

  Circuit c(c_.basis(), c_.n_actual(), 0);
  std::vector<int> layer;
  std::vector<NodeId> remap(c_.node_count(), kNoNode);
  for (NodeId id = 0; id < c_.node_count(); ++id) {
    if (!live[id]) continue;
    Node n = c_.nodes()[id];
    for (auto& p : n.fanin) p = remap[p];
    remap[id] = n.kind == NodeKind::Const ? c.add_const(n.value) : c.add_raw(std::move(n));
    layer.resize(c.node_count(), -1);
    layer[remap[id]] = layer_[id] >= 0 ? dense[static_cast<std::size_t>(layer_[id])] : -1;
  }
  c.set_output(remap[o]);
  return layerize_with(c, layer);
}

}  // namespace widthkit
