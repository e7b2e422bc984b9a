#include "widthkit/random.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "widthkit/error.hpp"

namespace widthkit {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error("Rng::below(0)");
  const std::uint64_t limit = -n % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = eng_();
    if (r >= limit) return r % n;
  }
}

namespace {

// Operand of a generated gate: a gate of the previous layer or a variable.
struct Source {
  enum Kind { Gate, Actual, Guess } kind;
  unsigned index;
  friend bool operator==(const Source&, const Source&) = default;
};

struct Draft {
  NodeKind kind;
  U2Params u2;
  std::vector<Source> ops;
};

}  // namespace

LayeredCircuit random_layered_circuit(Rng& rng, const RandomCircuitParams& p) {
  if (p.n_actual == 0) throw Error("random circuit needs at least one actual input");
  if (p.max_width == 0 || p.min_size == 0 || p.min_size > p.max_size) throw Error("bad random circuit parameters");

  // Widths drawn from the output downwards so that each layer can feed the
  // one above it: w_L <= 2 w_{L+1}.
  unsigned remaining = static_cast<unsigned>(rng.between(p.min_size, p.max_size)) - 1;
  std::vector<unsigned> widths{1};
  while (remaining > 0) {
    const unsigned cap = std::min({p.max_width, 2 * widths.back(), remaining});
    const unsigned w = static_cast<unsigned>(rng.between(1, cap));
    widths.push_back(w);
    remaining -= w;
  }
  std::reverse(widths.begin(), widths.end());

  const bool u2 = p.basis == Basis::U2;
  std::vector<int> guess_layer;  // claiming layer per guess
  std::vector<std::vector<Draft>> layers(widths.size());

  for (std::size_t L = 0; L < widths.size(); ++L) {
    const unsigned prev = L == 0 ? 0 : widths[L - 1];
    auto& gates = layers[L];
    unsigned capacity = 0;
    for (unsigned i = 0; i < widths[L]; ++i) {
      Draft d{};
      if (u2) {
        const auto abc = rng.below(8);
        d.kind = NodeKind::U2;
        d.u2 = U2Params{(abc & 4u) != 0, (abc & 2u) != 0, (abc & 1u) != 0};
      } else {
        const NodeKind kinds[] = {NodeKind::And, NodeKind::Or, NodeKind::Not};
        d.kind = kinds[rng.below(3)];
      }
      d.ops.resize(expected_fanin(d.kind));
      capacity += static_cast<unsigned>(d.ops.size());
      gates.push_back(std::move(d));
    }
    for (auto& d : gates) {
      if (capacity >= prev) break;
      if (d.kind == NodeKind::Not) {
        d.kind = rng.coin() ? NodeKind::And : NodeKind::Or;
        d.ops.resize(2);
        ++capacity;
      }
    }

    auto draw_var = [&]() {
      // Actual variables, guesses already claimed by this layer, and one
      // fresh guess while the budget lasts.
      std::vector<Source> pool;
      for (unsigned i = 0; i < p.n_actual; ++i) pool.push_back({Source::Actual, i});
      for (unsigned j = 0; j < guess_layer.size(); ++j)
        if (guess_layer[j] == static_cast<int>(L)) pool.push_back({Source::Guess, j});
      if (guess_layer.size() < p.max_guess)
        pool.push_back({Source::Guess, static_cast<unsigned>(guess_layer.size())});
      return pool[rng.below(pool.size())];
    };
    auto draw = [&]() -> Source {
      const std::uint64_t vars = p.n_actual + 1;
      if (prev > 0 && rng.below(prev + vars) < prev) return {Source::Gate, static_cast<unsigned>(rng.below(prev))};
      return draw_var();
    };

    std::vector<std::pair<unsigned, unsigned>> slots;
    for (unsigned i = 0; i < gates.size(); ++i)
      for (unsigned k = 0; k < gates[i].ops.size(); ++k) slots.emplace_back(i, k);
    std::vector<unsigned> perm(prev);
    for (unsigned i = 0; i < prev; ++i) perm[i] = i;
    for (std::size_t i = slots.size(); i > 1; --i) std::swap(slots[i - 1], slots[rng.below(i)]);
    for (std::size_t i = prev; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);

    std::vector<std::vector<bool>> forced(gates.size());
    for (unsigned i = 0; i < gates.size(); ++i) forced[i].assign(gates[i].ops.size(), false);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto [g, k] = slots[s];
      if (s < prev) {
        gates[g].ops[k] = {Source::Gate, perm[s]};
        forced[g][k] = true;
      } else {
        gates[g].ops[k] = draw();
      }
      if (gates[g].ops[k].kind == Source::Guess && gates[g].ops[k].index == guess_layer.size())
        guess_layer.push_back(static_cast<int>(L));
    }
    for (unsigned g = 0; g < gates.size(); ++g) {
      auto& d = gates[g];
      if (d.ops.size() != 2 || !(d.ops[0] == d.ops[1])) continue;
      const unsigned k = forced[g][1] ? 0 : 1;
      for (int tries = 0; tries < 32 && d.ops[0] == d.ops[1]; ++tries) {
        d.ops[k] = draw();
        if (d.ops[k].kind == Source::Guess && d.ops[k].index == guess_layer.size())
          guess_layer.push_back(static_cast<int>(L));
      }
      if (d.ops[0] == d.ops[1]) {
        if (u2) throw Error("random circuit: no distinct operands available");
        d.kind = NodeKind::Not;
        d.ops.resize(1);
      }
    }
  }

  Circuit c(p.basis, p.n_actual, static_cast<unsigned>(guess_layer.size()));
  std::vector<int> layer_of;
  std::map<std::tuple<std::size_t, int, unsigned>, NodeId> inputs;
  std::vector<NodeId> prev_ids, ids;
  auto node_for = [&](std::size_t L, const Source& s) -> NodeId {
    if (s.kind == Source::Gate) return prev_ids[s.index];
    auto key = std::make_tuple(L, static_cast<int>(s.kind), s.index);
    auto it = inputs.find(key);
    if (it != inputs.end()) return it->second;
    NodeId id = s.kind == Source::Actual ? c.add_input(s.index) : c.add_guess(s.index);
    layer_of.resize(c.node_count(), -1);
    inputs.emplace(key, id);
    return id;
  };
  for (std::size_t L = 0; L < layers.size(); ++L) {
    ids.clear();
    for (const auto& d : layers[L]) {
      Node n;
      n.kind = d.kind;
      n.u2 = d.u2;
      for (const auto& s : d.ops) n.fanin.push_back(node_for(L, s));
      ids.push_back(c.add_raw(std::move(n)));
      layer_of.resize(c.node_count(), -1);
      layer_of.back() = static_cast<int>(L);
    }
    prev_ids = ids;
  }
  c.set_output(prev_ids.front());
  return layerize_with(c, layer_of);
}

BranchingProgram random_bp(Rng& rng, unsigned n_vars, unsigned size) {
  if (size < 3 || n_vars == 0) throw Error("random program needs size >= 3 and a variable");
  BranchingProgram bp(n_vars);
  const unsigned inner = size - 2;
  for (unsigned i = 0; i < inner; ++i) bp.add_var(static_cast<unsigned>(rng.below(n_vars)));
  bp.add_sink(false);
  bp.add_sink(true);
  for (unsigned i = 0; i < inner; ++i) {
    const auto count = rng.between(1, 3);
    std::vector<std::pair<bool, unsigned>> seen;
    for (std::uint64_t e = 0; e < count; ++e) {
      const bool label = rng.coin();
      const auto to = static_cast<unsigned>(rng.between(i + 1, size - 1));
      if (std::find(seen.begin(), seen.end(), std::make_pair(label, to)) != seen.end()) continue;
      seen.emplace_back(label, to);
      bp.add_edge(i, label, to);
    }
  }
  bp.set_start(0);
  return bp;
}

}  // namespace widthkit
