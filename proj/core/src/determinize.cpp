#include <cmath>

#include "layer_view.hpp"
#include "widthkit/conversions.hpp"
#include "widthkit/schedule.hpp"

namespace widthkit {

namespace {

using Wire = ScheduledBuilder::Wire;

std::vector<bool> bits_of(std::uint64_t v, std::size_t n) {
  std::vector<bool> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = (v >> i) & 1u;
  return b;
}

class Determinizer {
 public:
  Determinizer(const detail::LayerView& v, std::size_t base_size)
      : v_(v), c_(v.lc.circuit), base_size_(base_size), b_(c_.basis(), c_.n_actual()) {}

  ScheduledBuilder& builder() { return b_; }

  std::optional<Cut> cut(int a, int z) const {
    if (a >= z) return std::nullopt;
    const std::size_t total = v_.size_between(a, z);
    std::size_t prefix = 0;
    int t = a;
    for (; t < z; ++t) {
      prefix += v_.sizes[static_cast<std::size_t>(t)];
      if (2 * prefix >= total) break;
    }
    if (t == z) t = z - 1;
    auto balance = [&](int u) { return std::max(v_.size_between(a, u), v_.size_between(u + 1, z)); };
    if (t > a && balance(t - 1) < balance(t)) --t;
    return Cut{t, v_.size_between(a, t), v_.size_between(t + 1, z)};
  }

  /// Wire equal to: some guess setting in layers [a, z] drives the live
  /// gates of layer z to `out` when layer a-1 carries `in`.
  Wire segment(int a, int z, const std::vector<bool>& in, const std::vector<bool>& out, unsigned& depth) {
    depth = 0;
    if (a == z || v_.size_between(a, z) <= base_size_ || v_.guesses_between(a, z) == 0)
      return enumerate(a, z, in, out);
    Cut k = *cut(a, z);
    return split(a, k.layer, z, in, out, depth, false);
  }

  /// Splits [a, z] after layer t. With `flat` both halves are enumerated.
  Wire split(int a, int t, int z, const std::vector<bool>& in, const std::vector<bool>& out,
             unsigned& depth, bool flat) {
    const std::size_t m = v_.gates[static_cast<std::size_t>(t)].size();
    Wire acc = Wire::constant(false);
    unsigned d = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
      const auto mid = bits_of(s, m);
      unsigned d1 = 0, d2 = 0;
      Wire r1 = flat ? enumerate(a, t, in, mid) : segment(a, t, in, mid, d1);
      d = std::max(d, d1);
      if (r1.is_const(false)) continue;
      Wire r2 = flat ? enumerate(t + 1, z, mid, out) : segment(t + 1, z, mid, out, d2);
      d = std::max(d, d2);
      if (r2.is_const(false)) continue;
      Wire term = b_.and2(r1, r2, b_.last_layer() + 2);
      acc = acc.is_const(false) ? term : b_.or2(acc, term, b_.last_layer() + 2);
      if (acc.is_const(true)) break;
    }
    depth = d + 1;
    return acc;
  }

  /// OR over every guess setting of [a, z] of the equality check
  /// "layer z == out", laid out one copy after another.
  Wire enumerate(int a, int z, const std::vector<bool>& in, const std::vector<bool>& out) {
    std::vector<NodeId> guesses;
    for (int l = a; l <= z; ++l)
      for (NodeId g : v_.guesses[static_cast<std::size_t>(l)]) guesses.push_back(g);
    Wire acc = Wire::constant(false);
    for (std::uint64_t gv = 0; gv < (std::uint64_t{1} << guesses.size()); ++gv) {
      std::vector<std::pair<NodeId, bool>> fixed;
      for (std::size_t j = 0; j < guesses.size(); ++j) fixed.emplace_back(guesses[j], (gv >> j) & 1u);
      const int start = b_.last_layer() + 1;
      auto wires = instantiate(a, z, in, fixed, start);
      const int end = std::max(b_.last_layer(), start + (z - a));
      Wire eq = equal_to(wires, out, end);
      if (eq.is_const(false)) continue;
      acc = acc.is_const(false) ? eq : b_.or2(acc, eq, b_.last_layer() + 2);
      if (acc.is_const(true)) break;
    }
    return acc;
  }

 private:
  std::vector<Wire> instantiate(int a, int z, const std::vector<bool>& in,
                                const std::vector<std::pair<NodeId, bool>>& fixed, int start) {
    std::vector<Wire> prev, cur;
    for (int l = a; l <= z; ++l) {
      const int L = start + (l - a);
      cur.clear();
      for (NodeId g : v_.gates[static_cast<std::size_t>(l)]) {
        const Node& n = c_.nodes()[g];
        auto wire = [&](NodeId p) -> Wire {
          const Node& src = c_.nodes()[p];
          switch (src.kind) {
            case NodeKind::Const:
              return Wire::constant(src.value);
            case NodeKind::InputActual:
              return Wire::input(src.var);
            case NodeKind::InputGuess:
              for (const auto& [id, b] : fixed)
                if (id == p) return Wire::constant(b);
              throw InvalidCircuit("guess read outside its segment");
            default: {
              const auto idx = static_cast<std::size_t>(v_.slot[p]);
              return l == a ? Wire::constant(in.at(idx)) : prev.at(idx);
            }
          }
        };
        switch (n.kind) {
          case NodeKind::And:
            cur.push_back(b_.and2(wire(n.fanin[0]), wire(n.fanin[1]), L));
            break;
          case NodeKind::Or:
            cur.push_back(b_.or2(wire(n.fanin[0]), wire(n.fanin[1]), L));
            break;
          case NodeKind::U2:
            cur.push_back(b_.u2(n.u2, wire(n.fanin[0]), wire(n.fanin[1]), L));
            break;
          case NodeKind::Not:
            cur.push_back(b_.not1(wire(n.fanin[0]), L));
            break;
          default:
            cur.push_back(wire(n.fanin[0]));
        }
      }
      std::swap(prev, cur);
    }
    return prev;
  }

  /// AND chain of (wire_i == out_i), starting two layers after `end`.
  Wire equal_to(const std::vector<Wire>& wires, const std::vector<bool>& out, int end) {
    std::vector<Wire> lits;
    for (std::size_t i = 0; i < wires.size(); ++i) {
      Wire w = out[i] ? wires[i] : !wires[i];
      if (w.is_const(false)) return w;
      if (!w.is_const(true)) lits.push_back(w);
    }
    if (lits.empty()) return Wire::constant(true);
    Wire acc = lits.front();
    int L = end + 2;
    for (std::size_t i = 1; i < lits.size(); ++i) acc = b_.and2(acc, lits[i], L++);
    return acc;
  }

  const detail::LayerView& v_;
  const Circuit& c_;
  std::size_t base_size_;
  ScheduledBuilder b_;
};

void fill_report(ConversionReport& r, const LayeredCircuit& in, const LayeredCircuit& out, unsigned depth) {
  r.s_in = in.size();
  r.w_in = in.width();
  r.s_out = out.size();
  r.w_out = out.width();
  r.depth = depth;
  r.w_base = r.w_in + 1;
  r.bound_value = static_cast<double>(r.w_base + 2 * depth);
  r.bound_ok = static_cast<double>(r.w_out) <= r.bound_value;
  const double ls = std::log2(static_cast<double>(std::max<std::size_t>(r.s_in, 2)));
  r.fitted = r.s_out > 1 ? std::log2(static_cast<double>(r.s_out)) / ((static_cast<double>(r.w_in) + ls) * ls) : 0;
}

// Output that is a source node needs no gates at all.
std::optional<LayeredCircuit> trivial(const Circuit& c) {
  const Node& o = c.nodes()[c.output()];
  if (is_gate(o.kind)) return std::nullopt;
  ScheduledBuilder b(c.basis(), c.n_actual());
  if (o.kind == NodeKind::InputActual) return b.finish(Wire::input(o.var));
  return b.finish(Wire::constant(o.kind == NodeKind::InputGuess || o.value));
}

}  // namespace

std::optional<Cut> find_cut(const LayeredCircuit& lc) {
  detail::LayerView v(lc);
  if (v.out_layer < 1) return std::nullopt;
  return Determinizer(v, kDefaultBaseSize).cut(0, v.out_layer);
}

SplitResult split_determinize(const LayeredCircuit& lc, int cut_layer) {
  detail::LayerView v(lc);
  if (v.out_layer < 1 || cut_layer < 0 || cut_layer >= v.out_layer)
    throw Error("no valid cut at layer " + std::to_string(cut_layer));
  Determinizer d(v, kDefaultBaseSize);
  unsigned depth = 0;
  Wire w = d.split(0, cut_layer, v.out_layer, {}, {true}, depth, true);
  SplitResult r;
  r.circuit = d.builder().finish(w);
  r.cut = Cut{cut_layer, v.size_between(0, cut_layer), v.size_between(cut_layer + 1, v.out_layer)};
  r.cut_states = std::size_t{1} << v.gates[static_cast<std::size_t>(cut_layer)].size();
  return r;
}

Determinized determinize(const LayeredCircuit& lc, std::size_t base_size) {
  if (base_size < 2) throw Error("base size must be at least 2");
  detail::LayerView v(lc);
  Determinized out;
  unsigned depth = 0;
  if (auto t = trivial(lc.circuit)) {
    out.circuit = std::move(*t);
  } else {
    Determinizer d(v, base_size);
    Wire w = d.segment(0, v.out_layer, {}, {true}, depth);
    out.circuit = d.builder().finish(w);
  }
  out.report.pass = "determinize";
  fill_report(out.report, lc, out.circuit, depth);
  return out;
}

}  // namespace widthkit
