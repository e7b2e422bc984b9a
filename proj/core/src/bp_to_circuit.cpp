#include <cmath>

#include "widthkit/conversions.hpp"
#include "widthkit/schedule.hpp"

namespace widthkit {

namespace {

using Wire = ScheduledBuilder::Wire;

class Reach {
 public:
  explicit Reach(const BranchingProgram& bp) : bp_(bp), b_(Basis::U2, bp.n_vars()) {
    order_ = topological_order(bp_);
    index_.resize(bp_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) index_[order_[i]] = i;
    const auto n = bp_.size();
    reach_.assign(n, std::vector<bool>(n, false));
    direct_.assign(n * n, 0);
    for (const auto& e : bp_.edges()) direct_[e.from * n + e.to] |= e.label ? 2 : 1;
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      reach_[*it][*it] = true;
      for (const auto& e : bp_.edges())
        if (e.from == *it)
          for (std::size_t x = 0; x < n; ++x)
            if (reach_[e.to][x]) reach_[*it][x] = true;
    }
  }

  ScheduledBuilder& builder() { return b_; }

  /// Some consistent path u -> v whose inner nodes have topological index
  /// in [lo, hi).
  Wire path(BpNodeId u, BpNodeId v, std::size_t lo, std::size_t hi, unsigned& depth) {
    depth = 0;
    if (!reach_[u][v]) return Wire::constant(false);
    if (lo >= hi) return edge(u, v);
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    unsigned d = 0, dd = 0;
    Wire acc = path(u, v, mid, hi, dd);
    d = std::max(d, dd);
    for (std::size_t i = lo; i < mid && !acc.is_const(true); ++i) {
      const BpNodeId m = order_[i];
      if (!reach_[u][m] || !reach_[m][v]) continue;
      Wire r1 = path(u, m, lo, i, dd);
      d = std::max(d, dd);
      if (r1.is_const(false)) continue;
      Wire r2 = path(m, v, mid, hi, dd);
      d = std::max(d, dd);
      if (r2.is_const(false)) continue;
      Wire term = b_.and2(r1, r2, b_.last_layer() + 1);
      acc = acc.is_const(false) ? term : b_.or2(acc, term, b_.last_layer() + 1);
    }
    depth = d + 1;
    return acc;
  }

  Wire accept(unsigned& depth) {
    const BpNodeId s = bp_.start();
    depth = 0;
    if (bp_.nodes()[s].sink) return Wire::constant(bp_.nodes()[s].value);
    Wire acc = Wire::constant(false);
    for (BpNodeId t = 0; t < bp_.size() && !acc.is_const(true); ++t) {
      if (!bp_.nodes()[t].sink || !bp_.nodes()[t].value) continue;
      unsigned d = 0;
      Wire r = path(s, t, index_[s] + 1, index_[t], d);
      depth = std::max(depth, d);
      if (r.is_const(false)) continue;
      acc = acc.is_const(false) ? r : b_.or2(acc, r, b_.last_layer() + 1);
    }
    return acc;
  }

 private:
  Wire edge(BpNodeId u, BpNodeId v) const {
    const auto labels = direct_[u * bp_.size() + v];
    if (labels == 0) return Wire::constant(false);
    if (labels == 3) return Wire::constant(true);
    Wire x = Wire::input(bp_.nodes()[u].var);
    return labels == 2 ? x : !x;
  }

  const BranchingProgram& bp_;
  ScheduledBuilder b_;
  std::vector<BpNodeId> order_;
  std::vector<std::size_t> index_;
  std::vector<std::vector<bool>> reach_;
  std::vector<std::uint8_t> direct_;  // bit 0: 0-edge, bit 1: 1-edge
};

}  // namespace

WidthCircuit bp_to_width_circuit(const BranchingProgram& bp) {
  require_valid(bp);
  BranchingProgram t = trim(bp);
  Reach r(t);
  unsigned depth = 0;
  Wire w = r.accept(depth);
  WidthCircuit out;
  out.circuit = r.builder().finish(w);
  auto& rep = out.report;
  rep.pass = "bp-to-circuit";
  rep.s_in = bp.size();
  rep.w_in = 0;
  rep.s_out = out.circuit.size();
  rep.w_out = out.circuit.width();
  rep.depth = depth;
  const double lg = std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(rep.s_in, 1))));
  rep.bound_value = kBpWidthC1 * lg;
  rep.fitted = lg > 0 ? static_cast<double>(rep.w_out) / lg : 0;
  rep.bound_ok = static_cast<double>(rep.w_out) <= rep.bound_value &&
                 std::log2(static_cast<double>(std::max<std::size_t>(rep.s_out, 1))) <= kBpSizeC2 * lg * lg;
  return out;
}

}  // namespace widthkit
