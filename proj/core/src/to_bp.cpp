#include <cmath>
#include <map>
#include <string>

#include "layer_view.hpp"
#include "widthkit/conversions.hpp"

namespace widthkit {

namespace {

// Residual gate functions are 4-bit tables indexed by p + 2q.
using Table = std::uint8_t;

Table gate_table(const Node& n) {
  Table t = 0;
  for (unsigned p = 0; p < 2; ++p)
    for (unsigned q = 0; q < 2; ++q) {
      bool v = false;
      switch (n.kind) {
        case NodeKind::And: v = p && q; break;
        case NodeKind::Or: v = p || q; break;
        case NodeKind::Not: v = !p; break;
        case NodeKind::Copy: v = p; break;
        case NodeKind::U2: v = n.u2.apply(p != 0, q != 0); break;
        default: break;
      }
      if (v) t |= static_cast<Table>(1u << (p + 2 * q));
    }
  return t;
}

Table substitute(Table t, unsigned slot, bool b) {
  Table r = 0;
  for (unsigned p = 0; p < 2; ++p)
    for (unsigned q = 0; q < 2; ++q) {
      const unsigned from = slot == 0 ? (b + 2 * q) : (p + 2 * b);
      if ((t >> from) & 1u) r |= static_cast<Table>(1u << (p + 2 * q));
    }
  return r;
}

struct Slot {
  enum class Kind : std::uint8_t { Prev, Const, Read } kind = Kind::Const;
  unsigned index = 0;  // Prev: gate position; Read: read position
  bool value = false;
};

struct GateInfo {
  Table table;
  Slot slots[2];
};

struct Targets {
  bool accept = false;
  std::vector<BpNodeId> nodes;
};

class ToBp {
 public:
  explicit ToBp(const detail::LayerView& v) : v_(v), c_(v.lc.circuit) {
    const auto n = v_.gates.size();
    info_.resize(n);
    offset_.resize(n + 1, 0);
    for (std::size_t l = 0; l < n; ++l) {
      offset_[l + 1] = offset_[l] + reads(l) + 1;
      for (NodeId g : v_.gates[l]) {
        const Node& nd = c_.nodes()[g];
        GateInfo gi{gate_table(nd), {}};
        for (unsigned s = 0; s < nd.fanin.size(); ++s) gi.slots[s] = slot_of(nd.fanin[s], l);
        info_[l].push_back(gi);
      }
    }
  }

  BranchingProgram run() {
    Targets t = resolve(0, 0, initial(0, {}));
    if (t.accept || t.nodes.empty()) {
      BranchingProgram single(c_.n_actual());
      single.set_start(single.add_sink(t.accept));
      return single;
    }
    if (t.nodes.size() == 1) {
      bp_.set_start(t.nodes.front());
    } else {
      // Several entry nodes: a fresh start node reading the variable of the
      // earliest one and forwarding to every entry node.
      BpNodeId first = *std::min_element(t.nodes.begin(), t.nodes.end(),
                                         [&](BpNodeId x, BpNodeId y) { return pos_[x] < pos_[y]; });
      const unsigned var = bp_.nodes()[first].var;
      BpNodeId s = bp_.add_var(var);
      const auto edges = bp_.edges();
      for (BpNodeId e : t.nodes) {
        if (bp_.nodes()[e].var == var) {
          for (const auto& ed : edges)
            if (ed.from == e) bp_.add_edge(s, ed.label, ed.to);
        } else {
          bp_.add_edge(s, false, e);
          bp_.add_edge(s, true, e);
        }
      }
      bp_.set_start(s);
    }
    return trim(bp_);
  }

 private:
  std::size_t reads(std::size_t l) const { return v_.guesses[l].size() + v_.actuals[l].size(); }

  Slot slot_of(NodeId p, std::size_t l) const {
    const Node& src = c_.nodes()[p];
    Slot s;
    switch (src.kind) {
      case NodeKind::Const:
        s.kind = Slot::Kind::Const;
        s.value = src.value;
        break;
      case NodeKind::InputGuess: {
        const auto& gs = v_.guesses[l];
        s.kind = Slot::Kind::Read;
        s.index = static_cast<unsigned>(std::find(gs.begin(), gs.end(), p) - gs.begin());
        break;
      }
      case NodeKind::InputActual: {
        const auto& as = v_.actuals[l];
        s.kind = Slot::Kind::Read;
        s.index = static_cast<unsigned>(v_.guesses[l].size() +
                                        (std::lower_bound(as.begin(), as.end(), src.var) - as.begin()));
        break;
      }
      default:
        s.kind = Slot::Kind::Prev;
        s.index = static_cast<unsigned>(v_.slot[p]);
    }
    return s;
  }

  std::vector<Table> initial(std::size_t l, const std::vector<bool>& prev) const {
    std::vector<Table> t;
    for (const auto& gi : info_[l]) {
      Table x = gi.table;
      for (unsigned s = 0; s < 2; ++s) {
        const Slot& sl = gi.slots[s];
        if (sl.kind == Slot::Kind::Const) x = substitute(x, s, sl.value);
        if (sl.kind == Slot::Kind::Prev) x = substitute(x, s, prev[sl.index]);
      }
      t.push_back(x);
    }
    return t;
  }

  std::vector<Table> after_read(std::size_t l, unsigned r, std::vector<Table> t, bool b) const {
    for (std::size_t i = 0; i < t.size(); ++i)
      for (unsigned s = 0; s < 2; ++s) {
        const Slot& sl = info_[l][i].slots[s];
        if (sl.kind == Slot::Kind::Read && sl.index == r) t[i] = substitute(t[i], s, b);
      }
    return t;
  }

  BpNodeId sink(bool b) {
    BpNodeId& s = sink_[b ? 1 : 0];
    if (s == kNone) {
      s = bp_.add_sink(b);
      pos_.push_back(~std::size_t{0});
    }
    return s;
  }

  Targets resolve(std::size_t l, unsigned r, const std::vector<Table>& t) {
    if (r == reads(l)) {
      std::vector<bool> values;
      for (Table x : t) values.push_back(x == 0xF);
      if (static_cast<int>(l) == v_.out_layer) return Targets{values.front(), {}};
      return resolve(l + 1, 0, initial(l + 1, values));
    }
    std::string key(reinterpret_cast<const char*>(t.data()), t.size());
    key += '|' + std::to_string(offset_[l] + r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    auto t0 = after_read(l, r, t, false), t1 = after_read(l, r, t, true);
    Targets out;
    if (t0 == t && t1 == t) {
      out = resolve(l, r + 1, t);
    } else if (r < v_.guesses[l].size()) {
      Targets a = resolve(l, r + 1, t0), b = resolve(l, r + 1, t1);
      out.accept = a.accept || b.accept;
      if (!out.accept) {
        out.nodes = a.nodes;
        out.nodes.insert(out.nodes.end(), b.nodes.begin(), b.nodes.end());
        std::sort(out.nodes.begin(), out.nodes.end());
        out.nodes.erase(std::unique(out.nodes.begin(), out.nodes.end()), out.nodes.end());
      }
    } else {
      const unsigned var = v_.actuals[l][r - v_.guesses[l].size()];
      BpNodeId u = bp_.add_var(var);
      pos_.push_back(offset_[l] + r);
      for (bool b : {false, true}) {
        Targets next = resolve(l, r + 1, b ? t1 : t0);
        if (next.accept)
          bp_.add_edge(u, b, sink(true));
        else if (next.nodes.empty())
          bp_.add_edge(u, b, sink(false));
        else
          for (BpNodeId x : next.nodes) bp_.add_edge(u, b, x);
      }
      out.nodes = {u};
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

  static constexpr BpNodeId kNone = ~BpNodeId{0};
  const detail::LayerView& v_;
  const Circuit& c_;
  std::vector<std::vector<GateInfo>> info_;
  std::vector<std::size_t> offset_;
  BranchingProgram bp_{c_.n_actual()};
  std::vector<std::size_t> pos_;
  BpNodeId sink_[2] = {kNone, kNone};
  std::map<std::string, Targets> memo_;
};

}  // namespace

BpConversion circuit_to_bp(const LayeredCircuit& lc) {
  detail::LayerView view(lc);
  const Circuit& c = lc.circuit;
  BpConversion out;
  const Node& o = c.nodes()[c.output()];
  if (view.out_layer < 0) {
    BranchingProgram bp(c.n_actual());
    if (o.kind == NodeKind::InputActual) {
      BpNodeId x = bp.add_var(o.var);
      bp.add_edge(x, true, bp.add_sink(true));
      bp.set_start(x);
    } else {
      bp.set_start(bp.add_sink(o.kind == NodeKind::InputGuess || o.value));
    }
    out.bp = std::move(bp);
  } else {
    out.bp = ToBp(view).run();
  }
  auto& r = out.report;
  r.pass = "to-bp";
  r.s_in = lc.size();
  r.w_in = lc.width();
  r.s_out = out.bp.size();
  r.w_out = 0;
  r.depth = static_cast<unsigned>(lc.depth());
  r.bound_value = std::pow(4.0, static_cast<double>(r.w_in)) * static_cast<double>(r.s_in);
  r.bound_ok = static_cast<double>(r.s_out) <= r.bound_value;
  return out;
}

}  // namespace widthkit
