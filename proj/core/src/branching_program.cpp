#include "widthkit/branching_program.hpp"

#include <algorithm>

#include "parallel.hpp"
#include "widthkit/error.hpp"

namespace widthkit {

BpNodeId BranchingProgram::add_var(unsigned var) {
  nodes_.push_back(BpNode{false, var, false});
  return static_cast<BpNodeId>(nodes_.size() - 1);
}

BpNodeId BranchingProgram::add_sink(bool value) {
  nodes_.push_back(BpNode{true, 0, value});
  return static_cast<BpNodeId>(nodes_.size() - 1);
}

void BranchingProgram::add_edge(BpNodeId from, bool label, BpNodeId to) {
  edges_.push_back(BpEdge{from, label, to});
}

std::vector<std::vector<std::uint32_t>> BranchingProgram::out_edges() const {
  std::vector<std::vector<std::uint32_t>> out(nodes_.size());
  for (std::uint32_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].from < nodes_.size()) out[edges_[e].from].push_back(e);
  return out;
}

namespace {

// Kahn order; shorter than size() iff there is a cycle.
std::vector<BpNodeId> kahn(const BranchingProgram& bp) {
  const auto& nodes = bp.nodes();
  std::vector<unsigned> indeg(nodes.size(), 0);
  for (const auto& e : bp.edges()) ++indeg[e.to];
  auto out = bp.out_edges();
  std::vector<BpNodeId> order;
  order.reserve(nodes.size());
  for (BpNodeId v = 0; v < nodes.size(); ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto e : out[order[i]])
      if (--indeg[bp.edges()[e].to] == 0) order.push_back(bp.edges()[e].to);
  return order;
}

}  // namespace

std::vector<std::string> validate(const BranchingProgram& bp) {
  std::vector<std::string> errs;
  const auto& nodes = bp.nodes();
  if (nodes.empty()) {
    errs.push_back("empty program");
    return errs;
  }
  if (bp.start() >= nodes.size()) errs.push_back("start node out of range");
  bool edges_ok = true;
  std::vector<unsigned> outdeg(nodes.size(), 0);
  for (const auto& e : bp.edges()) {
    if (e.from >= nodes.size() || e.to >= nodes.size()) {
      errs.push_back("edge " + std::to_string(e.from) + " -> " + std::to_string(e.to) + " out of range");
      edges_ok = false;
      continue;
    }
    ++outdeg[e.from];
  }
  for (BpNodeId v = 0; v < nodes.size(); ++v) {
    const auto& n = nodes[v];
    if (n.sink && outdeg[v] > 0) errs.push_back("sink " + std::to_string(v) + " has outgoing edges");
    if (!n.sink && outdeg[v] == 0) errs.push_back("inner node " + std::to_string(v) + " has no outgoing edge");
    if (!n.sink && n.var >= bp.n_vars())
      errs.push_back("node " + std::to_string(v) + " reads x" + std::to_string(n.var + 1) +
                     " beyond n=" + std::to_string(bp.n_vars()));
  }
  if (edges_ok && kahn(bp).size() != nodes.size()) errs.push_back("cycle");
  return errs;
}

void require_valid(const BranchingProgram& bp) {
  auto errs = validate(bp);
  if (errs.empty()) return;
  std::string msg = "invalid branching program:";
  for (const auto& e : errs) msg += "\n  " + e;
  throw InvalidCircuit(msg);
}

std::vector<BpNodeId> topological_order(const BranchingProgram& bp) {
  auto order = kahn(bp);
  if (order.size() != bp.size()) throw InvalidCircuit("branching program has a cycle");
  return order;
}

bool bp_eval(const BranchingProgram& bp, const Assignment& a) {
  require_valid(bp);
  auto out = bp.out_edges();
  std::vector<bool> seen(bp.size(), false);
  std::vector<BpNodeId> stack{bp.start()};
  seen[bp.start()] = true;
  while (!stack.empty()) {
    BpNodeId v = stack.back();
    stack.pop_back();
    const auto& n = bp.nodes()[v];
    if (n.sink) {
      if (n.value) return true;
      continue;
    }
    auto x = n.var < a.n_actual() ? a.actual(n.var) : std::nullopt;
    if (!x) throw MissingVariable("x" + std::to_string(n.var + 1) + " is unassigned");
    for (auto e : out[v]) {
      const auto& ed = bp.edges()[e];
      if (ed.label == *x && !seen[ed.to]) {
        seen[ed.to] = true;
        stack.push_back(ed.to);
      }
    }
  }
  return false;
}

std::vector<unsigned> read_multiplicities(const BranchingProgram& bp) {
  require_valid(bp);
  const auto order = topological_order(bp);
  auto out = bp.out_edges();
  std::vector<bool> reach(bp.size(), false);
  reach[bp.start()] = true;
  for (BpNodeId v : order)
    if (reach[v])
      for (auto e : out[v]) reach[bp.edges()[e].to] = true;

  std::vector<unsigned> result(bp.n_vars(), 0);
  // Longest path ending at each node, counting nodes labeled var: best[v].
  std::vector<unsigned> best(bp.size());
  for (unsigned var = 0; var < bp.n_vars(); ++var) {
    std::fill(best.begin(), best.end(), 0);
    for (BpNodeId v : order) {
      if (!reach[v]) continue;
      const auto& n = bp.nodes()[v];
      const unsigned here = best[v] + ((!n.sink && n.var == var) ? 1u : 0u);
      result[var] = std::max(result[var], here);
      for (auto e : out[v]) {
        auto& t = best[bp.edges()[e].to];
        t = std::max(t, here);
      }
    }
  }
  return result;
}

unsigned read_multiplicity(const BranchingProgram& bp, unsigned var) {
  if (var >= bp.n_vars()) return 0;
  return read_multiplicities(bp)[var];
}

bool is_syntactic_read_k(const BranchingProgram& bp, unsigned k) {
  auto r = read_multiplicities(bp);
  return std::all_of(r.begin(), r.end(), [k](unsigned v) { return v <= k; });
}

TruthTable bp_truth_table(const BranchingProgram& bp, unsigned arity_limit, unsigned jobs) {
  require_valid(bp);
  const unsigned n = bp.n_vars();
  if (n > arity_limit)
    throw LimitExceeded("arity " + std::to_string(n) + " exceeds limit " + std::to_string(arity_limit));
  auto order = topological_order(bp);
  std::reverse(order.begin(), order.end());
  auto out = bp.out_edges();
  TruthTable t(n);
  auto& words = t.words();
  // acc[v]: valuations of this word block accepted from node v.
  detail::parallel_chunks(words.size(), jobs, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> acc(bp.size());
    std::vector<std::uint64_t> xs(n);
    for (std::size_t w = begin; w < end; ++w) {
      for (unsigned i = 0; i < n; ++i) xs[i] = variable_word(i, w);
      for (BpNodeId v : order) {
        const auto& nd = bp.nodes()[v];
        if (nd.sink) {
          acc[v] = nd.value ? ~std::uint64_t{0} : 0;
          continue;
        }
        std::uint64_t r = 0;
        for (auto e : out[v]) {
          const auto& ed = bp.edges()[e];
          r |= (ed.label ? xs[nd.var] : ~xs[nd.var]) & acc[ed.to];
        }
        acc[v] = r;
      }
      words[w] = acc[bp.start()];
    }
  });
  t.clear_padding();
  return t;
}

BranchingProgram trim(const BranchingProgram& bp) {
  require_valid(bp);
  const auto order = topological_order(bp);
  auto out = bp.out_edges();
  std::vector<bool> fwd(bp.size(), false), bwd(bp.size(), false);
  fwd[bp.start()] = true;
  for (BpNodeId v : order)
    if (fwd[v])
      for (auto e : out[v]) fwd[bp.edges()[e].to] = true;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& n = bp.nodes()[*it];
    if (n.sink) {
      bwd[*it] = n.value;
      continue;
    }
    for (auto e : out[*it]) bwd[*it] = bwd[*it] || bwd[bp.edges()[e].to];
  }
  BranchingProgram r(bp.n_vars());
  if (!bwd[bp.start()]) {
    r.set_start(r.add_sink(false));
    return r;
  }
  std::vector<BpNodeId> remap(bp.size(), ~BpNodeId{0});
  for (BpNodeId v = 0; v < bp.size(); ++v) {
    if (!fwd[v] || !bwd[v]) continue;
    const auto& n = bp.nodes()[v];
    remap[v] = n.sink ? r.add_sink(n.value) : r.add_var(n.var);
  }
  for (const auto& e : bp.edges())
    if (remap[e.from] != ~BpNodeId{0} && remap[e.to] != ~BpNodeId{0})
      r.add_edge(remap[e.from], e.label, remap[e.to]);
  r.set_start(remap[bp.start()]);
  return r;
}

}  // namespace widthkit
