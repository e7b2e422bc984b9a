#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "oracle.hpp"
#include "widthkit/constructions.hpp"
#include "widthkit/error.hpp"
#include "widthkit/layered.hpp"
#include "widthkit/restrict.hpp"

using namespace widthkit;

namespace {

Circuit and_x1_x2() {
  Circuit c(Basis::AndOrNot, 2);
  c.set_output(c.add_and(c.add_input(0), c.add_input(1)));
  return c;
}

// Shared bit order: entry v of a table assigns x_i = bit i of v.
std::vector<bool> slice(const std::vector<bool>& full, unsigned n, const Assignment& a) {
  std::vector<bool> out(full.size());
  for (std::uint64_t v = 0; v < full.size(); ++v) {
    std::uint64_t w = v;
    for (unsigned i = 0; i < n; ++i)
      if (auto b = a.actual(i)) w = (w & ~(std::uint64_t{1} << i)) | (std::uint64_t{*b} << i);
    out[v] = full[w];
  }
  return out;
}

Assignment random_partial(Rng& rng, unsigned n, unsigned g) {
  Assignment a(n, g);
  for (unsigned i = 0; i < n; ++i)
    if (rng.coin()) a.set_actual(i, rng.coin());
  return a;
}

}  // namespace

TEST_CASE("validate accepts a single AND gate") { CHECK(validate(and_x1_x2()).ok()); }

TEST_CASE("validate reports a guess labeling two nodes") {
  Circuit c(Basis::AndOrNot, 1, 1);
  NodeId a = c.add_guess(0), b = c.add_guess(0);
  c.set_output(c.add_and(a, b));
  CHECK(validate(c).has(Violation::Code::GuessMultiplicity));
}

TEST_CASE("validate reports an operand stored after its consumer") {
  Circuit c(Basis::AndOrNot, 2);
  c.add_input(0);
  c.add_input(1);
  Node bad;
  bad.kind = NodeKind::And;
  bad.fanin = {0, 3};
  c.add_raw(bad);
  c.add_not(0);
  c.set_output(2);
  CHECK(validate(c).has(Violation::Code::Topology));
}

TEST_CASE("validate reports fan-in, basis and variable range violations") {
  Circuit c(Basis::AndOrNot, 1);
  NodeId x = c.add_input(0);
  Node n;
  n.kind = NodeKind::And;
  n.fanin = {x};
  c.set_output(c.add_raw(n));
  CHECK(validate(c).has(Violation::Code::FanIn));

  Circuit u(Basis::AndOrNot, 2);
  Node g;
  g.kind = NodeKind::U2;
  g.fanin = {u.add_input(0), u.add_input(1)};
  u.set_output(u.add_raw(g));
  CHECK(validate(u).has(Violation::Code::Basis));

  Circuit r(Basis::AndOrNot, 1);
  r.set_output(r.add_input(3));
  CHECK(validate(r).has(Violation::Code::VariableRange));
  CHECK_THROWS_AS(require_valid(r), InvalidCircuit);
}

TEST_CASE("degenerate U2 parameters fold away on construction") {
  Circuit c(Basis::U2, 2);
  NodeId x = c.add_input(0);
  const std::size_t before = c.node_count();
  NodeId same = c.add_u2(kU2And, x, x);
  CHECK(same == x);
  CHECK(c.node_count() == before);
  NodeId k = c.add_u2(U2Params{false, true, false}, x, x);  // x & !x
  CHECK(c.node(k).kind == NodeKind::Const);
  CHECK(c.node(k).value == false);
}

TEST_CASE("size and width of small circuits") {
  Circuit c(Basis::AndOrNot, 1);
  c.set_output(c.add_input(0));
  CHECK(c.size() == 0);
  CHECK(build_parity(5).size() == 12);

  Circuit chain(Basis::AndOrNot, 1);
  chain.set_output(chain.add_not(chain.add_not(chain.add_not(chain.add_input(0)))));
  LayeredCircuit lc = layerize(chain);
  CHECK(lc.depth() == 3);
  CHECK(lc.width() == 1);
  CHECK(lc.circuit.copy_count() == 0);
}

TEST_CASE("layerize inserts one COPY for an edge skipping a layer") {
  Circuit c(Basis::AndOrNot, 2);
  NodeId a = c.add_and(c.add_input(0), c.add_input(1));
  NodeId g = c.add_not(a);
  NodeId b = c.add_not(g);
  NodeId h = c.add_and(b, g);
  c.set_output(h);
  LayeredCircuit lc = layerize(c);
  CHECK(lc.depth() == 4);
  REQUIRE(lc.circuit.copy_count() == 1);
  for (NodeId id = 0; id < lc.circuit.node_count(); ++id)
    if (lc.circuit.node(id).kind == NodeKind::Copy) CHECK(lc.layer_of[id] == 2);
  CHECK(lc.size() == c.size());
}

TEST_CASE("layered parity-4 chain has width 2 and depth 6") {
  // Blocks sit at layers {0,1}, {2,3}, {4,5}; each block's two literal
  // gates share a layer, the OR sits above them.
  LayeredCircuit lc = layerize(build_parity(4));
  CHECK(lc.depth() == 6);
  CHECK(lc.width() == 2);
  CHECK(lc.circuit.copy_count() == 0);
}

TEST_CASE("gate semantics") {
  Assignment a = Assignment::from_valuation(2, 0b11);
  CHECK(eval_det(and_x1_x2(), a));

  Circuit u(Basis::U2, 2);
  u.set_output(u.add_u2(kU2Or, u.add_input(0), u.add_input(1)));
  CHECK_FALSE(eval_det(u, Assignment::from_valuation(2, 0)));

  CHECK_FALSE(eval_det(build_parity(3), Assignment::from_valuation(3, 0b011)));
  CHECK_THROWS_AS(eval_det(and_x1_x2(), Assignment(2, 0)), MissingVariable);
}

TEST_CASE("nondeterministic semantics quantify over guesses") {
  Circuit y(Basis::AndOrNot, 1, 1);
  y.set_output(y.add_guess(0));
  CHECK(eval_nd(y, Assignment::from_valuation(1, 0)));
  CHECK(eval_nd(y, Assignment::from_valuation(1, 1)));

  Circuit c(Basis::AndOrNot, 1, 1);
  c.set_output(c.add_and(c.add_input(0), c.add_guess(0)));
  CHECK_FALSE(eval_nd(c, Assignment::from_valuation(1, 0)));
  CHECK(eval_nd(c, Assignment::from_valuation(1, 1)));
}

TEST_CASE("nondeterministic selector example input") {
  CHECK(eval_nd(build_nd_selector_f(4), Assignment::from_valuation(4, 0b0001)));
}

TEST_CASE("eval_nd equals the OR over explicit guess settings") {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const auto n = static_cast<unsigned>(rng.between(1, 5));
    const auto g = static_cast<unsigned>(rng.between(0, 3));
    Circuit c = testutil::random_flat(rng, n, g, static_cast<unsigned>(rng.between(1, 10)),
                                      t % 2 ? Basis::U2 : Basis::AndOrNot);
    REQUIRE(validate(c).ok());
    for (std::uint64_t x = 0; x < (1u << n); ++x) {
      bool any = false;
      for (std::uint64_t y = 0; y < (1u << g); ++y) {
        Assignment a = Assignment::from_valuation(n, x, g, y);
        any = any || eval_det(c, a);
      }
      CHECK(eval_nd(c, Assignment::from_valuation(n, x)) == any);
      CHECK(oracle::eval_nd(c, x) == any);
    }
  }
}

TEST_CASE("truth tables") {
  Circuit one(Basis::AndOrNot, 3);
  one.set_output(one.add_const(true));
  CHECK(truth_table(one).is_constant(true));
  CHECK(truth_table(build_parity(2)).to_string() == "0110");

  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    Circuit c = testutil::random_flat(rng, 5, static_cast<unsigned>(rng.below(3)), 5, Basis::AndOrNot);
    CHECK(oracle::as_bits(truth_table(c)) == oracle::table(c));
  }
  CHECK_THROWS_AS(truth_table(build_parity(12), 10), LimitExceeded);
}

TEST_CASE("truth table does not depend on the worker count") {
  Circuit c = build_parity(14);
  CHECK(truth_table(c, kDefaultArityLimit, 1) == truth_table(c, kDefaultArityLimit, 4));
}

TEST_CASE("read counts") {
  Circuit c(Basis::AndOrNot, 3);
  NodeId a = c.add_input(0), b = c.add_input(0), d = c.add_input(0);
  c.set_output(c.add_and(c.add_and(a, b), c.add_or(d, c.add_input(1))));
  CHECK(read_count(c, 2) == 0);
  CHECK(read_count(c, 0) == 3);
  CHECK_FALSE(is_read_k(c, 2));
  CHECK(is_read_k(c, 3));
  CHECK_THROWS_AS(read_count(c, 7), Error);

  const auto reads = read_counts(build_parity(6));
  CHECK(std::all_of(reads.begin(), reads.end(), [](unsigned r) { return r == 2; }));
}

TEST_CASE("input-node pigeonhole on random circuits") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<unsigned>(rng.between(1, 8));
    Circuit c = testutil::random_flat(rng, n, 1, static_cast<unsigned>(rng.between(1, 20)), Basis::U2);
    const auto reads = read_counts(c);
    const std::size_t inputs = actual_input_node_count(c);
    CHECK(std::accumulate(reads.begin(), reads.end(), std::size_t{0}) <= inputs);
    const std::size_t bound = (2 * inputs + n - 1) / n;
    const auto low = std::count_if(reads.begin(), reads.end(), [&](unsigned r) { return r <= bound; });
    CHECK(static_cast<unsigned>(low) >= (n + 1) / 2);
  }
}

TEST_CASE("layerize preserves semantics and size, and layers canonically") {
  Rng rng(17);
  for (int t = 0; t < 80; ++t) {
    const auto n = static_cast<unsigned>(rng.between(1, 6));
    const auto g = static_cast<unsigned>(rng.between(0, 3));
    Circuit c = testutil::random_flat(rng, n, g, static_cast<unsigned>(rng.between(1, 14)),
                                      t % 2 ? Basis::U2 : Basis::AndOrNot);
    LayeredCircuit lc = layerize(c);
    CHECK(check_layering(lc).empty());
    CHECK(lc.size() == c.size());
    for (std::uint64_t x = 0; x < (1u << n); ++x)
      for (std::uint64_t y = 0; y < (1u << g); ++y) REQUIRE(oracle::eval(lc.circuit, x, y) == oracle::eval(c, x, y));

    // Longest gate path equals the depth.
    std::vector<int> depth(c.node_count(), -1);
    int deepest = -1;
    for (NodeId id = 0; id < c.node_count(); ++id) {
      const Node& nd = c.node(id);
      if (!is_gate(nd.kind)) continue;
      int d = 0;
      for (NodeId p : nd.fanin) d = std::max(d, depth[p] + 1);
      depth[id] = d;
      deepest = std::max(deepest, d);
    }
    CHECK(static_cast<int>(lc.depth()) == deepest + 1);
  }
}

TEST_CASE("restriction examples") {
  Assignment a(2, 0);
  a.set_actual(0, false);
  Circuit r = restrict(and_x1_x2(), a);
  CHECK(r.size() == 0);
  CHECK(truth_table(r).is_constant(false));

  Assignment b(3, 0);
  b.set_actual(2, true);
  Circuit p = restrict(build_parity(3), b);
  CHECK(p.size() <= 6);
  CHECK(read_count(p, 2) == 0);
  for (std::uint64_t x = 0; x < 8; ++x) CHECK(eval_nd(p, Assignment::from_valuation(3, x)) == !oracle::parity(x & 3));

  Circuit q = build_parity(4);
  CHECK(truth_table(restrict(q, Assignment(4, 0))) == truth_table(q));

  Circuit y(Basis::AndOrNot, 1, 1);
  y.set_output(y.add_and(y.add_input(0), y.add_guess(0)));
  Assignment guess(1, 1);
  guess.set_guess(0, true);
  CHECK_THROWS_AS(restrict(y, guess), Error);
}

TEST_CASE("restriction equals the table slice and never grows") {
  Rng rng(23);
  for (int t = 0; t < 150; ++t) {
    const auto n = static_cast<unsigned>(rng.between(1, 6));
    const auto g = static_cast<unsigned>(rng.between(0, 2));
    Circuit c = testutil::random_flat(rng, n, g, static_cast<unsigned>(rng.between(1, 14)),
                                      t % 2 ? Basis::U2 : Basis::AndOrNot);
    Assignment a = random_partial(rng, n, g);
    Circuit r = restrict(c, a);
    CHECK(validate(r).ok());
    CHECK(r.size() <= c.size());
    for (unsigned i = 0; i < n; ++i)
      if (a.actual(i)) CHECK(read_count(r, i) == 0);
    CHECK(oracle::table(r) == slice(oracle::table(c), n, a));

    TracedCircuit tr = restrict_traced(c, a);
    CHECK(tr.circuit == r);
    CHECK(tr.origin.size() == r.node_count());
  }
}

TEST_CASE("schedule-preserving restriction keeps width and read counts") {
  Rng rng(29);
  for (int t = 0; t < 150; ++t) {
    RandomCircuitParams p;
    p.basis = t % 2 ? Basis::U2 : Basis::AndOrNot;
    p.n_actual = static_cast<unsigned>(rng.between(1, 6));
    p.max_size = 14;
    LayeredCircuit lc = random_layered_circuit(rng, p);
    Assignment a = random_partial(rng, p.n_actual, lc.circuit.n_guess());
    LayeredCircuit r = restrict(lc, a);
    CHECK(check_layering(r).empty());
    CHECK(r.width() <= lc.width());
    CHECK(r.size() <= lc.size());
    const auto before = read_counts(lc.circuit), after = read_counts(r.circuit);
    for (unsigned i = 0; i < p.n_actual; ++i) CHECK(after[i] <= (a.actual(i) ? 0u : before[i]));
    CHECK(oracle::table(r.circuit) == slice(oracle::table(lc.circuit), p.n_actual, a));
  }
}

TEST_CASE("random layered generator meets the layering invariants") {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    RandomCircuitParams p;
    p.basis = t % 2 ? Basis::U2 : Basis::AndOrNot;
    p.n_actual = static_cast<unsigned>(rng.between(1, 8));
    p.max_size = 20;
    LayeredCircuit lc = random_layered_circuit(rng, p);
    CHECK(check_layering(lc).empty());
    CHECK(lc.width() <= p.max_width);
    CHECK(lc.size() <= p.max_size);
    CHECK(lc.circuit.copy_count() == 0);
    const auto live = live_nodes(lc.circuit);
    CHECK(std::all_of(live.begin(), live.end(), [](bool b) { return b; }));
  }
}
