#include <doctest.h>

#include "oracle.hpp"
#include "widthkit/branching_program.hpp"
#include "widthkit/error.hpp"
#include "widthkit/random.hpp"

using namespace widthkit;

namespace {

BranchingProgram single_sink(bool value) {
  BranchingProgram bp(2);
  bp.set_start(bp.add_sink(value));
  return bp;
}

// x1 -> x1 -> 1-sink along both labels.
BranchingProgram reread_chain() {
  BranchingProgram bp(2);
  BpNodeId a = bp.add_var(0), b = bp.add_var(0), one = bp.add_sink(true);
  bp.add_edge(a, false, b);
  bp.add_edge(a, true, b);
  bp.add_edge(b, true, one);
  bp.set_start(a);
  return bp;
}

}  // namespace

TEST_CASE("sink programs are constant") {
  for (bool v : {false, true}) {
    BranchingProgram bp = single_sink(v);
    CHECK(bp_truth_table(bp).is_constant(v));
    CHECK(bp_eval(bp, Assignment(2, 0)) == v);
  }
}

TEST_CASE("duplicate labels make a choice") {
  BranchingProgram bp(1);
  BpNodeId x = bp.add_var(0), zero = bp.add_sink(false), one = bp.add_sink(true);
  bp.add_edge(x, true, zero);
  bp.add_edge(x, true, one);
  bp.set_start(x);
  CHECK(bp_eval(bp, Assignment::from_valuation(1, 1)));
  // No 0-edge: the only branch is stuck.
  CHECK_FALSE(bp_eval(bp, Assignment::from_valuation(1, 0)));
  CHECK(validate(bp).empty());
}

TEST_CASE("read multiplicity") {
  BranchingProgram chain = reread_chain();
  CHECK(read_multiplicity(chain, 0) == 2);
  CHECK(read_multiplicity(chain, 1) == 0);
  CHECK(is_syntactic_read_k(chain, 2));
  CHECK_FALSE(is_syntactic_read_k(chain, 1));

  BranchingProgram once(2);
  BpNodeId a = once.add_var(0), b = once.add_var(1), one = once.add_sink(true);
  once.add_edge(a, true, b);
  once.add_edge(b, true, one);
  once.set_start(a);
  CHECK(is_syntactic_read_k(once, 1));
}

TEST_CASE("read multiplicity equals path enumeration") {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<unsigned>(rng.between(1, 4));
    BranchingProgram bp = random_bp(rng, n, static_cast<unsigned>(rng.between(3, 12)));
    const auto dp = read_multiplicities(bp);
    for (unsigned v = 0; v < n; ++v) CHECK(dp[v] == oracle::path_reads(bp, v));
  }
}

TEST_CASE("evaluation and truth tables agree with path search") {
  Rng rng(43);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<unsigned>(rng.between(1, 7));
    BranchingProgram bp = random_bp(rng, n, static_cast<unsigned>(rng.between(3, 20)));
    CHECK(oracle::as_bits(bp_truth_table(bp)) == oracle::bp_table(bp));
    CHECK(bp_truth_table(bp, kDefaultArityLimit, 3) == bp_truth_table(bp));
    const std::uint64_t x = rng.below(std::uint64_t{1} << n);
    CHECK(bp_eval(bp, Assignment::from_valuation(n, x)) == oracle::bp_eval(bp, x));
  }
}

TEST_CASE("adding an edge never turns an accept into a reject") {
  Rng rng(47);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<unsigned>(rng.between(1, 6));
    const auto size = static_cast<unsigned>(rng.between(3, 16));
    BranchingProgram bp = random_bp(rng, n, size);
    const TruthTable before = bp_truth_table(bp);
    const auto from = static_cast<BpNodeId>(rng.below(size - 2));
    bp.add_edge(from, rng.coin(), static_cast<BpNodeId>(rng.between(from + 1, size - 1)));
    const TruthTable after = bp_truth_table(bp);
    for (std::uint64_t v = 0; v < before.size(); ++v)
      if (before.get(v)) CHECK(after.get(v));
  }
}

TEST_CASE("evaluation requires the variables it reads") {
  CHECK_THROWS_AS(bp_eval(reread_chain(), Assignment(2, 0)), MissingVariable);
}

TEST_CASE("validate reports structural problems") {
  BranchingProgram empty(1);
  CHECK_FALSE(validate(empty).empty());

  BranchingProgram cyc(1);
  BpNodeId a = cyc.add_var(0), b = cyc.add_var(0);
  cyc.add_edge(a, false, b);
  cyc.add_edge(b, false, a);
  cyc.set_start(a);
  CHECK_FALSE(validate(cyc).empty());

  BranchingProgram sink_out(1);
  BpNodeId s = sink_out.add_sink(true), x = sink_out.add_var(0);
  sink_out.add_edge(s, true, x);
  sink_out.add_edge(x, true, s);
  sink_out.set_start(x);
  CHECK_FALSE(validate(sink_out).empty());

  BranchingProgram no_out(1);
  no_out.set_start(no_out.add_var(0));
  CHECK_FALSE(validate(no_out).empty());

  BranchingProgram range(1);
  BpNodeId r = range.add_var(3);
  range.add_edge(r, true, range.add_sink(true));
  range.set_start(r);
  CHECK_FALSE(validate(range).empty());
}

TEST_CASE("trim keeps the function and drops unproductive nodes") {
  Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<unsigned>(rng.between(1, 6));
    BranchingProgram bp = random_bp(rng, n, static_cast<unsigned>(rng.between(3, 20)));
    BranchingProgram tr = trim(bp);
    CHECK(validate(tr).empty());
    CHECK(tr.size() <= bp.size());
    CHECK(bp_truth_table(tr) == bp_truth_table(bp));
  }
  CHECK(trim(single_sink(false)).size() == 1);
}
