#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "widthkit/branching_program.hpp"
#include "widthkit/layered.hpp"
#include "widthkit/netlist_io.hpp"

namespace widthkit {

/// One measured instance. ok == (measured <= bound).
struct BenchRow {
  std::string experiment;
  unsigned n = 0;
  std::size_t s_in = 0, w_in = 0, s_out = 0, w_out = 0;
  double bound = 0;
  double measured = 0;
  bool ok = false;
  std::optional<double> wall_ms;

  static std::string csv_header();
  std::string csv_row() const;
};

/// Parameters of a seed-addressed random circuit corpus; n, size and guess
/// count are drawn per instance, bases alternate AND/OR/NOT and U2.
struct CorpusSpec {
  unsigned count = 0;
  unsigned max_n = 6;
  unsigned max_size = 12;
  unsigned max_width = 3;
  unsigned max_guess = 3;
};

inline constexpr CorpusSpec kToBpCorpus{200, 6, 12, 3, 3};
inline constexpr CorpusSpec kDeterminizeCorpus{100, 6, 16, 3, 3};
inline constexpr CorpusSpec kSatCorpus{300, 14, 20, 3, 3};

std::vector<LayeredCircuit> circuit_corpus(const CorpusSpec& spec, std::uint64_t seed);

/// Seeded random programs with 3..max_size nodes over 1..max_vars variables.
std::vector<BranchingProgram> bp_corpus(unsigned count, unsigned max_vars, unsigned max_size, std::uint64_t seed);
inline constexpr unsigned kBpCorpusCount = 100;
inline constexpr unsigned kBpCorpusMaxVars = 6;
inline constexpr unsigned kBpCorpusMaxSize = 20;

struct BenchOptions {
  std::uint64_t seed = 0;
  /// Overrides the corpus size of the random suites.
  std::optional<unsigned> count;
  bool timing = false;
  unsigned jobs = 1;
};

/// Suites: to-bp (BP size vs 4^w s), determinize (width vs w_base + 2 depth),
/// bp-to-circuit (width vs C1 ceil(log2 s)), selector (size vs
/// 2n + c sqrt(n) log2 n), parity (size vs 3(n-1)).
/// Every conversion is also checked for truth-table equality; a mismatch
/// throws Error. Throws Error for an unknown suite.
std::vector<BenchRow> run_bench(const std::string& suite, const BenchOptions& opt = {});
const std::vector<std::string>& bench_suites();
/// Maps the legacy identifiers lemma32, thm14, thm17 and lemma42 onto the
/// suite names; any other name is returned unchanged.
std::string canonical_suite(const std::string& name);

/// Nondeterministic truth-table equality of two netlists of any kind. A
/// netlist with fewer variables is read as not depending on the extra ones.
bool equivalent(const Netlist& a, const Netlist& b, unsigned arity_limit = kDefaultArityLimit, unsigned jobs = 1);

TruthTable netlist_truth_table(const Netlist& n, unsigned arity_limit = kDefaultArityLimit, unsigned jobs = 1);

}  // namespace widthkit
