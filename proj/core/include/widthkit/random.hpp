#pragma once

#include <cstdint>
#include <random>

#include "widthkit/branching_program.hpp"
#include "widthkit/layered.hpp"

namespace widthkit {

/// Seed-addressed generator with a platform-independent integer draw
/// (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (eng_() >> 63) != 0; }
  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

struct RandomCircuitParams {
  Basis basis = Basis::AndOrNot;
  unsigned n_actual = 4;
  unsigned max_guess = 2;
  unsigned min_size = 1;
  unsigned max_size = 12;
  unsigned max_width = 3;
};

/// Layered ND circuit, all gates live. Layer widths are drawn in
/// [1, max_width] with a single output gate last; AND/OR/NOT (or U2 with
/// uniform parameters) gate kinds are uniform; every gate of one layer
/// feeds the next, remaining operands are uniform over the previous layer
/// and the variables. An input node is shared by the gates of one layer,
/// and each guess variable is read in one layer only. The guess count is
/// the number of guesses actually drawn.
LayeredCircuit random_layered_circuit(Rng& rng, const RandomCircuitParams& p);

/// Topologically numbered program: start 0, one 0-sink and one 1-sink last,
/// each inner node with 1 to 3 edges to later nodes. size >= 3.
BranchingProgram random_bp(Rng& rng, unsigned n_vars, unsigned size);

}  // namespace widthkit
