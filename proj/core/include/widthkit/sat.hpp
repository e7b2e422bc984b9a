#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "widthkit/branching_program.hpp"
#include "widthkit/circuit.hpp"
#include "widthkit/layered.hpp"

namespace widthkit {

struct SatStats {
  std::uint64_t restrictions = 0;   // complement assignments tried
  std::uint64_t backend_calls = 0;
  unsigned k = 0;                   // read bound ceil(2s/n) of the kept variables
  unsigned kept = 0;                // variables left to the backend
  unsigned target_kept = 0;         // ceil(n/2)
  std::size_t max_restricted_size = 0;
  std::size_t max_bp_size = 0;
  bool read_k_ok = true;            // every restricted circuit was read-k
};

struct SatResult {
  bool satisfiable = false;
  /// Total over the actual inputs when satisfiable.
  std::vector<bool> witness;
  SatStats stats;
};

/// Decides a branching program; a witness, when present, assigns every
/// variable of the program.
struct BpSatBackend {
  std::string name;
  std::function<SatResult(const BranchingProgram&)> solve;
};

/// Exact reference backend: one reachability pass per 64 valuations; the
/// witness is the smallest accepted valuation.
SatResult bp_sat_exhaustive(const BranchingProgram& bp);
BpSatBackend exhaustive_backend();

/// Runs the backend on `samples` seeded random programs with at most 12
/// variables and compares with bp_truth_table. Throws Error on a mismatch.
void certify_backend(const BpSatBackend& backend, std::uint64_t seed = 0, unsigned samples = 64);

/// `count` variables in ascending read count, ties by index.
std::vector<unsigned> select_low_read_vars(const Circuit& c, unsigned count);

/// Read bound ceil(2s/n) guaranteed for ceil(n/2) variables, s the gate count.
unsigned low_read_bound(const Circuit& c);

/// Hook inspecting every restricted circuit before conversion; called from
/// worker threads when jobs > 1.
using RestrictionObserver = std::function<void(const LayeredCircuit&, unsigned k)>;

/// Keeps up to ceil(n/2) variables of read count <= k = ceil(2s/n), taken by
/// select_low_read_vars, and brute-forces the others in ascending order (first
/// brute-forced variable least significant). Fewer than ceil(n/2) qualify only
/// when the circuit has more than s input nodes. Each restriction is
/// simplified in place, checked read-k, converted to a branching program and
/// handed to `backend`. The first hit in that order is returned, its witness
/// re-verified with eval_nd. Throws Error carrying the restricted instance
/// when the backend fails or returns a witness that does not verify.
SatResult ndbw_sat(const LayeredCircuit& lc, const BpSatBackend& backend,
                   const RestrictionObserver& observe = {}, unsigned jobs = 1);
SatResult ndbw_sat(const Circuit& c, const BpSatBackend& backend);

/// Oracle: smallest satisfying valuation over inputs x guesses.
SatResult brute_force_sat(const Circuit& c, unsigned arity_limit = kDefaultArityLimit);

}  // namespace widthkit
