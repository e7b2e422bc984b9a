#pragma once

#include <algorithm>

#include "widthkit/circuit.hpp"
#include "widthkit/random.hpp"

namespace testutil {

using namespace widthkit;

/// Unlayered DAG: every new gate picks its operands uniformly among all
/// earlier nodes, so edges skip layers freely. Each guess gets one node.
inline Circuit random_flat(Rng& rng, unsigned n, unsigned g, unsigned gates, Basis basis) {
  Circuit c(basis, n, g);
  std::vector<NodeId> pool;
  for (unsigned i = 0; i < n; ++i) {
    pool.push_back(c.add_input(i));
    if (rng.coin()) pool.push_back(c.add_input(i));
  }
  for (unsigned j = 0; j < g; ++j) pool.push_back(c.add_guess(j));
  NodeId last = pool.back();
  for (unsigned k = 0; k < gates; ++k) {
    const std::size_t m = pool.size();
    const std::size_t pi = rng.below(m);
    const NodeId p = pool[pi];
    const bool unary = m == 1 || rng.below(basis == Basis::U2 ? 9 : 3) == 0;
    if (unary) {
      last = c.add_not(p);
    } else {
      const NodeId q = pool[(pi + 1 + rng.below(m - 1)) % m];
      if (basis == Basis::U2) {
        const auto abc = rng.below(8);
        last = c.add_u2(U2Params{(abc & 4u) != 0, (abc & 2u) != 0, (abc & 1u) != 0}, p, q);
      } else {
        last = rng.coin() ? c.add_and(p, q) : c.add_or(p, q);
      }
    }
    if (std::find(pool.begin(), pool.end(), last) == pool.end()) pool.push_back(last);
  }
  c.set_output(last);
  return c;
}

}  // namespace testutil
