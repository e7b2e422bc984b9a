#include "widthkit/sat.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <numeric>

#include "parallel.hpp"
#include "widthkit/conversions.hpp"
#include "widthkit/error.hpp"
#include "widthkit/netlist_io.hpp"
#include "widthkit/random.hpp"
#include "widthkit/restrict.hpp"

namespace widthkit {

namespace {

std::optional<std::uint64_t> first_set(const TruthTable& t) {
  const auto& w = t.words();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i]) return i * 64 + static_cast<std::uint64_t>(std::countr_zero(w[i]));
  return std::nullopt;
}

std::vector<bool> bits_of(std::uint64_t v, unsigned n) {
  std::vector<bool> out(n);
  for (unsigned i = 0; i < n; ++i) out[i] = (v >> i) & 1u;
  return out;
}

Assignment to_assignment(const std::vector<bool>& w) {
  Assignment a(static_cast<unsigned>(w.size()), 0);
  for (unsigned i = 0; i < w.size(); ++i) a.set_actual(i, w[i]);
  return a;
}

// Result of one complement assignment.
struct Probe {
  bool hit = false;
  bool called = false;
  std::vector<bool> witness;
  std::size_t restricted_size = 0;
  std::size_t bp_size = 0;
};

}  // namespace

SatResult bp_sat_exhaustive(const BranchingProgram& bp) {
  SatResult r;
  if (auto v = first_set(bp_truth_table(bp))) {
    r.satisfiable = true;
    r.witness = bits_of(*v, bp.n_vars());
  }
  return r;
}

BpSatBackend exhaustive_backend() { return {"exhaustive", bp_sat_exhaustive}; }

void certify_backend(const BpSatBackend& backend, std::uint64_t seed, unsigned samples) {
  Rng rng(seed);
  for (unsigned i = 0; i < samples; ++i) {
    const auto n = static_cast<unsigned>(rng.between(1, 12));
    const auto size = static_cast<unsigned>(rng.between(3, 20));
    BranchingProgram bp = random_bp(rng, n, size);
    const bool expect = first_set(bp_truth_table(bp)).has_value();
    SatResult got = backend.solve(bp);
    if (got.satisfiable != expect)
      throw Error("backend " + backend.name + " disagrees on sample " + std::to_string(i) + ":\n" + write_bp(bp));
    if (got.satisfiable && (got.witness.size() != n || !bp_eval(bp, to_assignment(got.witness))))
      throw Error("backend " + backend.name + " returned a bad witness on sample " + std::to_string(i) + ":\n" +
                  write_bp(bp));
  }
}

std::vector<unsigned> select_low_read_vars(const Circuit& c, unsigned count) {
  const unsigned n = c.n_actual();
  if (count > n) throw Error("cannot select " + std::to_string(count) + " of " + std::to_string(n) + " variables");
  const auto reads = read_counts(c);
  std::vector<unsigned> vars(n);
  std::iota(vars.begin(), vars.end(), 0u);
  std::stable_sort(vars.begin(), vars.end(), [&](unsigned a, unsigned b) { return reads[a] < reads[b]; });
  vars.resize(count);
  return vars;
}

unsigned low_read_bound(const Circuit& c) {
  const std::size_t n = c.n_actual();
  if (n == 0) return 0;
  return static_cast<unsigned>((2 * c.size() + n - 1) / n);
}

SatResult ndbw_sat(const LayeredCircuit& lc, const BpSatBackend& backend, const RestrictionObserver& observe,
                   unsigned jobs) {
  if (auto problems = check_layering(lc); !problems.empty()) throw InvalidCircuit(problems.front());
  const Circuit& c = lc.circuit;
  const unsigned n = c.n_actual();

  SatResult result;
  auto& st = result.stats;
  st.k = low_read_bound(c);
  st.target_kept = (n + 1) / 2;
  const auto reads = read_counts(c);
  std::vector<bool> is_kept(n, false);
  for (unsigned v : select_low_read_vars(c, st.target_kept)) {
    if (reads[v] > st.k) break;
    is_kept[v] = true;
    ++st.kept;
  }
  std::vector<unsigned> brute;
  for (unsigned v = 0; v < n; ++v)
    if (!is_kept[v]) brute.push_back(v);
  if (brute.size() > 40) throw LimitExceeded("brute-forcing " + std::to_string(brute.size()) + " variables");
  const std::uint64_t total = std::uint64_t{1} << brute.size();

  auto probe = [&](std::uint64_t idx) {
    Probe p;
    Assignment a(n, 0);
    for (std::size_t i = 0; i < brute.size(); ++i) a.set_actual(brute[i], (idx >> i) & 1u);
    LayeredCircuit r = restrict(lc, a);
    p.restricted_size = r.size();
    const Node& out = r.circuit.node(r.circuit.output());
    std::vector<bool> w(n, false);
    if (out.kind == NodeKind::Const) {
      if (!out.value) return p;
      p.hit = true;
    } else {
      if (!is_read_k(r.circuit, st.k))
        throw Error("restricted circuit is not read-" + std::to_string(st.k) + ":\n" + write_circuit(r.circuit));
      if (observe) observe(r, st.k);
      BranchingProgram bp = circuit_to_bp(r).bp;
      p.bp_size = bp.size();
      p.called = true;
      SatResult sub;
      try {
        sub = backend.solve(bp);
      } catch (const std::exception& e) {
        throw Error("backend " + backend.name + " failed (" + e.what() + ") on:\n" + write_circuit(r.circuit));
      }
      if (!sub.satisfiable) return p;
      if (sub.witness.size() != n)
        throw Error("backend " + backend.name + " returned a witness of the wrong length on:\n" +
                    write_circuit(r.circuit));
      for (unsigned v = 0; v < n; ++v)
        if (is_kept[v]) w[v] = sub.witness[v];
      p.hit = true;
    }
    for (std::size_t i = 0; i < brute.size(); ++i) w[brute[i]] = (idx >> i) & 1u;
    if (!eval_nd(c, to_assignment(w)))
      throw Error("witness does not verify for restriction " + std::to_string(idx) + ":\n" +
                  write_circuit(r.circuit));
    p.witness = std::move(w);
    return p;
  };

  auto account = [&](const Probe& p) {
    ++st.restrictions;
    st.backend_calls += p.called;
    st.max_restricted_size = std::max(st.max_restricted_size, p.restricted_size);
    st.max_bp_size = std::max(st.max_bp_size, p.bp_size);
  };

  // Lexicographic blocks: a round hands one block to each worker, and blocks
  // are merged in index order so the first hit wins regardless of timing.
  constexpr std::uint64_t kBlock = 64;
  jobs = std::max(jobs, 1u);
  for (std::uint64_t base = 0; base < total;) {
    const std::uint64_t blocks = std::min<std::uint64_t>(jobs, (total - base + kBlock - 1) / kBlock);
    std::vector<std::vector<Probe>> done(blocks);
    std::vector<std::exception_ptr> failed(blocks);
    detail::parallel_chunks(blocks, static_cast<unsigned>(blocks), [&](std::size_t b, std::size_t e) {
      for (std::size_t blk = b; blk < e; ++blk) {
        try {
          const std::uint64_t lo = base + blk * kBlock, hi = std::min(total, lo + kBlock);
          for (std::uint64_t idx = lo; idx < hi; ++idx) {
            done[blk].push_back(probe(idx));
            if (done[blk].back().hit) break;
          }
        } catch (...) {
          failed[blk] = std::current_exception();
        }
      }
    });
    for (std::uint64_t blk = 0; blk < blocks; ++blk) {
      for (const Probe& p : done[blk]) {
        account(p);
        if (p.hit) {
          result.satisfiable = true;
          result.witness = p.witness;
          return result;
        }
      }
      if (failed[blk]) std::rethrow_exception(failed[blk]);
    }
    base += blocks * kBlock;
  }
  return result;
}

SatResult ndbw_sat(const Circuit& c, const BpSatBackend& backend) { return ndbw_sat(layerize(c), backend); }

SatResult brute_force_sat(const Circuit& c, unsigned arity_limit) {
  if (c.n_actual() + c.n_guess() > arity_limit)
    throw LimitExceeded("brute force over " + std::to_string(c.n_actual() + c.n_guess()) +
                        " variables exceeds limit " + std::to_string(arity_limit));
  SatResult r;
  if (auto v = first_set(truth_table(c, arity_limit))) {
    r.satisfiable = true;
    r.witness = bits_of(*v, c.n_actual());
  }
  return r;
}

}  // namespace widthkit
