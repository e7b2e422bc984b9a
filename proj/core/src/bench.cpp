#include "widthkit/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "widthkit/constructions.hpp"
#include "widthkit/conversions.hpp"
#include "widthkit/error.hpp"
#include "widthkit/random.hpp"

namespace widthkit {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Timer {
 public:
  explicit Timer(bool on) : on_(on), t0_(std::chrono::steady_clock::now()) {}
  std::optional<double> ms() const {
    if (!on_) return std::nullopt;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point t0_;
};

void require_equal(const TruthTable& a, const TruthTable& b, const std::string& what) {
  if (!(a == b)) throw Error(what + ": truth tables differ");
}

BenchRow row(std::string id, unsigned n, std::size_t s_in, std::size_t w_in, std::size_t s_out, std::size_t w_out,
             double bound, double measured, const Timer& t) {
  return {std::move(id), n, s_in, w_in, s_out, w_out, bound, measured, measured <= bound, t.ms()};
}

TruthTable extend(const TruthTable& t, unsigned n) {
  if (t.arity() == n) return t;
  TruthTable out(n);
  const std::uint64_t low = t.size() - 1;
  for (std::uint64_t v = 0; v < out.size(); ++v) out.set(v, t.get(v & low));
  return out;
}

}  // namespace

std::string BenchRow::csv_header() { return "experiment,n,s_in,w_in,s_out,w_out,bound,measured,ok,wall_ms"; }

std::string BenchRow::csv_row() const {
  return experiment + ',' + std::to_string(n) + ',' + std::to_string(s_in) + ',' + std::to_string(w_in) + ',' +
         std::to_string(s_out) + ',' + std::to_string(w_out) + ',' + num(bound) + ',' + num(measured) + ',' +
         (ok ? "1" : "0") + ',' + (wall_ms ? num(*wall_ms) : "");
}

std::vector<LayeredCircuit> circuit_corpus(const CorpusSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LayeredCircuit> out;
  for (unsigned i = 0; i < spec.count; ++i) {
    RandomCircuitParams p;
    p.basis = i % 2 ? Basis::U2 : Basis::AndOrNot;
    p.n_actual = static_cast<unsigned>(rng.between(1, spec.max_n));
    p.max_guess = spec.max_guess;
    p.max_size = spec.max_size;
    p.max_width = spec.max_width;
    out.push_back(random_layered_circuit(rng, p));
  }
  return out;
}

std::vector<BranchingProgram> bp_corpus(unsigned count, unsigned max_vars, unsigned max_size, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<BranchingProgram> out;
  for (unsigned i = 0; i < count; ++i) {
    const auto n = static_cast<unsigned>(rng.between(1, max_vars));
    const auto size = static_cast<unsigned>(rng.between(3, max_size));
    out.push_back(random_bp(rng, n, size));
  }
  return out;
}

const std::vector<std::string>& bench_suites() {
  static const std::vector<std::string> s{"to-bp", "determinize", "bp-to-circuit", "selector", "parity"};
  return s;
}

std::string canonical_suite(const std::string& name) {
  static const std::pair<const char*, const char*> aliases[] = {
      {"lemma32", "to-bp"}, {"thm14", "determinize"}, {"thm17", "bp-to-circuit"}, {"lemma42", "selector"}};
  for (const auto& [from, to] : aliases)
    if (name == from) return to;
  return name;
}

std::vector<BenchRow> run_bench(const std::string& name, const BenchOptions& opt) {
  const std::string suite = canonical_suite(name);
  std::vector<BenchRow> rows;
  auto sized = [&](CorpusSpec spec) {
    if (opt.count) spec.count = *opt.count;
    return spec;
  };
  if (suite == "to-bp") {
    auto corpus = circuit_corpus(sized(kToBpCorpus), opt.seed);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& lc = corpus[i];
      Timer t(opt.timing);
      BpConversion r = circuit_to_bp(lc);
      const std::string id = "to-bp/" + std::to_string(i);
      require_equal(truth_table(lc.circuit, kDefaultArityLimit, opt.jobs), bp_truth_table(r.bp), id);
      rows.push_back(row(id, lc.circuit.n_actual(), r.report.s_in, r.report.w_in, r.report.s_out, 0,
                         r.report.bound_value, static_cast<double>(r.report.s_out), t));
    }
  } else if (suite == "determinize") {
    auto corpus = circuit_corpus(sized(kDeterminizeCorpus), opt.seed);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& lc = corpus[i];
      Timer t(opt.timing);
      Determinized d = determinize(lc);
      const std::string id = "determinize/" + std::to_string(i);
      if (d.circuit.circuit.n_guess() != 0) throw Error(id + ": guesses remain");
      require_equal(truth_table(lc.circuit, kDefaultArityLimit, opt.jobs),
                    truth_table(d.circuit.circuit, kDefaultArityLimit, opt.jobs), id);
      rows.push_back(row(id, lc.circuit.n_actual(), d.report.s_in, d.report.w_in, d.report.s_out, d.report.w_out,
                         d.report.bound_value, static_cast<double>(d.report.w_out), t));
    }
  } else if (suite == "bp-to-circuit") {
    auto corpus = bp_corpus(opt.count.value_or(kBpCorpusCount), kBpCorpusMaxVars, kBpCorpusMaxSize, opt.seed);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& bp = corpus[i];
      Timer t(opt.timing);
      WidthCircuit w = bp_to_width_circuit(bp);
      const std::string id = "bp-to-circuit/" + std::to_string(i);
      require_equal(bp_truth_table(bp), truth_table(w.circuit.circuit, kDefaultArityLimit, opt.jobs), id);
      rows.push_back(row(id, bp.n_vars(), w.report.s_in, 0, w.report.s_out, w.report.w_out, w.report.bound_value,
                         static_cast<double>(w.report.w_out), t));
    }
  } else if (suite == "selector") {
    for (unsigned n : {4u, 9u, 16u}) {
      Timer t(opt.timing);
      Circuit sel = build_nd_selector_f(n);
      Circuit det = build_or_of_parities_det(n);
      const std::string id = "selector/" + std::to_string(n);
      require_equal(truth_table(sel, kDefaultArityLimit, opt.jobs), truth_table(det, kDefaultArityLimit, opt.jobs),
                    id);
      const double bound = 2.0 * n + kSelectorSizeC * std::sqrt(n) * std::log2(n);
      rows.push_back(row(id, n, det.size(), 0, sel.size(), layerize(sel).width(), bound,
                         static_cast<double>(sel.size()), t));
    }
  } else if (suite == "parity") {
    for (unsigned n = 2; n <= 20; ++n) {
      Timer t(opt.timing);
      Circuit c = build_parity(n);
      const std::string id = "parity/" + std::to_string(n);
      require_equal(truth_table(c, kDefaultArityLimit, opt.jobs), parity_function(n).table(), id);
      rows.push_back(row(id, n, 0, 0, c.size(), layerize(c).width(), 3.0 * (n - 1), static_cast<double>(c.size()), t));
    }
  } else {
    throw Error("unknown bench suite '" + suite + "'");
  }
  return rows;
}

TruthTable netlist_truth_table(const Netlist& n, unsigned arity_limit, unsigned jobs) {
  if (const auto* c = std::get_if<Circuit>(&n)) return truth_table(*c, arity_limit, jobs);
  return bp_truth_table(std::get<BranchingProgram>(n), arity_limit, jobs);
}

bool equivalent(const Netlist& a, const Netlist& b, unsigned arity_limit, unsigned jobs) {
  TruthTable ta = netlist_truth_table(a, arity_limit, jobs);
  TruthTable tb = netlist_truth_table(b, arity_limit, jobs);
  const unsigned n = std::max(ta.arity(), tb.arity());
  return extend(ta, n) == extend(tb, n);
}

}  // namespace widthkit
