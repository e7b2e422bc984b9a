#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <iterator>
#include <sstream>

#include "widthkit/bench.hpp"
#include "widthkit/constructions.hpp"
#include "widthkit/conversions.hpp"
#include "widthkit/error.hpp"
#include "widthkit/netlist_io.hpp"
#include "widthkit/random.hpp"
#include "widthkit/restrict.hpp"
#include "widthkit/sat.hpp"

namespace widthkit::cli {

namespace {

struct Globals {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  unsigned limit_arity = kDefaultArityLimit;
};

std::string slurp(const std::string& path) {
  if (path != "-") return read_text_file(path);
  return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
}

Netlist load(const std::string& path) { return parse_any(slurp(path)); }

Circuit load_circuit(const std::string& path) {
  Netlist n = load(path);
  if (auto* c = std::get_if<Circuit>(&n)) return std::move(*c);
  throw Error(path + ": expected a circuit, found a branching program");
}

BranchingProgram load_bp(const std::string& path) {
  Netlist n = load(path);
  if (auto* bp = std::get_if<BranchingProgram>(&n)) return std::move(*bp);
  throw Error(path + ": expected a branching program, found a circuit");
}

void emit(std::ostream& out, const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text_file(path, text);
}

void emit_report(std::ostream& err, const ConversionReport& r, const std::string& path) {
  if (path.empty()) return;
  const std::string text = ConversionReport::csv_header() + "\n" + r.csv_row() + "\n";
  if (path == "-")
    err << text;
  else
    write_text_file(path, text);
}

/// "x3=1" or "3=1", 1-based.
std::pair<unsigned, bool> parse_binding(const std::string& tok) {
  const auto eq = tok.find('=');
  std::string var = tok.substr(0, eq);
  if (!var.empty() && var[0] == 'x') var.erase(0, 1);
  if (eq == std::string::npos || var.empty() || eq + 2 != tok.size() || (tok[eq + 1] != '0' && tok[eq + 1] != '1'))
    throw Error("bad binding '" + tok + "', expected x<i>=<0|1>");
  const unsigned long i = std::stoul(var);
  if (i == 0) throw Error("variables are numbered from x1");
  return {static_cast<unsigned>(i - 1), tok[eq + 1] == '1'};
}

std::vector<bool> parse_bits(const std::string& s, unsigned n) {
  if (s.size() != n) throw Error("expected " + std::to_string(n) + " bits for x1..x" + std::to_string(n));
  std::vector<bool> bits;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw Error("bit string may contain only 0 and 1");
    bits.push_back(ch == '1');
  }
  return bits;
}

std::string join(const std::vector<unsigned>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

unsigned max_of(const std::vector<unsigned>& v) {
  unsigned m = 0;
  for (unsigned x : v) m = std::max(m, x);
  return m;
}

std::string witness_line(const std::vector<bool>& w) {
  std::string s = "v";
  for (std::size_t i = 0; i < w.size(); ++i) s += " x" + std::to_string(i + 1) + "=" + (w[i] ? "1" : "0");
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Layered nondeterministic circuits, branching programs and width conversions."};
  app.name(args.empty() ? "widthkit" : args[0]);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for random families and corpora")->envname("WIDTHKIT_SEED");
  app.add_option("--jobs", g.jobs, "Worker threads")->envname("WIDTHKIT_JOBS")->check(CLI::PositiveNumber);
  app.add_option("--limit-arity", g.limit_arity, "Largest arity for exhaustive truth tables")
      ->envname("WIDTHKIT_LIMIT_ARITY");

  std::string out_path;

  // build
  auto* build = app.add_subcommand("build", "Emit a circuit or branching program of a named family");
  std::string family;
  unsigned n = 4, size = 12, width = 3, guesses = 2;
  std::string basis = "and-or-not";
  build->add_option("family,--family", family, "parity | or-parities | nd-selector | random | random-bp")
      ->required()
      ->check(CLI::IsMember({"parity", "or-parities", "nd-selector", "random", "random-bp"}));
  build->add_option("-n,--n", n, "Number of actual inputs");
  build->add_option("--size", size, "Largest gate count (random) or node count (random-bp)");
  build->add_option("--width", width, "Largest layer width (random)");
  build->add_option("--guesses", guesses, "Largest guess count (random)");
  build->add_option("--basis", basis, "and-or-not | u2 (random)")->check(CLI::IsMember({"and-or-not", "u2"}));
  build->add_option("-o,--out", out_path, "Output file");

  // convert
  auto* convert = app.add_subcommand("convert", "Apply one conversion pass");
  std::string pass, in_path, report_path, assign;
  std::size_t base_size = kDefaultBaseSize;
  convert->add_option("--pass", pass, "layerize | to-bp | determinize | bp-to-circuit | restrict")
      ->required()
      ->check(CLI::IsMember({"layerize", "to-bp", "determinize", "bp-to-circuit", "restrict"}));
  convert->add_option("file,--in", in_path, "Input netlist, - for stdin")->required();
  convert->add_option("-o,--out", out_path, "Output file");
  convert->add_option("--report", report_path, "Write the conversion report as CSV (- for stderr)");
  convert->add_option("--base-size", base_size, "Segment size handled by enumeration (determinize)");
  convert->add_option("--assign", assign, "Comma-separated x<i>=<0|1> bindings (restrict)");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a netlist on one valuation");
  std::string bits;
  eval->add_option("file,--in", in_path, "Input netlist, - for stdin")->required();
  eval->add_option("bits,--x", bits, "Values of x1..xn, x1 first")->required();

  // sat
  auto* sat = app.add_subcommand("sat", "Decide satisfiability (exit 10 SAT, 20 UNSAT)");
  std::string backend_name = "exhaustive", stats_path;
  bool oracle_check = false;
  sat->add_option("file,--in", in_path, "Input netlist, - for stdin")->required();
  sat->add_option("--backend", backend_name, "BP satisfiability backend")->check(CLI::IsMember({"exhaustive"}));
  sat->add_flag("--oracle-check", oracle_check, "Also run brute force and fail on disagreement");
  sat->add_option("--stats", stats_path, "Write search statistics as CSV (- for stderr)");

  // stats
  auto* stats = app.add_subcommand("stats", "Print structural measurements");
  stats->add_option("file,--in", in_path, "Input netlist, - for stdin")->required();

  // equiv
  auto* equiv = app.add_subcommand("equiv", "Compare two netlists by truth table (exit 0 equal, 1 different)");
  std::string other_path;
  equiv->add_option("a", in_path, "First netlist")->required();
  equiv->add_option("b", other_path, "Second netlist")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Run a bound-verification suite and print CSV");
  std::string suite;
  std::optional<unsigned> count;
  bool timing = false;
  std::vector<std::string> suites = bench_suites();
  suites.emplace_back("all");
  bench->add_option("suite,--suite", suite, "to-bp | determinize | bp-to-circuit | selector | parity | all")
      ->required()
      ->transform([](std::string s) { return canonical_suite(s); })
      ->check(CLI::IsMember(suites));
  bench->add_option("--count", count, "Corpus size of the random suites");
  bench->add_flag("--timing", timing, "Fill the wall_ms column");
  bench->add_option("-o,--out", out_path, "Output file");

  // eliminate
  auto* elim = app.add_subcommand("eliminate", "Fix one variable and report the gates removed");
  std::optional<std::string> binding;
  std::string trace_path;
  bool all_steps = false;
  elim->add_option("file,--in", in_path, "Input circuit, - for stdin")->required();
  elim->add_option("--trace", trace_path, "Write one CSV row per elimination step (- for stderr)");
  elim->add_option("--assign", binding, "x<i>=<0|1>; default: the first blocking assignment");
  elim->add_flag("--all", all_steps, "Repeat blocking assignments until no gate reads two inputs");
  elim->add_option("-o,--out", out_path, "Output file");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*build) {
      std::string text;
      if (family == "parity") {
        text = write_circuit(build_parity(n));
      } else if (family == "or-parities") {
        text = write_circuit(build_or_of_parities_det(n));
      } else if (family == "nd-selector") {
        text = write_circuit(build_nd_selector_f(n));
      } else if (family == "random") {
        Rng rng(g.seed);
        RandomCircuitParams p;
        p.basis = basis == "u2" ? Basis::U2 : Basis::AndOrNot;
        p.n_actual = n;
        p.max_guess = guesses;
        p.max_size = size;
        p.max_width = width;
        text = write_circuit(random_layered_circuit(rng, p).circuit);
      } else {
        Rng rng(g.seed);
        text = write_bp(random_bp(rng, n, size));
      }
      emit(out, text, out_path);
      return kExitOk;
    }

    if (*convert) {
      if (pass == "bp-to-circuit") {
        WidthCircuit w = bp_to_width_circuit(load_bp(in_path));
        emit(out, write_circuit(w.circuit.circuit), out_path);
        emit_report(err, w.report, report_path);
        return kExitOk;
      }
      Circuit c = load_circuit(in_path);
      if (pass == "layerize") {
        emit(out, write_circuit(layerize(c).circuit), out_path);
      } else if (pass == "to-bp") {
        BpConversion r = circuit_to_bp(layerize(c));
        emit(out, write_bp(r.bp), out_path);
        emit_report(err, r.report, report_path);
      } else if (pass == "determinize") {
        Determinized d = determinize(layerize(c), base_size);
        emit(out, write_circuit(d.circuit.circuit), out_path);
        emit_report(err, d.report, report_path);
      } else {
        Assignment a(c.n_actual(), c.n_guess());
        std::stringstream ss(assign);
        for (std::string tok; std::getline(ss, tok, ',');) {
          if (tok.empty()) continue;
          auto [var, value] = parse_binding(tok);
          if (var >= c.n_actual()) throw Error("unknown variable " + tok);
          a.set_actual(var, value);
        }
        emit(out, write_circuit(restrict(c, a)), out_path);
      }
      return kExitOk;
    }

    if (*eval) {
      Netlist nl = load(in_path);
      const unsigned arity =
          std::holds_alternative<Circuit>(nl) ? std::get<Circuit>(nl).n_actual() : std::get<BranchingProgram>(nl).n_vars();
      std::vector<bool> x = parse_bits(bits, arity);
      Assignment a(arity, 0);
      for (unsigned i = 0; i < arity; ++i) a.set_actual(i, x[i]);
      const bool v = std::holds_alternative<Circuit>(nl) ? eval_nd(std::get<Circuit>(nl), a)
                                                         : bp_eval(std::get<BranchingProgram>(nl), a);
      out << (v ? "1" : "0") << "\n";
      return kExitOk;
    }

    if (*sat) {
      Netlist nl = load(in_path);
      SatResult r;
      if (auto* bp = std::get_if<BranchingProgram>(&nl)) {
        r = exhaustive_backend().solve(*bp);
        if (oracle_check && r.satisfiable != !bp_truth_table(*bp, g.limit_arity).is_constant(false))
          throw Error("backend disagrees with the truth table");
      } else {
        const Circuit& c = std::get<Circuit>(nl);
        r = ndbw_sat(layerize(c), exhaustive_backend(), {}, g.jobs);
        if (oracle_check && r.satisfiable != brute_force_sat(c, g.limit_arity).satisfiable)
          throw Error("ndbw_sat disagrees with brute force");
      }
      out << (r.satisfiable ? "s SATISFIABLE" : "s UNSATISFIABLE") << "\n";
      if (r.satisfiable) out << witness_line(r.witness) << "\n";
      if (!stats_path.empty()) {
        const auto& s = r.stats;
        const std::string text =
            "restrictions,backend_calls,k,kept,target_kept,max_restricted_size,max_bp_size\n" +
            std::to_string(s.restrictions) + ',' + std::to_string(s.backend_calls) + ',' + std::to_string(s.k) + ',' +
            std::to_string(s.kept) + ',' + std::to_string(s.target_kept) + ',' +
            std::to_string(s.max_restricted_size) + ',' + std::to_string(s.max_bp_size) + "\n";
        emit(err, text, stats_path);
      }
      return r.satisfiable ? kExitSat : kExitUnsat;
    }

    if (*stats) {
      Netlist nl = load(in_path);
      if (auto* c = std::get_if<Circuit>(&nl)) {
        LayeredCircuit lc = layerize(*c);
        const auto reads = read_counts(*c);
        out << "kind=circuit\nbasis=" << to_string(c->basis()) << "\nn=" << c->n_actual() << "\ng=" << c->n_guess()
            << "\nsize=" << c->size() << "\ncopies=" << c->copy_count() << "\ninput_nodes=" << actual_input_node_count(*c)
            << "\nreads=" << join(reads) << "\nmax_read=" << max_of(reads) << "\nlayered_depth=" << lc.depth()
            << "\nlayered_width=" << lc.width() << "\nlayered_copies=" << lc.circuit.copy_count() << "\n";
      } else {
        const auto& bp = std::get<BranchingProgram>(nl);
        const auto reads = read_multiplicities(bp);
        std::size_t sinks = 0;
        for (const auto& node : bp.nodes()) sinks += node.sink;
        out << "kind=bp\nn=" << bp.n_vars() << "\nsize=" << bp.size() << "\nsinks=" << sinks
            << "\nedges=" << bp.edges().size() << "\nread_multiplicity=" << join(reads)
            << "\nmax_read=" << max_of(reads) << "\ntrimmed_size=" << trim(bp).size() << "\n";
      }
      return kExitOk;
    }

    if (*equiv) {
      const bool same = equivalent(load(in_path), load(other_path), g.limit_arity, g.jobs);
      out << (same ? "equivalent" : "different") << "\n";
      return same ? kExitOk : kExitDifferent;
    }

    if (*bench) {
      BenchOptions opt;
      opt.seed = g.seed;
      opt.count = count;
      opt.timing = timing;
      opt.jobs = g.jobs;
      std::string text = BenchRow::csv_header() + "\n";
      bool all_ok = true;
      for (const auto& s : bench_suites()) {
        if (suite != "all" && suite != s) continue;
        for (const auto& row : run_bench(s, opt)) {
          text += row.csv_row() + "\n";
          all_ok = all_ok && row.ok;
        }
      }
      emit(out, text, out_path);
      return all_ok ? kExitOk : kExitDifferent;
    }

    if (*elim) {
      Circuit c = load_circuit(in_path);
      std::string trace = "step,var,value,count,eliminated,fate\n";
      for (unsigned step = 1;; ++step) {
        unsigned var;
        bool value;
        if (binding) {
          std::tie(var, value) = parse_binding(*binding);
        } else {
          BlockingAssignment b;
          try {
            b = find_blocking_assignment(c);
          } catch (const Error&) {
            if (step == 1) throw;
            break;
          }
          var = b.var;
          value = b.value;
        }
        // Gate ids refer to the circuit entering this step.
        Elimination e = gate_eliminate(c, var, value);
        std::string ids, fates;
        for (std::size_t i = 0; i < e.trace.eliminated.size(); ++i) {
          ids += (i ? ";" : "") + std::to_string(e.trace.eliminated[i]);
          fates += (i ? ";" : "") + std::string(to_string(e.trace.fate[i]));
        }
        trace += std::to_string(step) + ",x" + std::to_string(var + 1) + ',' + (value ? "1" : "0") + ',' +
                 std::to_string(e.trace.count) + ',' + ids + ',' + fates + "\n";
        c = std::move(e.circuit);
        if (binding || !all_steps) break;
      }
      if (!trace_path.empty()) emit(err, trace, trace_path);
      emit(out, write_circuit(c), out_path);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace widthkit::cli
