#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "widthkit/bench.hpp"
#include "widthkit/constructions.hpp"
#include "widthkit/netlist_io.hpp"

using namespace widthkit;

namespace {

struct Out {
  int code = 0;
  std::string out, err;
};

Out run(std::vector<std::string> args) {
  args.insert(args.begin(), "widthkit");
  std::ostringstream o, e;
  Out r;
  r.code = cli::run(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

std::string temp_path(const std::string& stem) {
  static std::atomic<unsigned> counter{0};
  auto dir = std::filesystem::temp_directory_path() / "widthkit-cli-test";
  std::filesystem::create_directories(dir);
  return (dir / (stem + "-" + std::to_string(counter++) + ".txt")).string();
}

std::string save(const std::string& text) {
  const std::string p = temp_path("netlist");
  write_text_file(p, text);
  return p;
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("build emits a parseable parity circuit") {
  Out r = run({"build", "parity", "-n", "4"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(parse_circuit(r.out) == build_parity(4));
}

TEST_CASE("eval prints the output bit") {
  const std::string p = save(write_circuit(build_parity(3)));
  CHECK(run({"eval", p, "110"}).out == "0\n");
  CHECK(run({"eval", p, "100"}).out == "1\n");
  CHECK(run({"eval", p, "10"}).code == cli::kExitError);
}

TEST_CASE("sat exit codes") {
  const std::string sat = save(write_circuit(build_nd_selector_f(4)));
  Out r = run({"sat", sat, "--oracle-check"});
  CHECK(r.code == cli::kExitSat);
  CHECK(r.out.rfind("s SATISFIABLE\nv ", 0) == 0);

  Circuit z(Basis::AndOrNot, 2);
  NodeId x = z.add_input(0);
  z.set_output(z.add_and(x, z.add_not(z.add_input(0))));
  Out u = run({"sat", save(write_circuit(z))});
  CHECK(u.code == cli::kExitUnsat);
  CHECK(u.out == "s UNSATISFIABLE\n");

  Out s = run({"sat", sat, "--stats", "-"});
  CHECK(s.err.rfind("restrictions,backend_calls,k,kept,target_kept,max_restricted_size,max_bp_size\n", 0) == 0);
}

TEST_CASE("equiv compares functions") {
  const std::string a = save(write_circuit(build_or_of_parities_det(4)));
  const std::string b = save(write_circuit(build_nd_selector_f(4)));
  const std::string c = save(write_circuit(build_parity(4)));
  CHECK(run({"equiv", a, b}).code == cli::kExitOk);
  CHECK(run({"equiv", a, b}).out == "equivalent\n");
  Out d = run({"equiv", a, c});
  CHECK(d.code == cli::kExitDifferent);
  CHECK(d.out == "different\n");
}

TEST_CASE("convert passes preserve the function") {
  const std::string src = save(write_circuit(build_nd_selector_f(4)));
  for (const char* pass : {"layerize", "to-bp", "determinize"}) {
    Out r = run({"convert", "--pass", pass, "--in", src});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(run({"equiv", src, save(r.out)}).code == cli::kExitOk);
  }
  Out bp = run({"convert", "--pass", "to-bp", "--in", src});
  Out back = run({"convert", "--pass", "bp-to-circuit", "--in", save(bp.out), "--report", "-"});
  REQUIRE(back.code == cli::kExitOk);
  CHECK(back.err.rfind("pass,s_in,w_in,s_out,w_out,depth,bound_value,bound_ok\n", 0) == 0);
  CHECK(run({"equiv", src, save(back.out)}).code == cli::kExitOk);
}

TEST_CASE("bench suites") {
  Out p = run({"bench", "parity"});
  CHECK(p.code == cli::kExitOk);
  CHECK(lines(p.out) == 20);
  Out empty = run({"bench", "to-bp", "--count", "0"});
  CHECK(empty.code == cli::kExitOk);
  CHECK(empty.out == BenchRow::csv_header() + "\n");
  CHECK(run({"bench", "lemma32", "--count", "3"}).out == run({"bench", "to-bp", "--count", "3"}).out);
  CHECK(run({"bench", "nonsense"}).code == cli::kExitError);
}

TEST_CASE("random builds are reproducible from the seed") {
  const std::vector<std::string> cmd{"--seed", "9", "build", "random", "-n", "5", "--size", "12", "--guesses", "2"};
  Out a = run(cmd), b = run(cmd);
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  Out bp = run({"--seed", "9", "build", "random-bp", "-n", "4", "--size", "10"});
  CHECK(bp.code == cli::kExitOk);
  CHECK(std::holds_alternative<BranchingProgram>(parse_any(bp.out)));
}

TEST_CASE("eliminate writes a trace") {
  const std::string src = save(write_circuit(build_parity(4)));
  Out r = run({"eliminate", src, "--trace", "-"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.err.rfind("step,var,value,count,eliminated,fate\n1,", 0) == 0);
  Circuit after = parse_circuit(r.out);
  CHECK(after.size() < build_parity(4).size());
}

TEST_CASE("stats and errors") {
  Out s = run({"stats", save(write_circuit(build_parity(3)))});
  CHECK(s.code == cli::kExitOk);
  CHECK(s.out.find("size") != std::string::npos);
  CHECK(run({"stats", "/nonexistent/file"}).code == cli::kExitError);
  CHECK(run({"frobnicate"}).code == cli::kExitError);
  Out bad = run({"eval", save("CIRCUIT n=1 g=0 basis=u2\n0 INPUT x2\nOUTPUT 0\n"), "1"});
  CHECK(bad.code == cli::kExitError);
  CHECK(bad.err.rfind("error: ", 0) == 0);
}
