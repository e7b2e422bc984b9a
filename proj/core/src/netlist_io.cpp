#include "widthkit/netlist_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "widthkit/error.hpp"

namespace widthkit {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

// Non-empty lines split on whitespace with comments stripped.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    Line l{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) l.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!l.tokens.empty()) lines.push_back(std::move(l));
    if (end == text.size()) break;
  }
  return lines;
}

std::uint64_t parse_uint(std::string_view s, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(s) + "'");
  return v;
}

bool parse_bit(std::string_view s, std::size_t line) {
  if (s == "0") return false;
  if (s == "1") return true;
  throw ParseError(line, "expected 0 or 1, got '" + std::string(s) + "'");
}

// "x3" -> 2, checked against the declared count.
unsigned parse_var(std::string_view s, char prefix, unsigned count, std::size_t line) {
  if (s.size() < 2 || s[0] != prefix)
    throw ParseError(line, std::string("expected ") + prefix + "<index>, got '" + std::string(s) + "'");
  auto i = parse_uint(s.substr(1), line, "variable index");
  if (i < 1 || i > count)
    throw ParseError(line, std::string(s) + " is outside 1.." + std::to_string(count));
  return static_cast<unsigned>(i - 1);
}

// "key=value" header field.
std::string_view field(const Line& l, std::size_t idx, std::string_view key) {
  if (idx >= l.tokens.size()) throw ParseError(l.number, "missing header field " + std::string(key));
  std::string_view t = l.tokens[idx];
  if (t.substr(0, key.size()) != key || t.size() <= key.size() || t[key.size()] != '=')
    throw ParseError(l.number, "expected " + std::string(key) + "=..., got '" + std::string(t) + "'");
  return t.substr(key.size() + 1);
}

void expect_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n)
    throw ParseError(l.number, "expected " + std::to_string(n - 1) + " fields after '" +
                                   std::string(l.tokens[0]) + "'");
}

}  // namespace

std::string write_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "CIRCUIT n=" << c.n_actual() << " g=" << c.n_guess() << " basis=" << to_string(c.basis()) << '\n';
  for (NodeId id = 0; id < c.node_count(); ++id) {
    const Node& n = c.nodes()[id];
    os << id << ' ' << to_string(n.kind);
    switch (n.kind) {
      case NodeKind::InputActual:
        os << " x" << n.var + 1;
        break;
      case NodeKind::InputGuess:
        os << " y" << n.var + 1;
        break;
      case NodeKind::Const:
        os << ' ' << (n.value ? 1 : 0);
        break;
      case NodeKind::U2:
        os << ' ' << n.u2.a << n.u2.b << n.u2.c;
        [[fallthrough]];
      default:
        for (NodeId p : n.fanin) os << ' ' << p;
    }
    os << '\n';
  }
  os << "OUTPUT " << c.output() << '\n';
  return os.str();
}

Circuit parse_circuit(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty circuit file");
  const Line& h = lines[0];
  if (h.tokens[0] != "CIRCUIT") throw ParseError(h.number, "expected CIRCUIT header");
  expect_arity(h, 4);
  const auto n = static_cast<unsigned>(parse_uint(field(h, 1, "n"), h.number, "n"));
  const auto g = static_cast<unsigned>(parse_uint(field(h, 2, "g"), h.number, "g"));
  auto bs = field(h, 3, "basis");
  Basis basis;
  if (bs == "u2")
    basis = Basis::U2;
  else if (bs == "and-or-not")
    basis = Basis::AndOrNot;
  else
    throw ParseError(h.number, "unknown basis '" + std::string(bs) + "'");

  Circuit c(basis, n, g);
  std::vector<std::size_t> line_of;
  bool have_output = false;
  std::size_t output_line = 0;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& l = lines[li];
    if (have_output) throw ParseError(l.number, "content after OUTPUT");
    if (l.tokens[0] == "OUTPUT") {
      expect_arity(l, 2);
      auto o = parse_uint(l.tokens[1], l.number, "node id");
      if (o >= c.node_count()) throw ParseError(l.number, "output node " + std::to_string(o) + " does not exist");
      c.set_output(static_cast<NodeId>(o));
      have_output = true;
      output_line = l.number;
      continue;
    }
    if (l.tokens.size() < 2) throw ParseError(l.number, "expected '<id> <KIND> ...'");
    auto id = parse_uint(l.tokens[0], l.number, "node id");
    if (id != c.node_count())
      throw ParseError(l.number, "node id " + std::to_string(id) + " out of sequence (expected " +
                                     std::to_string(c.node_count()) + ")");
    auto operand = [&](std::size_t i) {
      auto p = parse_uint(l.tokens[i], l.number, "operand id");
      if (p >= id)
        throw ParseError(l.number, "operand " + std::to_string(p) + " does not precede node " + std::to_string(id));
      return static_cast<NodeId>(p);
    };
    std::string_view k = l.tokens[1];
    Node nd;
    if (k == "INPUT") {
      expect_arity(l, 3);
      nd.kind = NodeKind::InputActual;
      nd.var = parse_var(l.tokens[2], 'x', n, l.number);
    } else if (k == "GUESS") {
      expect_arity(l, 3);
      nd.kind = NodeKind::InputGuess;
      nd.var = parse_var(l.tokens[2], 'y', g, l.number);
    } else if (k == "CONST") {
      expect_arity(l, 3);
      nd.kind = NodeKind::Const;
      nd.value = parse_bit(l.tokens[2], l.number);
    } else if (k == "AND" || k == "OR") {
      expect_arity(l, 4);
      nd.kind = k == "AND" ? NodeKind::And : NodeKind::Or;
      nd.fanin = {operand(2), operand(3)};
    } else if (k == "NOT" || k == "COPY") {
      expect_arity(l, 3);
      nd.kind = k == "NOT" ? NodeKind::Not : NodeKind::Copy;
      nd.fanin = {operand(2)};
    } else if (k == "U2") {
      expect_arity(l, 5);
      std::string_view abc = l.tokens[2];
      if (abc.size() != 3) throw ParseError(l.number, "U2 parameters must be three bits, got '" + std::string(abc) + "'");
      nd.kind = NodeKind::U2;
      nd.u2 = {parse_bit(abc.substr(0, 1), l.number), parse_bit(abc.substr(1, 1), l.number),
               parse_bit(abc.substr(2, 1), l.number)};
      nd.fanin = {operand(3), operand(4)};
    } else {
      throw ParseError(l.number, "unknown node kind '" + std::string(k) + "'");
    }
    c.add_raw(std::move(nd));
    line_of.push_back(l.number);
  }
  if (!have_output) throw ParseError(lines.back().number, "missing OUTPUT line");

  auto rep = validate(c);
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    std::size_t ln = v.node < line_of.size() ? line_of[v.node] : output_line;
    throw ParseError(ln, std::string(to_string(v.code)) + ": " + v.message);
  }
  return c;
}

std::string write_bp(const BranchingProgram& bp) {
  std::ostringstream os;
  os << "BP start=" << bp.start() << " n=" << bp.n_vars() << '\n';
  for (BpNodeId v = 0; v < bp.size(); ++v) {
    const auto& n = bp.nodes()[v];
    if (n.sink)
      os << v << " SINK " << (n.value ? 1 : 0) << '\n';
    else
      os << v << " VAR x" << n.var + 1 << '\n';
  }
  for (const auto& e : bp.edges()) os << "E " << e.from << ' ' << (e.label ? 1 : 0) << ' ' << e.to << '\n';
  return os.str();
}

BranchingProgram parse_bp(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty branching program file");
  const Line& h = lines[0];
  if (h.tokens[0] != "BP") throw ParseError(h.number, "expected BP header");
  if (h.tokens.size() != 2) expect_arity(h, 3);
  const auto start = parse_uint(field(h, 1, "start"), h.number, "start id");
  // Without n= the variable count is the largest index mentioned.
  unsigned n = 0;
  if (h.tokens.size() == 3) {
    n = static_cast<unsigned>(parse_uint(field(h, 2, "n"), h.number, "n"));
  } else {
    for (std::size_t li = 1; li < lines.size(); ++li)
      if (lines[li].tokens.size() == 3 && lines[li].tokens[1] == "VAR")
        n = std::max(n, parse_var(lines[li].tokens[2], 'x', ~0u, lines[li].number) + 1);
  }

  BranchingProgram bp(n);
  std::vector<std::size_t> edge_line;
  std::vector<std::size_t> node_line;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& l = lines[li];
    if (l.tokens[0] == "E") {
      expect_arity(l, 4);
      auto from = parse_uint(l.tokens[1], l.number, "node id");
      bool label = parse_bit(l.tokens[2], l.number);
      auto to = parse_uint(l.tokens[3], l.number, "node id");
      bp.add_edge(static_cast<BpNodeId>(from), label, static_cast<BpNodeId>(to));
      edge_line.push_back(l.number);
      continue;
    }
    if (l.tokens.size() != 3) throw ParseError(l.number, "expected '<id> VAR x<i>' or '<id> SINK <0|1>'");
    auto id = parse_uint(l.tokens[0], l.number, "node id");
    if (id != bp.size())
      throw ParseError(l.number, "node id " + std::to_string(id) + " out of sequence (expected " +
                                     std::to_string(bp.size()) + ")");
    if (l.tokens[1] == "VAR")
      bp.add_var(parse_var(l.tokens[2], 'x', n, l.number));
    else if (l.tokens[1] == "SINK")
      bp.add_sink(parse_bit(l.tokens[2], l.number));
    else
      throw ParseError(l.number, "unknown node kind '" + std::string(l.tokens[1]) + "'");
    node_line.push_back(l.number);
  }
  if (start >= bp.size()) throw ParseError(h.number, "start node " + std::to_string(start) + " does not exist");
  bp.set_start(static_cast<BpNodeId>(start));
  for (std::size_t e = 0; e < bp.edges().size(); ++e) {
    const auto& ed = bp.edges()[e];
    if (ed.from >= bp.size() || ed.to >= bp.size())
      throw ParseError(edge_line[e], "edge endpoint does not exist");
    if (bp.nodes()[ed.from].sink) throw ParseError(edge_line[e], "edge leaves sink " + std::to_string(ed.from));
  }
  std::vector<bool> has_out(bp.size(), false);
  for (const auto& ed : bp.edges()) has_out[ed.from] = true;
  for (BpNodeId v = 0; v < bp.size(); ++v)
    if (!bp.nodes()[v].sink && !has_out[v])
      throw ParseError(node_line[v], "inner node " + std::to_string(v) + " has no outgoing edge");
  if (auto errs = validate(bp); !errs.empty()) throw ParseError(0, errs.front());
  return bp;
}

Netlist parse_any(std::string_view text) {
  auto lines = tokenize(text);
  if (!lines.empty() && lines[0].tokens[0] == "BP") return parse_bp(text);
  return parse_circuit(text);
}

std::string write_any(const Netlist& n) {
  return std::visit(
      [](const auto& x) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Circuit>)
          return write_circuit(x);
        else
          return write_bp(x);
      },
      n);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace widthkit
