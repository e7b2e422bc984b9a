#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "widthkit/branching_program.hpp"
#include "widthkit/circuit.hpp"

namespace widthkit {

// Circuit text:
//   CIRCUIT n=<n> g=<g> basis=<and-or-not|u2>
//   <id> INPUT x<i> | GUESS y<j> | CONST <0|1> | AND <p> <q> | OR <p> <q>
//        | NOT <p> | U2 <abc> <p> <q> | COPY <p>
//   OUTPUT <id>
// Node ids are 0-based and dense, variable names 1-based. `#` starts a comment.
//
// Branching program text:
//   BP start=<id> [n=<n>]      (n defaults to the largest variable index)
//   <id> VAR x<i> | <id> SINK <0|1>
//   E <from> <0|1> <to>

std::string write_circuit(const Circuit& c);
/// Throws ParseError naming the offending line, including for structural
/// violations found by validate().
Circuit parse_circuit(std::string_view text);

std::string write_bp(const BranchingProgram& bp);
BranchingProgram parse_bp(std::string_view text);

using Netlist = std::variant<Circuit, BranchingProgram>;
/// Dispatches on the header keyword.
Netlist parse_any(std::string_view text);
std::string write_any(const Netlist& n);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace widthkit
