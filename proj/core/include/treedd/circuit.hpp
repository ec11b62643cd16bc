#pragma once

#include "treedd/oracle.hpp"
#include "treedd/treedecomp.hpp"
#include "treedd/vtree.hpp"

#include <iosfwd>
#include <vector>

namespace treedd {

/// Boolean circuit over input/and/or/not gates with one output and at most
/// one input gate per variable.
struct Circuit {
    enum class GateKind { input, g_not, g_and, g_or };

    struct Gate {
        GateKind kind = GateKind::input;
        Var var = 0;             // input gates
        std::vector<int> fanin;  // not: 1, and/or: >= 1
    };

    std::vector<Gate> gates;
    int output = -1;

    std::vector<Var> input_vars() const; // sorted
};

/// Line-based circuit format (gate ids are arbitrary nonnegative integers):
///   input <id> <var>
///   not <id> <child>
///   and <id> <child> <child> ...
///   or <id> <child> <child> ...
///   output <id>
/// Gates are renumbered in reading order; cycles and duplicate variable
/// inputs are rejected.
Circuit parse_circuit(std::istream& in);
void write_circuit(std::ostream& out, const Circuit& c);

/// Underlying graph: one vertex per gate (1-based gate index), one edge per
/// wire.
Graph circuit_graph(const Circuit& c);

bool eval_circuit(const Circuit& c, const Assignment& tau);
BoolFunTable fun_from_circuit(const Circuit& c,
                              int max_vars = BoolFunTable::kMaxOracleVars);

} // namespace treedd
