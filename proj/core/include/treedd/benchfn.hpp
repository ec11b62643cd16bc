#pragma once

#include "treedd/oracle.hpp"
#include "treedd/vtree.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace treedd {

/// Hidden weighted bit: HWB_n(x_1..x_n) = x_S where S is the number of ones;
/// the all-zero assignment (S = 0) evaluates to 0.
BoolFunTable hwb(int n);

/// Multiplexer over selectors x_0..x_{k-1} (variables 1..k) and data lines
/// y_0..y_{2^k-1} (variables k+1..k+2^k): true iff y_{[x]_2} = 1, where x_0
/// is the least significant selector bit.
BoolFunTable mux(int k);

/// Variable order (x_0..x_{k-1}, y_0..y_{n-1}) the MUX vtree arguments use.
std::vector<Var> mux_forward_order(int k);

/// Even parity: true iff an even number of variables is set.
BoolFunTable parity(int n);

/// Per-vtree-node nontrivial subfunction counts as CSV:
///   function,n,vtree-kind,vtree-node,subfunction-count,max
void fw_report(std::ostream& out, const std::string& name, const BoolFunTable& f,
               const std::vector<std::pair<std::string, Vtree>>& vtrees);

} // namespace treedd
