#pragma once

#include "treedd/circuit.hpp"
#include "treedd/cnf.hpp"
#include "treedd/tdd.hpp"

#include <span>

namespace treedd {

/// Canonical width after each clause conjunction / gate apply step; the
/// observable behind the treewidth compilation guarantees.
struct CompileLog {
    std::vector<int> widths;
};

/// Bottom-up CNF compilation: start from the constant-1 TDD and fold in one
/// clause TDD at a time, canonizing after every conjunction. The result is
/// the canonical TDD of F for the given vtree, independent of clause order.
/// `clause_order` (a permutation of 0..m-1) overrides the natural order.
Tdd compile_cnf(const CnfFormula& f, VtreePtr t,
                std::span<const int> clause_order = {}, CompileLog* log = nullptr);

/// Per-gate bottom-up circuit compilation: literal TDDs at the inputs,
/// negate at not-gates, a left fold of apply at and/or-gates, canonizing
/// after every step. vars(C) must equal the vtree leaves.
Tdd compile_circuit(const Circuit& c, VtreePtr t, CompileLog* log = nullptr);

/// min-fill on the primal graph, then the primal-decomposition vtree; the
/// default pipeline when no vtree is supplied.
Vtree default_vtree_for(const CnfFormula& f);

} // namespace treedd
