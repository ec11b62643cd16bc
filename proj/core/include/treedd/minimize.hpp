#pragma once

#include "treedd/tdd.hpp"

#include <string>
#include <vector>

namespace treedd {

/// Groups of pairwise twins in the family of vtree node t (never the root):
/// nodes whose sibling sets agree for every parent node. Only groups of two
/// or more are returned. Signatures are recomputed from scratch.
std::vector<std::vector<int32_t>> find_twins(const Tdd& c, int t);

/// Contracts one twin pair: the merged node takes the union of both input
/// sets and every parent keeps a single rewired pair. Throws if g1, g2 are
/// not twins.
Tdd contract_twins(const Tdd& c, int t, int32_t g1, int32_t g2);

/// m(C): zero elimination, dropping non-output root nodes, pruning nodes
/// with no path to the output, then bottom-up twin-contraction sweeps until
/// a fixpoint, and finally a canonical renumbering (families in vtree order,
/// nodes sorted by label / input-pair list). Isomorphic canonical circuits
/// serialize byte-identically. Per vtree node t the result has exactly one
/// node per nontrivial X_t-subfunction of f_C.
Tdd canonize(const Tdd& c);

/// Semantic equivalence via canonical forms; requires a shared vtree.
bool equivalent(const Tdd& c1, const Tdd& c2);

/// write_tdd into a string, for byte-identity checks.
std::string serialize_tdd(const NTdd& c);

} // namespace treedd
