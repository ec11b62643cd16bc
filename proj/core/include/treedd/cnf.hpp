#pragma once

#include "treedd/treedecomp.hpp"
#include "treedd/vtree.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace treedd {

/// A literal is a DIMACS-signed variable: +v or -v, v >= 1.
using Lit = int32_t;

inline Var var_of(Lit l) { return static_cast<Var>(l < 0 ? -l : l); }
inline bool is_positive(Lit l) { return l > 0; }

/// Clause as a set of literals, kept sorted by variable. Never contains two
/// literals over the same variable.
struct Clause {
    std::vector<Lit> lits;

    bool empty() const { return lits.empty(); }
    std::vector<Var> vars() const;
    /// nullopt-like: returns 0 if the clause has no literal on x, else +-x.
    Lit lit_on(Var x) const;
};

/// Builds a clause from literals; throws on duplicate variables, returns
/// false through `tautology` instead of throwing when x and -x both occur.
Clause make_clause(std::vector<Lit> lits, bool* tautology = nullptr);

struct CnfFormula {
    std::vector<Var> variables; // sorted; may include variables in no clause
    std::vector<Clause> clauses;

    int clause_count() const { return static_cast<int>(clauses.size()); }
    /// sum over clauses of their literal count
    int size() const;
};

struct DimacsWarnings {
    int tautological_clauses_dropped = 0;
    int duplicate_literals_dropped = 0;
};

/// DIMACS CNF: `p cnf <n> <m>` header, 0-terminated clause lines, `c` comments.
/// Variables are 1..n; tautological clauses are dropped (counted in warnings).
CnfFormula parse_dimacs(std::istream& in, DimacsWarnings* warnings = nullptr);
void write_dimacs(std::ostream& out, const CnfFormula& f);

/// Vertices are the variables; x,y adjacent iff they share a clause.
Graph primal_graph(const CnfFormula& f);

/// Bipartite variable/clause graph. Clause j gets vertex id
/// clause_vertex_base(f) + j.
Graph incidence_graph(const CnfFormula& f);
uint32_t clause_vertex_base(const CnfFormula& f);

} // namespace treedd
