#include "treedd/cnf.hpp"

#include "treedd/error.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace treedd {

std::vector<Var> Clause::vars() const {
    std::vector<Var> vs;
    vs.reserve(lits.size());
    for (Lit l : lits)
        vs.push_back(var_of(l));
    return vs;
}

Lit Clause::lit_on(Var x) const {
    auto it = std::lower_bound(lits.begin(), lits.end(), x, [](Lit l, Var v) {
        return var_of(l) < v;
    });
    if (it != lits.end() && var_of(*it) == x)
        return *it;
    return 0;
}

Clause make_clause(std::vector<Lit> lits, bool* tautology) {
    if (tautology)
        *tautology = false;
    std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) {
        return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a < b;
    });
    std::vector<Lit> out;
    for (Lit l : lits) {
        if (l == 0)
            throw domain_error("clause: literal 0");
        if (!out.empty() && var_of(out.back()) == var_of(l)) {
            if (out.back() == l)
                continue; // duplicate literal
            if (tautology) {
                *tautology = true;
                return {};
            }
            throw domain_error("clause contains both polarities of variable " +
                               std::to_string(var_of(l)));
        }
        out.push_back(l);
    }
    return Clause{std::move(out)};
}

int CnfFormula::size() const {
    int s = 0;
    for (const auto& c : clauses)
        s += static_cast<int>(c.lits.size());
    return s;
}

CnfFormula parse_dimacs(std::istream& in, DimacsWarnings* warnings) {
    CnfFormula f;
    std::string line, word;
    int lineno = 0;
    long nvars = -1, nclauses = -1;
    std::vector<Lit> current;
    DimacsWarnings w;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (!(ls >> word))
            continue;
        if (word == "c" || word[0] == 'c')
            continue;
        if (word == "p") {
            std::string kind;
            if (!(ls >> kind >> nvars >> nclauses) || kind != "cnf" || nvars < 0)
                throw parse_error("bad 'p cnf' header", lineno);
            continue;
        }
        if (nvars < 0)
            throw parse_error("clause before 'p cnf' header", lineno);
        std::istringstream cs(line);
        long l;
        while (cs >> l) {
            if (l == 0) {
                bool taut = false;
                std::vector<Lit> raw = current;
                current.clear();
                // count duplicate literals before normalization
                std::vector<Lit> sorted_raw = raw;
                std::sort(sorted_raw.begin(), sorted_raw.end());
                w.duplicate_literals_dropped += static_cast<int>(
                    sorted_raw.size() -
                    (std::unique(sorted_raw.begin(), sorted_raw.end()) - sorted_raw.begin()));
                Clause c = make_clause(std::move(raw), &taut);
                if (taut)
                    ++w.tautological_clauses_dropped;
                else
                    f.clauses.push_back(std::move(c));
            } else {
                if (std::abs(l) > nvars)
                    throw parse_error("literal " + std::to_string(l) +
                                          " exceeds declared variable count",
                                      lineno);
                current.push_back(static_cast<Lit>(l));
            }
        }
        if (cs.fail() && !cs.eof())
            throw parse_error("bad token in clause line", lineno);
    }
    if (nvars < 0)
        throw parse_error("missing 'p cnf' header");
    if (!current.empty())
        throw parse_error("last clause not terminated by 0");
    for (long v = 1; v <= nvars; ++v)
        f.variables.push_back(static_cast<Var>(v));
    if (warnings)
        *warnings = w;
    return f;
}

void write_dimacs(std::ostream& out, const CnfFormula& f) {
    Var maxv = 0;
    for (Var v : f.variables)
        maxv = std::max(maxv, v);
    out << "p cnf " << maxv << " " << f.clauses.size() << "\n";
    for (const auto& c : f.clauses) {
        for (Lit l : c.lits)
            out << l << " ";
        out << "0\n";
    }
}

Graph primal_graph(const CnfFormula& f) {
    Graph g;
    for (Var v : f.variables)
        g.add_vertex(v);
    for (const auto& c : f.clauses)
        for (size_t i = 0; i < c.lits.size(); ++i)
            for (size_t j = i + 1; j < c.lits.size(); ++j)
                g.add_edge(var_of(c.lits[i]), var_of(c.lits[j]));
    g.normalize();
    return g;
}

uint32_t clause_vertex_base(const CnfFormula& f) {
    Var maxv = 0;
    for (Var v : f.variables)
        maxv = std::max(maxv, v);
    return maxv + 1;
}

Graph incidence_graph(const CnfFormula& f) {
    Graph g;
    const uint32_t base = clause_vertex_base(f);
    for (Var v : f.variables)
        g.add_vertex(v);
    for (size_t j = 0; j < f.clauses.size(); ++j) {
        g.add_vertex(base + static_cast<uint32_t>(j));
        for (Lit l : f.clauses[j].lits)
            g.add_edge(var_of(l), base + static_cast<uint32_t>(j));
    }
    g.normalize();
    return g;
}

} // namespace treedd
