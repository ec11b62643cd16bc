#include "treedd/compile.hpp"

#include "treedd/error.hpp"
#include "treedd/minimize.hpp"
#include "treedd/transform.hpp"

#include <algorithm>
#include <numeric>

namespace treedd {

Tdd compile_cnf(const CnfFormula& f, VtreePtr t, std::span<const int> clause_order,
                CompileLog* log) {
    for (const auto& c : f.clauses)
        for (Lit l : c.lits)
            if (!t->has_var(var_of(l)))
                throw domain_error("compile: clause variable " +
                                   std::to_string(var_of(l)) + " not in the vtree");
    std::vector<int> order(f.clauses.size());
    std::iota(order.begin(), order.end(), 0);
    if (!clause_order.empty()) {
        if (clause_order.size() != f.clauses.size())
            throw domain_error("compile: clause order length mismatch");
        order.assign(clause_order.begin(), clause_order.end());
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != static_cast<int>(i))
                throw domain_error("compile: clause order is not a permutation");
    }
    Tdd acc = constant_tdd(true, t);
    for (int i : order) {
        acc = canonize(conjoin(acc, clause_tdd(f.clauses[i], t)));
        if (log)
            log->widths.push_back(acc.width());
    }
    return acc;
}

Tdd compile_circuit(const Circuit& c, VtreePtr t, CompileLog* log) {
    if (c.input_vars() != t->vars())
        throw domain_error("compile: circuit variables differ from the vtree leaves");
    std::vector<Tdd> built(c.gates.size());
    auto note = [&](const Tdd& d) {
        if (log)
            log->widths.push_back(d.width());
    };
    for (size_t i = 0; i < c.gates.size(); ++i) {
        const auto& g = c.gates[i];
        switch (g.kind) {
        case Circuit::GateKind::input:
            built[i] = canonize(literal_tdd(static_cast<Lit>(g.var), t));
            break;
        case Circuit::GateKind::g_not:
            built[i] = canonize(negate(built[g.fanin[0]]));
            note(built[i]);
            break;
        case Circuit::GateKind::g_and:
        case Circuit::GateKind::g_or: {
            const BoolOp op = g.kind == Circuit::GateKind::g_and ? op_and : op_or;
            Tdd acc = built[g.fanin[0]];
            for (size_t j = 1; j < g.fanin.size(); ++j) {
                acc = canonize(apply(op, acc, built[g.fanin[j]]));
                note(acc);
            }
            built[i] = std::move(acc);
            break;
        }
        }
    }
    return built[c.output];
}

Vtree default_vtree_for(const CnfFormula& f) {
    return vtree_from_primal_td(min_fill_td(primal_graph(f)), f);
}

} // namespace treedd
