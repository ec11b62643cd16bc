#pragma once

// Shared test helpers: seeded generators for random CNFs, truth tables and
// vtrees, plus two independent TDD constructions used as cross-checks
// against the library's compilation pipeline.

#include "treedd/cnf.hpp"
#include "treedd/error.hpp"
#include "treedd/minimize.hpp"
#include "treedd/oracle.hpp"
#include "treedd/tdd.hpp"
#include "treedd/transform.hpp"
#include "treedd/vtree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace treedd::testing {

using Rng = std::mt19937;

inline std::vector<Var> iota_vars(int n) {
    std::vector<Var> vs(n);
    std::iota(vs.begin(), vs.end(), Var{1});
    return vs;
}

inline CnfFormula random_cnf(Rng& rng, int nvars, int nclauses, int max_clause_len = 3) {
    CnfFormula f;
    f.variables = iota_vars(nvars);
    std::uniform_int_distribution<int> len(1, max_clause_len);
    std::uniform_int_distribution<int> var(1, nvars);
    std::uniform_int_distribution<int> sign(0, 1);
    while (static_cast<int>(f.clauses.size()) < nclauses) {
        std::vector<Lit> lits;
        int k = len(rng);
        for (int i = 0; i < k; ++i) {
            Lit l = var(rng);
            if (sign(rng))
                l = -l;
            lits.push_back(l);
        }
        bool taut = false;
        Clause c = make_clause(std::move(lits), &taut);
        if (!taut && !c.empty())
            f.clauses.push_back(std::move(c));
    }
    return f;
}

inline BoolFunTable random_table(Rng& rng, int nvars) {
    std::vector<bool> bits(uint64_t{1} << nvars);
    std::bernoulli_distribution bit(0.5);
    for (uint64_t i = 0; i < bits.size(); ++i)
        bits[i] = bit(rng);
    return BoolFunTable(iota_vars(nvars), std::move(bits));
}

/// Random-shape vtree over 1..n.
inline Vtree random_vtree(Rng& rng, int nvars) {
    std::vector<Var> vars = iota_vars(nvars);
    std::shuffle(vars.begin(), vars.end(), rng);
    std::vector<Vtree::Node> shape;
    std::function<int(int, int)> build = [&](int lo, int hi) -> int {
        int id = static_cast<int>(shape.size());
        shape.push_back({});
        if (hi - lo == 1) {
            shape[id] = {-1, -1, -1, vars[lo]};
            return id;
        }
        std::uniform_int_distribution<int> split(lo + 1, hi - 1);
        int mid = split(rng);
        int l = build(lo, mid);
        int r = build(mid, hi);
        shape[id].left = l;
        shape[id].right = r;
        return id;
    };
    int root = build(0, nvars);
    return Vtree::from_shape(shape, root);
}

/// Canonical-by-construction TDD straight from a truth table: one node per
/// distinct nontrivial X_t-subfunction, wired by restriction classes. This
/// is the independent construction the minimization theorems are checked
/// against.
inline Tdd tdd_from_table(const BoolFunTable& f, VtreePtr vt) {
    const Vtree& t = *vt;
    if (f.vars() != t.vars())
        throw domain_error("tdd_from_table: variable mismatch");
    if (f.model_count() == 0)
        return empty_function(vt);

    NTdd c;
    c.vtree = vt;
    c.families.assign(t.node_count(), {});
    // per vtree node: class id for each assignment index over X_t (-1 if the
    // subfunction is trivial), keyed by the restricted table bits
    std::vector<std::vector<int32_t>> class_of(t.node_count());
    for (int n = t.node_count() - 1; n >= 0; --n) {
        const auto& below = t.vars_below(n);
        std::map<std::vector<bool>, int32_t> classes;
        class_of[n].assign(uint64_t{1} << below.size(), -1);
        for (uint64_t i = 0; i < class_of[n].size(); ++i) {
            BoolFunTable sub = f.restrict(assignment_from_index(below, i));
            if (sub.is_constant_false())
                continue;
            std::vector<bool> key;
            for (uint64_t r = 0; r < sub.row_count(); ++r)
                key.push_back(sub.bit(r));
            auto [it, fresh] =
                classes.try_emplace(std::move(key), static_cast<int32_t>(classes.size()));
            class_of[n][i] = it->second;
        }
        c.families[n].assign(classes.size(), TddNode{});
        if (t.is_leaf(n)) {
            // indices: bit 0 of i is the leaf variable's value
            const int32_t c0 = class_of[n][0], c1 = class_of[n][1];
            if (c0 >= 0 && c0 == c1) {
                c.families[n][c0].label = LeafLabel::one;
            } else {
                if (c0 >= 0)
                    c.families[n][c0].label = LeafLabel::neg;
                if (c1 >= 0)
                    c.families[n][c1].label = LeafLabel::pos;
            }
        }
    }
    // wire pairs: the class of tau1 x tau2 gets the pair (class tau1, class tau2)
    for (int n = 0; n < t.node_count(); ++n) {
        if (t.is_leaf(n))
            continue;
        const int l = t.left(n), r = t.right(n);
        const auto& below = t.vars_below(n);
        const auto& lbelow = t.vars_below(l);
        const auto& rbelow = t.vars_below(r);
        std::vector<std::set<std::pair<int32_t, int32_t>>> pairs(c.families[n].size());
        for (uint64_t i = 0; i < class_of[n].size(); ++i) {
            if (class_of[n][i] < 0)
                continue;
            Assignment tau = assignment_from_index(below, i);
            uint64_t li = 0, ri = 0;
            for (size_t k = 0; k < lbelow.size(); ++k)
                li |= uint64_t{tau.value(lbelow[k])} << k;
            for (size_t k = 0; k < rbelow.size(); ++k)
                ri |= uint64_t{tau.value(rbelow[k])} << k;
            const int32_t cl = class_of[l][li], cr = class_of[r][ri];
            if (cl >= 0 && cr >= 0)
                pairs[class_of[n][i]].insert({cl, cr});
        }
        for (size_t g = 0; g < pairs.size(); ++g)
            c.families[n][g].pairs.assign(pairs[g].begin(), pairs[g].end());
    }
    // the root has exactly one nontrivial class (constant 1) since f has models
    c.output = 0;
    auto v = validate_deterministic(std::move(c));
    return std::get<Tdd>(std::move(v));
}

/// The completeness construction: OR of single-model TDDs, canonizing as it
/// goes. Slow, used at small scale as a second independent route.
inline Tdd model_union_tdd(const BoolFunTable& f, VtreePtr vt) {
    Tdd acc = empty_function(vt);
    for (uint64_t i = 0; i < f.row_count(); ++i) {
        if (!f.bit(i))
            continue;
        Tdd m = single_model_tdd(assignment_from_index(f.vars(), i), vt);
        acc = canonize(apply(op_or, acc, m));
    }
    return acc;
}

inline bool tables_equal(const BoolFunTable& a, const BoolFunTable& b) { return a == b; }

/// oracle comparison: the circuit computes exactly the table
inline bool matches_table(const NTdd& c, const BoolFunTable& f) {
    return exhaustive_table(c) == f;
}

} // namespace treedd::testing
