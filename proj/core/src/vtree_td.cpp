#include "treedd/circuit.hpp"
#include "treedd/cnf.hpp"
#include "treedd/error.hpp"
#include "treedd/treedecomp.hpp"
#include "treedd/vtree.hpp"

#include <algorithm>
#include <functional>

namespace treedd {

namespace {

// Shared leaf-attachment construction: every variable x becomes a leaf
// attached above the shallowest decomposition node whose bag contains the
// vertex representing x; multi-way nodes are folded left-to-right and unary
// chains contracted.
Vtree vtree_from_td_impl(const TreeDecomp& td,
                         const std::vector<std::pair<Var, uint32_t>>& var_vertex,
                         int root) {
    if (var_vertex.empty())
        throw domain_error("vtree construction: no variables");
    auto children = td.rooted_children(root);
    const int nbags = static_cast<int>(td.bags.size());

    // depth and preorder rank of each bag under the chosen root
    std::vector<int> depth(nbags, -1), pre(nbags, -1);
    {
        int rank = 0;
        std::function<void(int, int)> walk = [&](int t, int d) {
            depth[t] = d;
            pre[t] = rank++;
            for (int u : children[t])
                walk(u, d + 1);
        };
        walk(root, 0);
    }

    // anchor: shallowest bag containing the variable's vertex; preorder rank
    // breaks (impossible under connectedness, but defensive) ties
    std::vector<std::vector<Var>> attached(nbags);
    for (auto [x, vertex] : var_vertex) {
        int best = -1;
        for (int t = 0; t < nbags; ++t) {
            if (!std::binary_search(td.bags[t].begin(), td.bags[t].end(), vertex))
                continue;
            if (best < 0 || depth[t] < depth[best] ||
                (depth[t] == depth[best] && pre[t] < pre[best]))
                best = t;
        }
        if (best < 0)
            throw domain_error("vtree construction: vertex " + std::to_string(vertex) +
                               " appears in no bag");
        attached[best].push_back(x);
    }
    for (auto& a : attached)
        std::sort(a.begin(), a.end());

    std::vector<Vtree::Node> shape;
    auto leaf = [&](Var x) {
        shape.push_back({-1, -1, -1, x});
        return static_cast<int>(shape.size()) - 1;
    };
    auto internal = [&](int l, int r) {
        shape.push_back({l, r, -1, 0});
        return static_cast<int>(shape.size()) - 1;
    };
    // right-nested fold; a single element contracts to itself
    auto fold = [&](const std::vector<int>& elems) -> int {
        if (elems.empty())
            return -1;
        int acc = elems.back();
        for (int i = static_cast<int>(elems.size()) - 2; i >= 0; --i)
            acc = internal(elems[i], acc);
        return acc;
    };
    std::function<int(int)> build = [&](int t) -> int {
        std::vector<int> elems;
        for (Var x : attached[t])
            elems.push_back(leaf(x));
        std::vector<int> below;
        for (int u : children[t]) {
            int s = build(u);
            if (s >= 0)
                below.push_back(s);
        }
        int body = fold(below);
        if (body >= 0)
            elems.push_back(body);
        return fold(elems);
    };
    int top = build(root);
    if (top < 0)
        throw domain_error("vtree construction: empty result");
    return Vtree::from_shape(shape, top);
}

} // namespace

Vtree vtree_from_primal_td(const TreeDecomp& td, const CnfFormula& f, int root) {
    validate_tree_decomp(td, primal_graph(f));
    std::vector<std::pair<Var, uint32_t>> vv;
    for (Var x : f.variables)
        vv.emplace_back(x, x);
    return vtree_from_td_impl(td, vv, root);
}

Vtree vtree_from_incidence_td(const TreeDecomp& td, const CnfFormula& f, int root) {
    validate_tree_decomp(td, incidence_graph(f));
    std::vector<std::pair<Var, uint32_t>> vv;
    for (Var x : f.variables)
        vv.emplace_back(x, x);
    return vtree_from_td_impl(td, vv, root);
}

Vtree vtree_from_circuit_td(const TreeDecomp& td, const Circuit& c, int root) {
    if (c.output < 0)
        throw domain_error("vtree construction: circuit has no output");
    TreeDecomp augmented = td;
    const auto out_vertex = static_cast<uint32_t>(c.output + 1);
    for (auto& bag : augmented.bags) {
        if (!std::binary_search(bag.begin(), bag.end(), out_vertex)) {
            bag.push_back(out_vertex);
            std::sort(bag.begin(), bag.end());
        }
    }
    validate_tree_decomp(augmented, circuit_graph(c));
    std::vector<std::pair<Var, uint32_t>> vv;
    for (size_t i = 0; i < c.gates.size(); ++i)
        if (c.gates[i].kind == Circuit::GateKind::input)
            vv.emplace_back(c.gates[i].var, static_cast<uint32_t>(i + 1));
    std::sort(vv.begin(), vv.end());
    return vtree_from_td_impl(augmented, vv, root);
}

} // namespace treedd
