#include "treedd/transform.hpp"

#include "treedd/error.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace treedd {

BoolOp BoolOp::from_name(const std::string& name) {
    if (name == "and") return BoolOp{kAnd};
    if (name == "or") return BoolOp{kOr};
    if (name == "xor") return BoolOp{kXor};
    if (name == "implies") return BoolOp{kImplies};
    if (name == "iff") return BoolOp{kIff};
    if (name == "nand") return BoolOp{kNand};
    if (name == "nor") return BoolOp{kNor};
    if (name == "andnot") return BoolOp{kAndNot};
    if (name.size() == 4 && name.find_first_not_of("01") == std::string::npos) {
        uint8_t t = 0;
        // written f(1,1) f(1,0) f(0,1) f(0,0)
        for (int i = 0; i < 4; ++i)
            if (name[i] == '1')
                t |= 1 << (3 - i);
        return BoolOp{t};
    }
    throw domain_error("unknown boolean operation '" + name + "'");
}

namespace {

// node-has-a-model flags computed bottom-up; duplicated from tdd.cpp's
// internal helper because both files need it privately
std::vector<std::vector<char>> live_flags(const NTdd& c) {
    const Vtree& vt = *c.vtree;
    std::vector<std::vector<char>> live(vt.node_count());
    for (int t = vt.node_count() - 1; t >= 0; --t) {
        const auto& fam = c.families[t];
        live[t].assign(fam.size(), 0);
        for (size_t g = 0; g < fam.size(); ++g) {
            if (vt.is_leaf(t)) {
                live[t][g] = fam[g].label != LeafLabel::zero;
            } else {
                for (auto [a, b] : fam[g].pairs)
                    if (live[vt.left(t)][a] && live[vt.right(t)][b]) {
                        live[t][g] = 1;
                        break;
                    }
            }
        }
    }
    return live;
}

NTdd eliminate_zeros_impl(const NTdd& c) {
    const Vtree& vt = *c.vtree;
    auto live = live_flags(c);
    if (!live[vt.root()][c.output])
        return empty_function(c.vtree);
    NTdd out;
    out.vtree = c.vtree;
    out.families.assign(vt.node_count(), {});
    std::vector<std::vector<int32_t>> remap(vt.node_count());
    for (int t = vt.node_count() - 1; t >= 0; --t) {
        const auto& fam = c.families[t];
        remap[t].assign(fam.size(), -1);
        for (size_t g = 0; g < fam.size(); ++g) {
            if (!live[t][g])
                continue;
            TddNode node;
            node.label = fam[g].label;
            if (!vt.is_leaf(t)) {
                for (auto [a, b] : fam[g].pairs)
                    if (remap[vt.left(t)][a] >= 0 && remap[vt.right(t)][b] >= 0)
                        node.pairs.emplace_back(remap[vt.left(t)][a],
                                                remap[vt.right(t)][b]);
                std::sort(node.pairs.begin(), node.pairs.end());
            }
            remap[t][g] = static_cast<int32_t>(out.families[t].size());
            out.families[t].push_back(std::move(node));
        }
    }
    out.output = remap[vt.root()][c.output];
    return out;
}

LeafLabel merge_labels(std::span<const LeafLabel> labels) {
    bool m0 = false, m1 = false; // models x=0 / x=1 covered
    for (LeafLabel l : labels) {
        m0 |= l == LeafLabel::neg || l == LeafLabel::one;
        m1 |= l == LeafLabel::pos || l == LeafLabel::one;
    }
    if (m0 && m1)
        return LeafLabel::one;
    if (m1)
        return LeafLabel::pos;
    if (m0)
        return LeafLabel::neg;
    return LeafLabel::zero;
}

// Shared worker for remove_unused_variable and forget: removes leaf x whose
// family contains only constants, merging each parent node's used u-nodes
// into one. Works for non-deterministic circuits too.
NTdd remove_constant_leaf(const NTdd& c0, Var x) {
    const VtreePtr vtp = c0.vtree;
    const Vtree& vt = *vtp;
    const int leaf = vt.leaf_of(x);
    for (const auto& n : c0.families[leaf])
        if (n.label == LeafLabel::pos || n.label == LeafLabel::neg)
            throw domain_error("remove variable: circuit depends on " + std::to_string(x));

    auto removal = remove_leaf_mapped(vt, x);
    VtreePtr newtree = share(std::move(removal.tree));

    NTdd c = eliminate_zeros_impl(c0);
    if (is_empty_marker(c))
        return empty_function(newtree);

    const int par = vt.parent(leaf);
    const int sib = vt.left(par) == leaf ? vt.right(par) : vt.left(par);
    const bool leaf_is_left = vt.left(par) == leaf;
    // after zero elimination the leaf family is one or more 1-labeled nodes

    const auto& parent_fam = c.families[par];
    // one merged sibling node per parent node, indexed like the parent family
    std::vector<TddNode> merged(parent_fam.size());
    for (size_t h = 0; h < parent_fam.size(); ++h) {
        std::set<int32_t> used; // u-nodes paired with any 1-labeled leaf node
        for (auto [a, b] : parent_fam[h].pairs)
            used.insert(leaf_is_left ? b : a);
        if (vt.is_leaf(sib)) {
            std::vector<LeafLabel> labels;
            for (int32_t u : used)
                labels.push_back(c.families[sib][u].label);
            merged[h].label = merge_labels(labels);
        } else {
            std::set<std::pair<int32_t, int32_t>> pairs;
            for (int32_t u : used)
                pairs.insert(c.families[sib][u].pairs.begin(),
                             c.families[sib][u].pairs.end());
            merged[h].pairs.assign(pairs.begin(), pairs.end());
        }
    }

    NTdd out;
    out.vtree = newtree;
    out.families.assign(newtree->node_count(), {});
    for (int t = 0; t < vt.node_count(); ++t) {
        int nt = removal.node_map[t];
        if (nt < 0)
            continue; // the removed leaf and its contracted parent
        if (t == sib)
            out.families[nt] = merged;
        else
            out.families[nt] = c.families[t];
    }
    // Parent pairs referencing the par family keep their indices: merged[h]
    // sits at index h, so even the output index survives when par is the root.
    out.output = c.output;
    return out;
}

} // namespace

NTdd eliminate_zeros(const NTdd& c) { return eliminate_zeros_impl(c); }

Tdd eliminate_zeros(const Tdd& c) {
    // removals cannot introduce duplicate pairs or labels
    return Tdd(eliminate_zeros_impl(c), Tdd::unchecked_t{});
}

Tdd remove_unused_variable(const Tdd& c, Var x) {
    return Tdd(remove_constant_leaf(c, x), Tdd::unchecked_t{});
}

Tdd condition(const Tdd& c, Var x, bool b) {
    const Vtree& vt = *c.vtree;
    if (!vt.has_var(x))
        throw domain_error("condition: unknown variable " + std::to_string(x));
    if (vt.var_count() < 2)
        throw domain_error("condition: cannot remove the last variable");
    NTdd relabeled = c;
    const LeafLabel sat = b ? LeafLabel::pos : LeafLabel::neg;
    for (auto& n : relabeled.families[vt.leaf_of(x)]) {
        if (n.label == sat)
            n.label = LeafLabel::one;
        else if (n.label == LeafLabel::pos || n.label == LeafLabel::neg)
            n.label = LeafLabel::zero;
    }
    return Tdd(remove_constant_leaf(relabeled, x), Tdd::unchecked_t{});
}

Tdd make_full(const Tdd& c) {
    NTdd out = c;
    const Vtree& vt = *out.vtree;
    for (int t = vt.node_count() - 1; t >= 0; --t) { // children first
        auto& fam = out.families[t];
        if (vt.is_leaf(t)) {
            bool have_one = false, have_pos = false, have_neg = false;
            for (const auto& n : fam) {
                have_one |= n.label == LeafLabel::one;
                have_pos |= n.label == LeafLabel::pos;
                have_neg |= n.label == LeafLabel::neg;
            }
            if (have_one)
                continue;
            if (!have_pos)
                fam.push_back(TddNode{LeafLabel::pos, {}});
            if (!have_neg)
                fam.push_back(TddNode{LeafLabel::neg, {}});
        } else {
            const auto nl = static_cast<int32_t>(out.families[vt.left(t)].size());
            const auto nr = static_cast<int32_t>(out.families[vt.right(t)].size());
            std::vector<char> covered(static_cast<size_t>(nl) * nr, 0);
            for (const auto& n : fam)
                for (auto [a, b] : n.pairs)
                    covered[static_cast<size_t>(a) * nr + b] = 1;
            TddNode collector;
            for (int32_t a = 0; a < nl; ++a)
                for (int32_t b = 0; b < nr; ++b)
                    if (!covered[static_cast<size_t>(a) * nr + b])
                        collector.pairs.emplace_back(a, b);
            if (!collector.pairs.empty())
                fam.push_back(std::move(collector));
        }
    }
    return Tdd(std::move(out), Tdd::unchecked_t{});
}

Tdd negate(const Tdd& c) {
    Tdd full = make_full(c);
    const Vtree& vt = *full.vtree;
    const int root = vt.root();
    auto& fam = full.families[root];
    if (vt.is_leaf(root)) {
        std::vector<LeafLabel> rest;
        for (size_t g = 0; g < fam.size(); ++g)
            if (static_cast<int32_t>(g) != full.output)
                rest.push_back(fam[g].label);
        LeafLabel merged = merge_labels(rest);
        if (merged == LeafLabel::zero)
            return empty_function(full.vtree);
        NTdd out = full;
        out.families[root] = {fam[full.output], TddNode{merged, {}}};
        out.output = 1;
        return Tdd(std::move(out), Tdd::unchecked_t{});
    }
    TddNode mergednode;
    for (size_t g = 0; g < fam.size(); ++g)
        if (static_cast<int32_t>(g) != full.output)
            mergednode.pairs.insert(mergednode.pairs.end(), fam[g].pairs.begin(),
                                    fam[g].pairs.end());
    std::sort(mergednode.pairs.begin(), mergednode.pairs.end());
    NTdd out = std::move(full);
    out.families[root] = {out.families[root][out.output], std::move(mergednode)};
    out.output = 1;
    if (!has_model(out))
        return empty_function(out.vtree);
    return Tdd(std::move(out), Tdd::unchecked_t{});
}

namespace {

LeafLabel conj_labels(LeafLabel a, LeafLabel b) {
    if (a == LeafLabel::zero || b == LeafLabel::zero)
        return LeafLabel::zero;
    if (a == LeafLabel::one)
        return b;
    if (b == LeafLabel::one)
        return a;
    return a == b ? a : LeafLabel::zero;
}

// Product construction from a seeded set of root-family products. Returns
// the product circuit with one root node per seed, in seed order.
NTdd product(const Tdd& c1, const Tdd& c2,
             const std::vector<std::pair<int32_t, int32_t>>& seeds) {
    const Vtree& vt = *c1.vtree;
    NTdd out;
    out.vtree = c1.vtree;
    out.families.assign(vt.node_count(), {});

    // discovered products per vtree node, in discovery order
    std::vector<std::map<std::pair<int32_t, int32_t>, int32_t>> index(vt.node_count());
    std::vector<std::vector<std::pair<int32_t, int32_t>>> members(vt.node_count());
    auto discover = [&](int t, int32_t a, int32_t b) -> int32_t {
        auto [it, fresh] = index[t].try_emplace({a, b},
                                                static_cast<int32_t>(members[t].size()));
        if (fresh)
            members[t].push_back({a, b});
        return it->second;
    };
    for (auto [a, b] : seeds)
        discover(vt.root(), a, b);

    // parents first: preorder ids ascending
    for (int t = 0; t < vt.node_count(); ++t) {
        auto& fam = out.families[t];
        if (vt.is_leaf(t)) {
            for (auto [g1, g2] : members[t])
                fam.push_back(TddNode{
                    conj_labels(c1.families[t][g1].label, c2.families[t][g2].label), {}});
            continue;
        }
        const int l = vt.left(t), r = vt.right(t);
        // members[t] grows only while processing ancestors, fixed now
        for (auto [g1, g2] : members[t]) {
            TddNode node;
            for (auto [a1, a2] : c1.families[t][g1].pairs)
                for (auto [b1, b2] : c2.families[t][g2].pairs)
                    node.pairs.emplace_back(discover(l, a1, b1), discover(r, a2, b2));
            std::sort(node.pairs.begin(), node.pairs.end());
            fam.push_back(std::move(node));
        }
    }
    return out;
}

void require_same_vtree(const Tdd& c1, const Tdd& c2, const char* what) {
    if (!(*c1.vtree == *c2.vtree))
        throw domain_error(std::string(what) + ": operands respect different vtrees");
}

} // namespace

Tdd conjoin(const Tdd& c1, const Tdd& c2) {
    require_same_vtree(c1, c2, "conjoin");
    NTdd prod = product(c1, c2, {{c1.output, c2.output}});
    prod.output = 0;
    if (!has_model(prod))
        return empty_function(prod.vtree);
    assert(prod.size() <= c1.size() * c2.size() ||
           (c1.size() == 0 || c2.size() == 0));
    return Tdd(std::move(prod), Tdd::unchecked_t{});
}

Tdd apply(BoolOp op, const Tdd& c1, const Tdd& c2) {
    require_same_vtree(c1, c2, "apply");
    Tdd f1 = make_full(c1);
    Tdd f2 = make_full(c2);
    const Vtree& vt = *f1.vtree;
    const int root = vt.root();
    std::vector<std::pair<int32_t, int32_t>> seeds;
    for (int32_t g1 = 0; g1 < static_cast<int32_t>(f1.families[root].size()); ++g1)
        for (int32_t g2 = 0; g2 < static_cast<int32_t>(f2.families[root].size()); ++g2)
            if (op(g1 == f1.output, g2 == f2.output))
                seeds.emplace_back(g1, g2);
    if (seeds.empty())
        return empty_function(f1.vtree);

    NTdd prod = product(f1, f2, seeds);
    // merge the selected root products into a single output node
    const auto nseeds = seeds.size();
    NTdd out = std::move(prod);
    if (vt.is_leaf(root)) {
        std::vector<LeafLabel> labels;
        for (size_t i = 0; i < nseeds; ++i)
            labels.push_back(out.families[root][i].label);
        LeafLabel merged = merge_labels(labels);
        if (merged == LeafLabel::zero)
            return empty_function(out.vtree);
        out.families[root] = {TddNode{merged, {}}};
    } else {
        TddNode mergednode;
        for (size_t i = 0; i < nseeds; ++i)
            mergednode.pairs.insert(mergednode.pairs.end(),
                                    out.families[root][i].pairs.begin(),
                                    out.families[root][i].pairs.end());
        std::sort(mergednode.pairs.begin(), mergednode.pairs.end());
        out.families[root] = {std::move(mergednode)};
    }
    out.output = 0;
    if (!has_model(out))
        return empty_function(out.vtree);
    return Tdd(std::move(out), Tdd::unchecked_t{});
}

Tdd or_via_negation(const Tdd& c1, const Tdd& c2) {
    return negate(conjoin(negate(c1), negate(c2)));
}

NTdd forget(const Tdd& c, std::span<const Var> y) {
    const Vtree& vt = *c.vtree;
    std::vector<Var> ys(y.begin(), y.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    for (Var v : ys)
        if (!vt.has_var(v))
            throw domain_error("forget: unknown variable " + std::to_string(v));
    if (ys.empty())
        return c;
    if (ys.size() >= static_cast<size_t>(vt.var_count()))
        throw domain_error("forget: cannot project away every variable");

    NTdd cur = c;
    for (Var v : ys)
        for (auto& n : cur.families[cur.vtree->leaf_of(v)])
            if (n.label == LeafLabel::pos || n.label == LeafLabel::neg)
                n.label = LeafLabel::one;
    for (Var v : ys)
        cur = remove_constant_leaf(cur, v);
    return cur;
}

Tdd forget_single(const Tdd& c, Var x) {
    return apply(op_or, condition(c, x, false), condition(c, x, true));
}

Tdd determinize(const NTdd& c) {
    const Vtree& vt = *c.vtree;
    using Shape = std::vector<int32_t>; // sorted satisfied-node set

    std::vector<std::vector<Shape>> shapes(vt.node_count());
    std::vector<std::map<Shape, int32_t>> shape_index(vt.node_count());
    NTdd out;
    out.vtree = c.vtree;
    out.families.assign(vt.node_count(), {});

    auto add_shape = [&](int t, Shape s, TddNode node) -> int32_t {
        auto [it, fresh] = shape_index[t].try_emplace(s,
                                                      static_cast<int32_t>(shapes[t].size()));
        if (fresh) {
            shapes[t].push_back(std::move(s));
            out.families[t].push_back(std::move(node));
        }
        return it->second;
    };

    for (int t = vt.node_count() - 1; t >= 0; --t) {
        const auto& fam = c.families[t];
        if (vt.is_leaf(t)) {
            Shape s0, s1; // satisfied by x=0 / x=1
            for (int32_t g = 0; g < static_cast<int32_t>(fam.size()); ++g) {
                if (leaf_label_satisfied(fam[g].label, false))
                    s0.push_back(g);
                if (leaf_label_satisfied(fam[g].label, true))
                    s1.push_back(g);
            }
            if (s0 == s1) {
                add_shape(t, std::move(s0), TddNode{LeafLabel::one, {}});
            } else {
                add_shape(t, std::move(s0), TddNode{LeafLabel::neg, {}});
                add_shape(t, std::move(s1), TddNode{LeafLabel::pos, {}});
            }
            continue;
        }
        const int l = vt.left(t), r = vt.right(t);
        // membership masks of child shapes for O(1) lookups
        auto masks = [&](int child) {
            std::vector<std::vector<char>> m(shapes[child].size());
            for (size_t i = 0; i < shapes[child].size(); ++i) {
                m[i].assign(c.families[child].size(), 0);
                for (int32_t g : shapes[child][i])
                    m[i][g] = 1;
            }
            return m;
        };
        auto ml = masks(l), mr = masks(r);
        for (int32_t i = 0; i < static_cast<int32_t>(shapes[l].size()); ++i) {
            for (int32_t j = 0; j < static_cast<int32_t>(shapes[r].size()); ++j) {
                Shape gen;
                for (int32_t g = 0; g < static_cast<int32_t>(fam.size()); ++g)
                    for (auto [a, b] : fam[g].pairs)
                        if (ml[i][a] && mr[j][b]) {
                            gen.push_back(g);
                            break;
                        }
                int32_t idx = add_shape(t, std::move(gen), TddNode{});
                out.families[t][idx].pairs.emplace_back(i, j);
            }
        }
        for (auto& n : out.families[t])
            std::sort(n.pairs.begin(), n.pairs.end());
    }

    // merge every root shape containing the old output into the new output;
    // shapes without it (including the empty shape) stay for fullness
    const int root = vt.root();
    std::vector<char> selected(shapes[root].size(), 0);
    bool any = false;
    for (size_t i = 0; i < shapes[root].size(); ++i)
        if (std::binary_search(shapes[root][i].begin(), shapes[root][i].end(), c.output)) {
            selected[i] = 1;
            any = true;
        }
    if (!any)
        return empty_function(c.vtree);

    std::vector<TddNode> newroot;
    for (size_t i = 0; i < shapes[root].size(); ++i)
        if (!selected[i])
            newroot.push_back(out.families[root][i]);
    TddNode merged;
    if (vt.is_leaf(root)) {
        std::vector<LeafLabel> labels;
        for (size_t i = 0; i < shapes[root].size(); ++i)
            if (selected[i])
                labels.push_back(out.families[root][i].label);
        merged.label = merge_labels(labels);
    } else {
        for (size_t i = 0; i < shapes[root].size(); ++i)
            if (selected[i])
                merged.pairs.insert(merged.pairs.end(),
                                    out.families[root][i].pairs.begin(),
                                    out.families[root][i].pairs.end());
        std::sort(merged.pairs.begin(), merged.pairs.end());
    }
    newroot.push_back(std::move(merged));
    out.families[root] = std::move(newroot);
    out.output = static_cast<int32_t>(out.families[root].size()) - 1;
    return Tdd(std::move(out), Tdd::unchecked_t{});
}

} // namespace treedd
