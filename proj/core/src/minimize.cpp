#include "treedd/minimize.hpp"

#include "treedd/error.hpp"
#include "treedd/transform.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace treedd {

namespace {

// For every node of family t: the sorted list of (parent-node, sibling-node)
// pairs it occurs in. Twins are nodes with equal signatures.
std::vector<std::vector<std::pair<int32_t, int32_t>>>
sibling_signatures(const NTdd& c, int t) {
    const Vtree& vt = *c.vtree;
    const int par = vt.parent(t);
    const bool is_left = vt.left(par) == t;
    std::vector<std::vector<std::pair<int32_t, int32_t>>> sig(c.families[t].size());
    const auto& pfam = c.families[par];
    for (int32_t h = 0; h < static_cast<int32_t>(pfam.size()); ++h)
        for (auto [a, b] : pfam[h].pairs) {
            if (is_left)
                sig[a].emplace_back(h, b);
            else
                sig[b].emplace_back(h, a);
        }
    // pair lists are sorted, so each signature comes out sorted already;
    // keep the sort for safety
    for (auto& s : sig)
        std::sort(s.begin(), s.end());
    return sig;
}

std::vector<std::vector<int32_t>> twin_groups(const NTdd& c, int t) {
    auto sig = sibling_signatures(c, t);
    std::map<std::vector<std::pair<int32_t, int32_t>>, std::vector<int32_t>> bySig;
    for (int32_t g = 0; g < static_cast<int32_t>(sig.size()); ++g)
        bySig[sig[g]].push_back(g);
    std::vector<std::vector<int32_t>> groups;
    for (auto& [s, members] : bySig)
        if (members.size() >= 2)
            groups.push_back(std::move(members));
    // map iteration order is deterministic; order groups by smallest member
    std::sort(groups.begin(), groups.end());
    return groups;
}

LeafLabel merged_label(const NTdd& c, int t, const std::vector<int32_t>& group) {
    bool m0 = false, m1 = false;
    for (int32_t g : group) {
        m0 |= leaf_label_satisfied(c.families[t][g].label, false);
        m1 |= leaf_label_satisfied(c.families[t][g].label, true);
    }
    if (m0 && m1)
        return LeafLabel::one;
    return m1 ? LeafLabel::pos : (m0 ? LeafLabel::neg : LeafLabel::zero);
}

// contracts every given group at family t in place; groups are disjoint
void contract_groups(NTdd& c, int t, const std::vector<std::vector<int32_t>>& groups) {
    const Vtree& vt = *c.vtree;
    auto& fam = c.families[t];
    std::vector<int32_t> target(fam.size());
    for (int32_t g = 0; g < static_cast<int32_t>(fam.size()); ++g)
        target[g] = g;
    for (const auto& grp : groups) {
        const int32_t rep = *std::min_element(grp.begin(), grp.end());
        for (int32_t g : grp)
            target[g] = rep;
        if (vt.is_leaf(t)) {
            fam[rep].label = merged_label(c, t, grp);
        } else {
            std::vector<std::pair<int32_t, int32_t>> all;
            for (int32_t g : grp)
                all.insert(all.end(), fam[g].pairs.begin(), fam[g].pairs.end());
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
            fam[rep].pairs = std::move(all);
        }
    }
    // compact the family
    std::vector<int32_t> remap(fam.size(), -1);
    std::vector<TddNode> kept;
    for (int32_t g = 0; g < static_cast<int32_t>(fam.size()); ++g) {
        if (target[g] != g)
            continue;
        remap[g] = static_cast<int32_t>(kept.size());
        kept.push_back(std::move(fam[g]));
    }
    fam = std::move(kept);
    for (int32_t g = 0; g < static_cast<int32_t>(target.size()); ++g)
        remap[g] = remap[target[g]];
    // rewrite the parent family
    const int par = vt.parent(t);
    const bool is_left = vt.left(par) == t;
    for (auto& h : c.families[par]) {
        for (auto& p : h.pairs) {
            if (is_left)
                p.first = remap[p.first];
            else
                p.second = remap[p.second];
        }
        std::sort(h.pairs.begin(), h.pairs.end());
        h.pairs.erase(std::unique(h.pairs.begin(), h.pairs.end()), h.pairs.end());
    }
}

// drops the non-output root nodes and everything without a path from the
// output, remapping indices
void prune_to_output(NTdd& c) {
    const Vtree& vt = *c.vtree;
    std::vector<std::vector<char>> keep(vt.node_count());
    for (int t = 0; t < vt.node_count(); ++t)
        keep[t].assign(c.families[t].size(), 0);
    keep[vt.root()][c.output] = 1;
    for (int t = 0; t < vt.node_count(); ++t) { // parents before children
        if (vt.is_leaf(t))
            continue;
        for (size_t g = 0; g < c.families[t].size(); ++g)
            if (keep[t][g])
                for (auto [a, b] : c.families[t][g].pairs) {
                    keep[vt.left(t)][a] = 1;
                    keep[vt.right(t)][b] = 1;
                }
    }
    std::vector<std::vector<int32_t>> remap(vt.node_count());
    for (int t = 0; t < vt.node_count(); ++t) {
        remap[t].assign(c.families[t].size(), -1);
        std::vector<TddNode> kept;
        for (size_t g = 0; g < c.families[t].size(); ++g)
            if (keep[t][g]) {
                remap[t][g] = static_cast<int32_t>(kept.size());
                kept.push_back(std::move(c.families[t][g]));
            }
        c.families[t] = std::move(kept);
    }
    for (int t = 0; t < vt.node_count(); ++t) {
        if (vt.is_leaf(t))
            continue;
        for (auto& n : c.families[t])
            for (auto& p : n.pairs) {
                p.first = remap[vt.left(t)][p.first];
                p.second = remap[vt.right(t)][p.second];
            }
    }
    c.output = remap[vt.root()][c.output];
}

// canonical order: families in vtree node order; within a family leaves sort
// by label, internal nodes by their (already canonicalized) pair lists
void canonical_renumber(NTdd& c) {
    const Vtree& vt = *c.vtree;
    std::vector<std::vector<int32_t>> perm(vt.node_count()); // old -> new
    for (int t = vt.node_count() - 1; t >= 0; --t) {         // children first
        auto& fam = c.families[t];
        if (!vt.is_leaf(t)) {
            for (auto& n : fam) {
                for (auto& p : n.pairs) {
                    p.first = perm[vt.left(t)][p.first];
                    p.second = perm[vt.right(t)][p.second];
                }
                std::sort(n.pairs.begin(), n.pairs.end());
            }
        }
        std::vector<int32_t> order(fam.size());
        for (int32_t g = 0; g < static_cast<int32_t>(fam.size()); ++g)
            order[g] = g;
        std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
            if (vt.is_leaf(t))
                return fam[a].label < fam[b].label;
            return fam[a].pairs < fam[b].pairs;
        });
        perm[t].assign(fam.size(), -1);
        std::vector<TddNode> sorted(fam.size());
        for (int32_t pos = 0; pos < static_cast<int32_t>(fam.size()); ++pos) {
            perm[t][order[pos]] = pos;
            sorted[pos] = std::move(fam[order[pos]]);
        }
        fam = std::move(sorted);
    }
    c.output = perm[vt.root()][c.output];
}

} // namespace

std::vector<std::vector<int32_t>> find_twins(const Tdd& c, int t) {
    if (t == c.vtree->root())
        throw domain_error("find_twins: the root family has no sibling signatures");
    return twin_groups(c, t);
}

Tdd contract_twins(const Tdd& c, int t, int32_t g1, int32_t g2) {
    if (t == c.vtree->root())
        throw domain_error("contract_twins: cannot contract root nodes");
    if (g1 == g2)
        throw domain_error("contract_twins: need two distinct nodes");
    auto sig = sibling_signatures(c, t);
    if (g1 < 0 || g2 < 0 || g1 >= static_cast<int32_t>(sig.size()) ||
        g2 >= static_cast<int32_t>(sig.size()))
        throw domain_error("contract_twins: node index out of range");
    if (sig[g1] != sig[g2])
        throw domain_error("contract_twins: nodes are not twins");
    NTdd out = c;
    contract_groups(out, t, {{std::min(g1, g2), std::max(g1, g2)}});
    return Tdd(std::move(out), Tdd::unchecked_t{});
}

Tdd canonize(const Tdd& c) {
    NTdd w = eliminate_zeros(c);
    if (is_empty_marker(w))
        return Tdd(std::move(w), Tdd::unchecked_t{});
    prune_to_output(w);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = c.vtree->node_count() - 1; t >= 1; --t) { // never the root
            auto groups = twin_groups(w, t);
            if (!groups.empty()) {
                contract_groups(w, t, groups);
                changed = true;
            }
        }
    }
    canonical_renumber(w);
    return Tdd(std::move(w), Tdd::unchecked_t{});
}

bool equivalent(const Tdd& c1, const Tdd& c2) {
    if (!(*c1.vtree == *c2.vtree))
        throw domain_error("equivalent: operands respect different vtrees");
    return canonize(c1) == canonize(c2);
}

std::string serialize_tdd(const NTdd& c) {
    std::ostringstream out;
    write_tdd(out, c);
    return out.str();
}

} // namespace treedd
