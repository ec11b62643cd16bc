#include "treedd/vtree.hpp"

#include "treedd/error.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace treedd {

void Vtree::finish() {
    const int n = node_count();
    below_.assign(n, {});
    for (int t = 0; t < n; ++t)
        nodes_[t].parent = -1;
    for (int t = 0; t < n; ++t) {
        if (!is_leaf(t)) {
            nodes_[nodes_[t].left].parent = t;
            nodes_[nodes_[t].right].parent = t;
        }
    }
    // Preorder numbering puts children after parents, so a reverse scan is
    // bottom-up.
    for (int t = n - 1; t >= 0; --t) {
        if (is_leaf(t)) {
            below_[t] = {nodes_[t].var};
        } else {
            const auto& l = below_[nodes_[t].left];
            const auto& r = below_[nodes_[t].right];
            below_[t].resize(l.size() + r.size());
            std::merge(l.begin(), l.end(), r.begin(), r.end(), below_[t].begin());
        }
    }
    vars_ = below_[0];
    leaf_index_.clear();
    for (int t = 0; t < n; ++t)
        if (is_leaf(t))
            leaf_index_.emplace_back(nodes_[t].var, t);
    std::sort(leaf_index_.begin(), leaf_index_.end());
    for (size_t i = 0; i + 1 < leaf_index_.size(); ++i)
        if (leaf_index_[i].first == leaf_index_[i + 1].first)
            throw domain_error("vtree: variable " + std::to_string(leaf_index_[i].first) +
                               " labels two leaves");
}

int Vtree::leaf_of(Var x) const {
    auto it = std::lower_bound(leaf_index_.begin(), leaf_index_.end(),
                               std::make_pair(x, -1));
    if (it == leaf_index_.end() || it->first != x)
        throw domain_error("vtree: unknown variable " + std::to_string(x));
    return it->second;
}

bool Vtree::has_var(Var x) const {
    auto it = std::lower_bound(leaf_index_.begin(), leaf_index_.end(),
                               std::make_pair(x, -1));
    return it != leaf_index_.end() && it->first == x;
}

std::vector<Var> Vtree::leaf_order() const {
    std::vector<Var> order;
    std::function<void(int)> walk = [&](int t) {
        if (is_leaf(t)) {
            order.push_back(nodes_[t].var);
        } else {
            walk(nodes_[t].left);
            walk(nodes_[t].right);
        }
    };
    walk(0);
    return order;
}

bool Vtree::is_linear() const {
    for (int t = 0; t < node_count(); ++t)
        if (!is_leaf(t) && !is_leaf(left(t)) && !is_leaf(right(t)))
            return false;
    return true;
}

std::vector<int> Vtree::postorder() const {
    std::vector<int> order(node_count());
    int next = 0;
    std::function<void(int)> walk = [&](int t) {
        if (!is_leaf(t)) {
            walk(left(t));
            walk(right(t));
        }
        order[next++] = t;
    };
    walk(0);
    return order;
}

Vtree Vtree::linear(std::span<const Var> order) {
    if (order.empty())
        throw domain_error("vtree: empty variable order");
    Vtree t;
    std::function<int(size_t)> build = [&](size_t i) -> int {
        int id = static_cast<int>(t.nodes_.size());
        if (i + 1 == order.size()) {
            t.nodes_.push_back({-1, -1, -1, order[i]});
            return id;
        }
        t.nodes_.push_back({});
        int l = static_cast<int>(t.nodes_.size());
        t.nodes_.push_back({-1, -1, -1, order[i]});
        int r = build(i + 1);
        t.nodes_[id].left = l;
        t.nodes_[id].right = r;
        return id;
    };
    build(0);
    t.finish();
    return t;
}

Vtree Vtree::balanced(std::span<const Var> order) {
    if (order.empty())
        throw domain_error("vtree: empty variable order");
    Vtree t;
    std::function<int(size_t, size_t)> build = [&](size_t lo, size_t hi) -> int {
        int id = static_cast<int>(t.nodes_.size());
        if (hi - lo == 1) {
            t.nodes_.push_back({-1, -1, -1, order[lo]});
            return id;
        }
        t.nodes_.push_back({});
        size_t mid = lo + (hi - lo + 1) / 2;
        int l = build(lo, mid);
        int r = build(mid, hi);
        t.nodes_[id].left = l;
        t.nodes_[id].right = r;
        return id;
    };
    build(0, order.size());
    t.finish();
    return t;
}

Vtree Vtree::from_shape(const std::vector<Node>& nodes, int root) {
    if (root < 0 || root >= static_cast<int>(nodes.size()))
        throw domain_error("vtree: root id out of range");
    Vtree t;
    std::vector<bool> seen(nodes.size(), false);
    std::function<int(int)> build = [&](int old) -> int {
        if (old < 0 || old >= static_cast<int>(nodes.size()))
            throw domain_error("vtree: child id out of range");
        if (seen[old])
            throw domain_error("vtree: node " + std::to_string(old) + " reached twice");
        seen[old] = true;
        const Node& src = nodes[old];
        int id = static_cast<int>(t.nodes_.size());
        if (src.left < 0) {
            t.nodes_.push_back({-1, -1, -1, src.var});
            return id;
        }
        t.nodes_.push_back({});
        int l = build(src.left);
        int r = build(src.right);
        t.nodes_[id].left = l;
        t.nodes_[id].right = r;
        return id;
    };
    build(root);
    if (static_cast<size_t>(t.node_count()) != nodes.size())
        throw domain_error("vtree: nodes unreachable from the root");
    t.finish();
    return t;
}

LeafRemoval remove_leaf_mapped(const Vtree& t, Var x) {
    if (t.var_count() < 2)
        throw domain_error("vtree: cannot remove the last leaf");
    const int leaf = t.leaf_of(x);
    const int par = t.parent(leaf);
    // par exists because the tree has >= 2 leaves.
    std::vector<int> node_map(t.node_count(), -1);
    std::vector<Vtree::Node> shape;
    std::function<int(int)> build = [&](int old) -> int {
        if (old == par) // contract: the surviving child takes this position
            return build(t.left(par) == leaf ? t.right(par) : t.left(par));
        int id = static_cast<int>(shape.size());
        shape.push_back({});
        if (t.is_leaf(old)) {
            shape[id] = {-1, -1, -1, t.leaf_var(old)};
        } else {
            int l = build(t.left(old));
            int r = build(t.right(old));
            shape[id].left = l;
            shape[id].right = r;
        }
        node_map[old] = id;
        return id;
    };
    // build() emits parents before children, so ids already follow preorder
    // and from_shape keeps them unchanged.
    int root = build(t.root());
    return LeafRemoval{Vtree::from_shape(shape, root), std::move(node_map)};
}

Vtree remove_leaf(const Vtree& t, Var x) { return remove_leaf_mapped(t, x).tree; }

Vtree read_vtree(std::istream& in) {
    std::string line, word;
    int lineno = 0;
    int count = -1, root = -1;
    std::vector<Vtree::Node> nodes;
    std::vector<bool> defined;
    auto parse_var = [&](const std::string& s) -> Var {
        size_t pos = (s.size() > 1 && (s[0] == 'x' || s[0] == 'X')) ? 1 : 0;
        try {
            long v = std::stol(s.substr(pos));
            if (v <= 0)
                throw parse_error("variable must be positive", lineno);
            return static_cast<Var>(v);
        } catch (const std::logic_error&) {
            throw parse_error("bad variable name '" + s + "'", lineno);
        }
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (!(ls >> word) || word == "c")
            continue;
        if (word == "vtree") {
            if (!(ls >> count) || count <= 0)
                throw parse_error("bad vtree header", lineno);
            nodes.assign(count, {});
            defined.assign(count, false);
        } else if (word == "L" || word == "I") {
            int id;
            if (count < 0)
                throw parse_error("node line before header", lineno);
            if (!(ls >> id) || id < 0 || id >= count)
                throw parse_error("node id out of range", lineno);
            if (defined[id])
                throw parse_error("node " + std::to_string(id) + " redefined", lineno);
            defined[id] = true;
            if (word == "L") {
                std::string name;
                if (!(ls >> name))
                    throw parse_error("leaf without variable", lineno);
                nodes[id] = {-1, -1, -1, parse_var(name)};
            } else {
                int l, r;
                if (!(ls >> l >> r))
                    throw parse_error("internal node needs two children", lineno);
                if (l < 0 || l >= count || r < 0 || r >= count)
                    throw parse_error("child id out of range", lineno);
                nodes[id] = {l, r, -1, 0};
            }
        } else if (word == "root") {
            if (!(ls >> root))
                throw parse_error("bad root line", lineno);
        } else {
            throw parse_error("unknown directive '" + word + "'", lineno);
        }
    }
    if (count < 0)
        throw parse_error("missing vtree header");
    if (root < 0)
        throw parse_error("missing root line");
    for (int i = 0; i < count; ++i)
        if (!defined[i])
            throw parse_error("node " + std::to_string(i) + " never defined");
    try {
        return Vtree::from_shape(nodes, root);
    } catch (const domain_error& e) {
        throw parse_error(e.what());
    }
}

void write_vtree(std::ostream& out, const Vtree& t) {
    out << "vtree " << t.node_count() << "\n";
    for (int i = 0; i < t.node_count(); ++i) {
        if (t.is_leaf(i))
            out << "L " << i << " " << t.leaf_var(i) << "\n";
        else
            out << "I " << i << " " << t.left(i) << " " << t.right(i) << "\n";
    }
    out << "root " << t.root() << "\n";
}

} // namespace treedd
