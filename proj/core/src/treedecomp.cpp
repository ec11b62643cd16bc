#include "treedd/treedecomp.hpp"

#include "treedd/error.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace treedd {

void Graph::add_vertex(uint32_t v) { vertices.push_back(v); }

void Graph::add_edge(uint32_t a, uint32_t b) {
    if (a == b)
        return;
    if (a > b)
        std::swap(a, b);
    edges.emplace_back(a, b);
}

void Graph::normalize() {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool Graph::has_vertex(uint32_t v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

int TreeDecomp::width() const {
    size_t m = 0;
    for (const auto& b : bags)
        m = std::max(m, b.size());
    return static_cast<int>(m) - 1;
}

std::vector<std::vector<int>> TreeDecomp::rooted_children(int root) const {
    const int n = static_cast<int>(bags.size());
    if (root < 0 || root >= n)
        throw domain_error("tree decomposition: root bag out of range");
    if (static_cast<int>(edges.size()) != n - 1)
        throw domain_error("tree decomposition: edge count does not form a tree");
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw domain_error("tree decomposition: edge endpoint out of range");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<std::vector<int>> children(n);
    std::vector<int> stack{root}, seen(n, 0);
    seen[root] = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int u : adj[t]) {
            if (seen[u])
                continue;
            seen[u] = 1;
            children[t].push_back(u);
            stack.push_back(u);
        }
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i])
            throw domain_error("tree decomposition: bags are not connected as a tree");
    for (auto& c : children)
        std::sort(c.begin(), c.end());
    return children;
}

void validate_tree_decomp(const TreeDecomp& td, const Graph& g) {
    if (td.bags.empty())
        throw domain_error("tree decomposition: no bags");
    auto children = td.rooted_children(0); // also checks tree-ness

    for (const auto& b : td.bags)
        if (!std::is_sorted(b.begin(), b.end()))
            throw domain_error("tree decomposition: bag contents must be sorted");

    auto bag_has = [&](int t, uint32_t v) {
        return std::binary_search(td.bags[t].begin(), td.bags[t].end(), v);
    };

    // completeness: every vertex and every edge covered
    for (uint32_t v : g.vertices) {
        bool found = false;
        for (const auto& b : td.bags)
            if (std::binary_search(b.begin(), b.end(), v)) {
                found = true;
                break;
            }
        if (!found)
            throw domain_error("tree decomposition: not complete, vertex " +
                               std::to_string(v) + " is in no bag");
    }
    for (auto [a, b] : g.edges) {
        bool found = false;
        for (int t = 0; t < static_cast<int>(td.bags.size()) && !found; ++t)
            found = bag_has(t, a) && bag_has(t, b);
        if (!found)
            throw domain_error("tree decomposition: not complete, edge {" +
                               std::to_string(a) + "," + std::to_string(b) +
                               "} is in no bag");
    }

    // connectedness: bags containing v induce a connected subtree
    for (uint32_t v : g.vertices) {
        int first = -1, count = 0;
        for (int t = 0; t < static_cast<int>(td.bags.size()); ++t)
            if (bag_has(t, v)) {
                ++count;
                if (first < 0)
                    first = t;
            }
        // BFS within the induced sub-forest
        std::vector<int> stack{first};
        std::set<int> seen{first};
        std::vector<std::vector<int>> adj(td.bags.size());
        for (auto [a, b] : td.edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int u : adj[t])
                if (bag_has(u, v) && !seen.count(u)) {
                    seen.insert(u);
                    stack.push_back(u);
                }
        }
        if (static_cast<int>(seen.size()) != count)
            throw domain_error("tree decomposition: not connected, vertex " +
                               std::to_string(v) + " induces a disconnected set of bags");
    }
}

TreeDecomp min_fill_td(const Graph& g) {
    TreeDecomp td;
    const auto& vs = g.vertices;
    if (vs.empty()) {
        td.bags.push_back({});
        return td;
    }
    std::map<uint32_t, std::set<uint32_t>> adj;
    for (uint32_t v : vs)
        adj[v];
    for (auto [a, b] : g.edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }

    std::map<uint32_t, int> bag_of; // vertex -> index of the bag created when eliminated
    std::vector<uint32_t> elim_order;
    std::vector<std::vector<uint32_t>> elim_neighbors;

    std::set<uint32_t> remaining(vs.begin(), vs.end());
    while (!remaining.empty()) {
        // pick the vertex whose elimination adds the fewest fill edges
        uint32_t best = 0;
        long best_fill = -1;
        for (uint32_t v : remaining) {
            const auto& nb = adj[v];
            long fill = 0;
            for (auto it = nb.begin(); it != nb.end(); ++it)
                for (auto jt = std::next(it); jt != nb.end(); ++jt)
                    if (!adj[*it].count(*jt))
                        ++fill;
            if (best_fill < 0 || fill < best_fill) {
                best_fill = fill;
                best = v;
            }
        }
        auto nb = std::vector<uint32_t>(adj[best].begin(), adj[best].end());
        elim_order.push_back(best);
        elim_neighbors.push_back(nb);
        std::vector<uint32_t> bag = nb;
        bag.push_back(best);
        std::sort(bag.begin(), bag.end());
        bag_of[best] = static_cast<int>(td.bags.size());
        td.bags.push_back(std::move(bag));
        // connect neighbors into a clique, drop the vertex
        for (uint32_t a : nb) {
            adj[a].erase(best);
            for (uint32_t b : nb)
                if (a != b)
                    adj[a].insert(b);
        }
        adj.erase(best);
        remaining.erase(best);
    }

    // Bag of vertex v attaches to the bag of the first of its elimination-time
    // neighbors eliminated after v; vertices with no later neighbor (component
    // roots) attach to the previous component root.
    std::map<uint32_t, int> elim_pos;
    for (size_t i = 0; i < elim_order.size(); ++i)
        elim_pos[elim_order[i]] = static_cast<int>(i);
    int last_root = -1;
    for (size_t i = 0; i < elim_order.size(); ++i) {
        int attach = -1;
        int best_pos = static_cast<int>(elim_order.size());
        for (uint32_t nbv : elim_neighbors[i]) {
            int p = elim_pos[nbv];
            if (p > static_cast<int>(i) && p < best_pos) {
                best_pos = p;
                attach = bag_of[elim_order[p]];
            }
        }
        if (attach >= 0) {
            td.edges.emplace_back(static_cast<int>(i), attach);
        } else {
            if (last_root >= 0)
                td.edges.emplace_back(static_cast<int>(i), last_root);
            last_root = static_cast<int>(i);
        }
    }
    return td;
}

TreeDecomp read_td(std::istream& in) {
    TreeDecomp td;
    std::string line, word;
    int lineno = 0;
    int nbags = -1;
    std::vector<bool> defined;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (!(ls >> word) || word == "c")
            continue;
        if (word == "s") {
            std::string kind;
            int maxbag, nverts;
            if (!(ls >> kind >> nbags >> maxbag >> nverts) || kind != "td" || nbags < 1)
                throw parse_error("bad 's td' header", lineno);
            td.bags.assign(nbags, {});
            defined.assign(nbags, false);
        } else if (word == "b") {
            int id;
            if (nbags < 0)
                throw parse_error("bag line before header", lineno);
            if (!(ls >> id) || id < 1 || id > nbags)
                throw parse_error("bag id out of range", lineno);
            if (defined[id - 1])
                throw parse_error("bag " + std::to_string(id) + " redefined", lineno);
            defined[id - 1] = true;
            long v;
            while (ls >> v) {
                if (v <= 0)
                    throw parse_error("bag vertices must be positive", lineno);
                td.bags[id - 1].push_back(static_cast<uint32_t>(v));
            }
            std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
        } else {
            int a, b;
            std::istringstream es(line);
            if (!(es >> a >> b) || nbags < 0 || a < 1 || a > nbags || b < 1 || b > nbags)
                throw parse_error("bad edge line '" + line + "'", lineno);
            td.edges.emplace_back(a - 1, b - 1);
        }
    }
    if (nbags < 0)
        throw parse_error("missing 's td' header");
    for (int i = 0; i < nbags; ++i)
        if (!defined[i])
            throw parse_error("bag " + std::to_string(i + 1) + " never defined");
    return td;
}

void write_td(std::ostream& out, const TreeDecomp& td) {
    size_t maxbag = 0;
    std::set<uint32_t> verts;
    for (const auto& b : td.bags) {
        maxbag = std::max(maxbag, b.size());
        verts.insert(b.begin(), b.end());
    }
    out << "s td " << td.bags.size() << " " << maxbag << " " << verts.size() << "\n";
    for (size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (uint32_t v : td.bags[i])
            out << " " << v;
        out << "\n";
    }
    for (auto [a, b] : td.edges)
        out << a + 1 << " " << b + 1 << "\n";
}

} // namespace treedd
