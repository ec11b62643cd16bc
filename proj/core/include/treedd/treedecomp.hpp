#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace treedd {

/// Simple undirected graph over integer vertex ids (not necessarily
/// contiguous). Used for primal/incidence/circuit graphs.
struct Graph {
    std::vector<uint32_t> vertices;                      // sorted, unique
    std::vector<std::pair<uint32_t, uint32_t>> edges;    // normalized a < b, sorted, unique

    void add_vertex(uint32_t v);
    void add_edge(uint32_t a, uint32_t b);
    void normalize(); // sort + dedupe; called by the builders
    bool has_vertex(uint32_t v) const;
};

/// Tree decomposition: a tree of bags. Bag contents are sorted vertex ids.
struct TreeDecomp {
    std::vector<std::vector<uint32_t>> bags;
    std::vector<std::pair<int, int>> edges; // between bag indices

    int width() const;

    /// Children lists of the tree rooted at `root`; throws if the edges do
    /// not form a tree on all bags.
    std::vector<std::vector<int>> rooted_children(int root) const;
};

/// Checks the two decomposition properties against g:
///  - complete: every edge of g lies inside some bag (and every vertex occurs),
///  - connected: for each vertex the bags containing it induce a subtree.
/// Throws domain_error naming the violated property.
void validate_tree_decomp(const TreeDecomp& td, const Graph& g);

/// Min-fill elimination-ordering heuristic. Always returns a valid
/// decomposition of g (validated by the caller's tests, not here). Ties are
/// broken towards smaller vertex ids, so the output is deterministic.
TreeDecomp min_fill_td(const Graph& g);

/// PACE-2017 .td format:
///   c <comment>
///   s td <n-bags> <max-bag-size> <n-vertices>
///   b <id> v1 v2 ...
///   <bag-id> <bag-id>
/// Bag ids are 1-based in the file and 0-based in TreeDecomp.
TreeDecomp read_td(std::istream& in);
void write_td(std::ostream& out, const TreeDecomp& td);

} // namespace treedd
