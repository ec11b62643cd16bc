#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace treedd {

using Var = uint32_t;

struct CnfFormula;
struct Circuit;
struct TreeDecomp;

/// A vtree: rooted binary tree whose leaves are in bijection with a set of
/// variables. Every internal node has exactly two ordered children. Nodes are
/// numbered in preorder (root = 0, then the left subtree, then the right), so
/// two vtrees with the same shape and leaf labels compare equal node by node.
///
/// Vtrees are immutable after construction and safe for concurrent reads.
class Vtree {
public:
    struct Node {
        int left = -1;   // -1 iff leaf
        int right = -1;
        int parent = -1; // -1 at the root
        Var var = 0;     // leaf label, 0 at internal nodes

        bool operator==(const Node&) const = default;
    };

    int root() const { return 0; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    bool is_leaf(int t) const { return nodes_[t].left < 0; }
    int left(int t) const { return nodes_[t].left; }
    int right(int t) const { return nodes_[t].right; }
    int parent(int t) const { return nodes_[t].parent; }
    Var leaf_var(int t) const { return nodes_[t].var; }

    /// Leaf node carrying variable x; throws domain_error if x is not present.
    int leaf_of(Var x) const;
    bool has_var(Var x) const;

    /// All variables, sorted ascending.
    const std::vector<Var>& vars() const { return vars_; }
    int var_count() const { return static_cast<int>(vars_.size()); }

    /// X_t: variables below node t, sorted ascending.
    const std::vector<Var>& vars_below(int t) const { return below_[t]; }

    /// Leaves read off left to right; for a linear vtree this is the order
    /// the vtree was built from.
    std::vector<Var> leaf_order() const;

    /// Every internal node has a leaf child.
    bool is_linear() const;

    /// Node ids in bottom-up order (children before parents). Since numbering
    /// is preorder, this is just descending id order, but callers should not
    /// rely on that.
    std::vector<int> postorder() const;

    bool same_structure(const Vtree& other) const { return nodes_ == other.nodes_; }
    friend bool operator==(const Vtree& a, const Vtree& b) { return a.same_structure(b); }

    static Vtree linear(std::span<const Var> order);
    static Vtree balanced(std::span<const Var> order);

    /// Assembles a vtree from an explicit shape given as (left,right,var)
    /// triples with arbitrary ids; renumbers to preorder and validates the
    /// leaf/variable bijection.
    static Vtree from_shape(const std::vector<Node>& nodes, int root);

private:
    Vtree() = default;
    void finish(); // fills parent links, below_, leaf index

    std::vector<Node> nodes_;
    std::vector<Var> vars_;
    std::vector<std::vector<Var>> below_;
    std::vector<std::pair<Var, int>> leaf_index_; // sorted by var
};

using VtreePtr = std::shared_ptr<const Vtree>;

inline VtreePtr share(Vtree t) { return std::make_shared<const Vtree>(std::move(t)); }

/// T \ x: deletes the leaf carrying x and contracts its now-unary parent.
/// Requires x present and at least two leaves.
Vtree remove_leaf(const Vtree& t, Var x);

/// remove_leaf plus the induced node-id mapping (old id -> new id, -1 for the
/// two deleted nodes). Transformations over circuits need the mapping.
struct LeafRemoval {
    Vtree tree;
    std::vector<int> node_map;
};
LeafRemoval remove_leaf_mapped(const Vtree& t, Var x);

/// Vtree derived from a tree decomposition of the primal graph of F: each
/// variable becomes a leaf attached above the shallowest bag containing it.
/// Validates the decomposition first. `root` selects the decomposition node
/// treated as the root (bag index, default 0).
Vtree vtree_from_primal_td(const TreeDecomp& td, const CnfFormula& f, int root = 0);

/// Same construction on a decomposition of the incidence graph; only variable
/// vertices become leaves.
Vtree vtree_from_incidence_td(const TreeDecomp& td, const CnfFormula& f, int root = 0);

/// Same construction on a decomposition of the circuit graph. The output gate
/// is added to every bag before the leaf attachment, and only input-gate
/// vertices become leaves.
Vtree vtree_from_circuit_td(const TreeDecomp& td, const Circuit& c, int root = 0);

/// Line-based text format:
///   vtree <node-count>
///   L <id> <variable-name>
///   I <id> <left-id> <right-id>
///   root <id>
/// Variable names are positive integers, optionally prefixed with 'x'.
Vtree read_vtree(std::istream& in);
void write_vtree(std::ostream& out, const Vtree& t);

} // namespace treedd
