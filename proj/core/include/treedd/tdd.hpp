#pragma once

#include "treedd/cnf.hpp"
#include "treedd/oracle.hpp"
#include "treedd/vtree.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace treedd {

using BigInt = boost::multiprecision::cpp_int;

/// Label of a node in a leaf family. Internal-family nodes ignore it.
enum class LeafLabel : uint8_t { zero, one, pos, neg };

struct TddNode {
    LeafLabel label = LeafLabel::zero;            // leaf families only
    std::vector<std::pair<int32_t, int32_t>> pairs; // internal families; sorted

    bool operator==(const TddNode&) const = default;
};

/// Does assigning `value` to the leaf variable satisfy label l?
inline bool leaf_label_satisfied(LeafLabel l, bool value) {
    switch (l) {
    case LeafLabel::zero: return false;
    case LeafLabel::one: return true;
    case LeafLabel::pos: return value;
    case LeafLabel::neg: return !value;
    }
    return false;
}

/// Non-deterministic Tree Decision Diagram: one family of nodes per vtree
/// node, internal nodes wired by pairs of child-family indices, one output
/// node in the root family.
///
/// Circuits are immutable values; every operation returns a new circuit.
/// An empty pair list on an internal node means the constant-0 function.
struct NTdd {
    VtreePtr vtree;
    std::vector<std::vector<TddNode>> families; // indexed by vtree node id
    int32_t output = -1;                        // index into families[root]

    int width() const;
    long size() const; // sum of |E(g)| over all nodes

    const std::vector<TddNode>& family(int t) const { return families[t]; }

    bool operator==(const NTdd& o) const {
        return *vtree == *o.vtree && families == o.families && output == o.output;
    }
};

/// Checks indices, leaf labels, sortedness of pair lists and the output; not
/// determinism. Throws domain_error on the first defect.
void validate_structure(const NTdd& c);

/// A TDD: an NTdd satisfying the syntactic determinism conditions
///  - per leaf family: at most one node labeled x, one ~x, one 1; a 1-labeled
///    node forces every other node to be 0-labeled;
///  - per internal family: pair lists are pairwise disjoint.
/// Construct via validate_deterministic() or through the operations, which
/// preserve determinism.
class Tdd : public NTdd {
public:
    struct unchecked_t {};
    Tdd(NTdd c, unchecked_t) : NTdd(std::move(c)) {}
    Tdd() = default;
};

struct DeterminismViolation {
    int vtree_node = -1;
    std::string description;
};

std::variant<Tdd, DeterminismViolation> validate_deterministic(NTdd c);

/// Bottom-up satisfied-marking evaluation; tau must be total on vars(C).
bool evaluate(const NTdd& c, const Assignment& tau);

/// One chosen node per vtree node witnessing a model.
struct Certificate {
    std::vector<int32_t> node_at; // indexed by vtree node id
};

/// The unique certificate of tau if tau is a model, nullopt otherwise.
/// Linear in |X| plus the one-time pair lookup per family.
std::optional<Certificate> certificate_of(const Tdd& c, const Assignment& tau);

// --- basic constructors -----------------------------------------------------

/// Canonical representation of the constant-0 function: a single output node
/// with empty inputs (0-labeled when the vtree is one leaf), all other
/// families empty.
Tdd empty_function(VtreePtr t);
bool is_empty_marker(const NTdd& c);

Tdd constant_tdd(bool b, VtreePtr t);
Tdd literal_tdd(Lit l, VtreePtr t);
Tdd single_model_tdd(const Assignment& tau, VtreePtr t);

/// Width <= 2 TDD computing clause c: per vtree node, one node for the
/// restriction of c and one for the restriction of its negation. Subtrees
/// disjoint from vars(c) carry only the negation-side node (constant 1
/// there). An empty clause yields the empty-function marker.
Tdd clause_tdd(const Clause& c, VtreePtr t);

// --- queries ----------------------------------------------------------------

/// True iff the circuit has at least one model (linear bottom-up pass).
bool has_model(const NTdd& c);

/// Exact model count over vars(C); sound on TDDs by node-disjointness.
BigInt count_models(const Tdd& c);

/// Calls fn for each model in a fixed order until fn returns false or
/// `limit` models were emitted. Each model is emitted exactly once.
void enumerate_models(const Tdd& c, uint64_t limit,
                      const std::function<bool(const Assignment&)>& fn);

std::optional<Assignment> any_model(const Tdd& c);

/// Truth table by exhaustive evaluation (test oracle scale only).
BoolFunTable exhaustive_table(const NTdd& c,
                              int max_vars = BoolFunTable::kMaxOracleVars);

// --- serialization ----------------------------------------------------------

/// Text format:
///   tdd inline            (vtree block follows, ending at its root line)
///   F <vtree-id> <node-count>
///   n <id> lit {+|-}<var>
///   n <id> const {0|1}
///   n <id> pairs (l,r) (l,r) ...
///   out <node-id>
/// `tdd file <path>` is also accepted on input.
void write_tdd(std::ostream& out, const NTdd& c);
NTdd read_ntdd(std::istream& in);
/// read_ntdd + determinism validation; throws parse_error on violation.
Tdd read_tdd(std::istream& in);

/// d-DNNF export in the line-based nnf format ("nnf v e n" header; L/A/O
/// node lines; the root is the last node). 1-labeled leaves become smooth
/// (x or ~x) disjunctions.
void write_ddnnf(std::ostream& out, const Tdd& c);

} // namespace treedd
