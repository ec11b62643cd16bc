#pragma once

#include "treedd/oracle.hpp"
#include "treedd/tdd.hpp"

#include <iosfwd>
#include <vector>

namespace treedd {

/// Ordered binary decision diagram. Node ids 0 and 1 are the 0- and 1-sink;
/// decision nodes start at id 2. Edges may skip levels; reducedness is not
/// required.
struct Obdd {
    struct Node {
        Var var = 0;
        int lo = 0;
        int hi = 0;
    };

    std::vector<Var> order;  // test order x_1 ... x_n
    std::vector<Node> nodes; // index 2.. are decision nodes; 0,1 reserved
    int source = 0;

    static constexpr int sink0 = 0;
    static constexpr int sink1 = 1;

    bool is_sink(int id) const { return id < 2; }
    const Node& node(int id) const { return nodes[id]; }

    /// position of x in the order (0-based); throws for unknown variables
    int level_of(Var x) const;
};

/// Checks ids, the order, and that edges only go forward in the order.
void validate_obdd(const Obdd& b);

bool eval_obdd(const Obdd& b, const Assignment& tau);
BoolFunTable fun_from_obdd(const Obdd& b,
                           int max_vars = BoolFunTable::kMaxOracleVars);

/// Rooting the OBDD in its 1-sink: an equivalent TDD respecting the linear
/// vtree of the reversed order. Edges skipping levels are completed with
/// both-literal pass-through pairs first.
Tdd obdd_to_tdd(const Obdd& b);

/// Inverse direction for TDDs respecting a linear vtree (leaf-left spine,
/// which is what Vtree::linear produces); the resulting OBDD respects the
/// reversal of the vtree's induced order. Throws for non-linear vtrees.
Obdd tdd_to_obdd(const Tdd& c);

/// Text format:
///   order x1 x2 ...
///   node <id> <var> <lo-id> <hi-id>
///   sink0 <id>
///   sink1 <id>
///   source <id>
Obdd read_obdd(std::istream& in);
void write_obdd(std::ostream& out, const Obdd& b);

} // namespace treedd
