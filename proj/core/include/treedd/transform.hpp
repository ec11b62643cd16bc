#pragma once

#include "treedd/tdd.hpp"

#include <span>
#include <string>

namespace treedd {

/// One of the 16 binary Boolean operations, as a 4-entry truth table:
/// bit (a<<1 | b) holds f(a, b).
struct BoolOp {
    uint8_t table = 0;

    bool operator()(bool a, bool b) const {
        return (table >> ((static_cast<int>(a) << 1) | static_cast<int>(b))) & 1;
    }
    bool operator==(const BoolOp&) const = default;

    static constexpr uint8_t kAnd = 0b1000, kOr = 0b1110, kXor = 0b0110,
                             kImplies = 0b1011, kIff = 0b1001, kNand = 0b0111,
                             kNor = 0b0001, kAndNot = 0b0100;

    /// Accepts and|or|xor|implies|iff|nand|nor|andnot or a 4-bit table like
    /// "0110" (f(1,1) f(1,0) f(0,1) f(0,0)).
    static BoolOp from_name(const std::string& name);
};

inline constexpr BoolOp op_and{BoolOp::kAnd};
inline constexpr BoolOp op_or{BoolOp::kOr};
inline constexpr BoolOp op_xor{BoolOp::kXor};

/// Removes 0-labeled leaves and empty-input nodes, propagating deletions
/// upward; the function is unchanged and determinism is preserved. An
/// unsatisfiable circuit collapses to the empty-function marker.
Tdd eliminate_zeros(const Tdd& c);
NTdd eliminate_zeros(const NTdd& c);

/// Projects away a variable the circuit does not syntactically depend on
/// (its leaf family holds constants only). Result respects T \ x.
Tdd remove_unused_variable(const Tdd& c, Var x);

/// f[x/b]: relabels the x-leaf family, then removes x. Result respects
/// T \ x; never grows size or width. x must not be the last variable.
Tdd condition(const Tdd& c, Var x, bool b);

/// Makes the circuit t-full at every vtree node t: adds missing literal
/// nodes at leaves and one collector node per internal family covering all
/// unused child pairs. Width grows by at most 1, function unchanged.
Tdd make_full(const Tdd& c);

/// not f, via make_full and merging the non-output root nodes.
/// Width <= k+1, size <= |C| + 2|X| k^2.
Tdd negate(const Tdd& c);

/// f /\ g by the pair-product construction, materialized only for products
/// reachable from (out1, out2). Both inputs must respect the same vtree.
/// Width <= k k', size <= |C1| |C2|.
Tdd conjoin(const Tdd& c1, const Tdd& c2);

/// f(C1, C2) for any binary op: make both full, product, then merge the
/// root products selected by f. Width <= (k+1)(k'+1).
Tdd apply(BoolOp op, const Tdd& c1, const Tdd& c2);

/// f \/ g as not(not f /\ not g); semantically equal to apply(or, ...).
Tdd or_via_negation(const Tdd& c1, const Tdd& c2);

/// Existential projection of Y: relabels Y-literals to 1 and removes the
/// leaves. Does not preserve determinism. Result respects T \ Y; width and
/// size never grow. Y must leave at least one variable.
NTdd forget(const Tdd& c, std::span<const Var> y);

/// exists x. f as f[x/0] \/ f[x/1]; stays deterministic.
Tdd forget_single(const Tdd& c, Var x);

/// Subset construction over realizable t-shapes; the result is full and
/// deterministic with width <= 2^k. On an already-deterministic input the
/// realizable shapes are singletons and the empty set, so this acts like
/// make_full.
Tdd determinize(const NTdd& c);

} // namespace treedd
