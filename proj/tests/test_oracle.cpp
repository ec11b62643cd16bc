#include "doctest.h"
#include "support.hpp"

#include "treedd/benchfn.hpp"
#include "treedd/error.hpp"
#include "treedd/oracle.hpp"

#include <sstream>

using namespace treedd;
using namespace treedd::testing;

namespace {

// the running example: C1=(x1 v x2 v x3), C2=(x1 v x4 v x5), C3=(x4 v x6),
// C4=(-x5 v x9), C5=(x6 v x7 v x8), C6=(x9 v x10 v x11)
CnfFormula example_formula() {
    CnfFormula f;
    f.variables = iota_vars(11);
    for (auto lits : std::vector<std::vector<Lit>>{
             {1, 2, 3}, {1, 4, 5}, {4, 6}, {-5, 9}, {6, 7, 8}, {9, 10, 11}})
        f.clauses.push_back(make_clause(lits));
    return f;
}

} // namespace

TEST_CASE("fun_from_cnf basics") {
    CnfFormula unit;
    unit.variables = {1};
    unit.clauses.push_back(make_clause({1}));
    BoolFunTable f = fun_from_cnf(unit);
    CHECK(f.row_count() == 2);
    CHECK_FALSE(f.bit(0));
    CHECK(f.bit(1));

    CnfFormula pair;
    pair.variables = {1, 2};
    pair.clauses.push_back(make_clause({1, 2}));
    CHECK(fun_from_cnf(pair).model_count() == 3);

    // exhaustive scan over 2^11 assignments; every count below is reused as
    // a cross-check elsewhere
    BoolFunTable fig = fun_from_cnf(example_formula());
    CHECK(fig.row_count() == 2048);
    uint64_t brute = 0;
    for (uint64_t i = 0; i < fig.row_count(); ++i)
        brute += fig.bit(i);
    CHECK(fig.model_count() == brute);
    CHECK(fig.model_count() > 0);

    CnfFormula big;
    big.variables = iota_vars(21);
    CHECK_THROWS_AS(fun_from_cnf(big), domain_error);
}

TEST_CASE("restrict follows the partial-assignment semantics") {
    CnfFormula and2;
    and2.variables = {1, 2};
    and2.clauses.push_back(make_clause({1}));
    and2.clauses.push_back(make_clause({2}));
    BoolFunTable f = fun_from_cnf(and2);

    BoolFunTable on = f.restrict(Assignment::single(1, true));
    CHECK(on.vars() == std::vector<Var>{2});
    CHECK(on.model_count() == 1); // the function x2

    BoolFunTable off = f.restrict(Assignment::single(1, false));
    CHECK(off.model_count() == 0); // constant 0 over {x2}

    CHECK_THROWS_AS(f.restrict(Assignment::single(7, true)), domain_error);

    // restricting PARITY on an odd sub-assignment flips it
    BoolFunTable p4 = parity(4);
    Assignment odd({{1, true}, {2, false}});
    BoolFunTable rest = p4.restrict(odd);
    BoolFunTable p2 = parity(2);
    for (uint64_t i = 0; i < 4; ++i)
        CHECK(rest.bit(i) == !p2.bit(i));
}

TEST_CASE("restriction composes") {
    Rng rng(23);
    for (int iter = 0; iter < 20; ++iter) {
        BoolFunTable f = random_table(rng, 6);
        Assignment t1({{2, static_cast<bool>(rng() & 1)}});
        Assignment t2({{5, static_cast<bool>(rng() & 1)}, {1, false}});
        CHECK(f.restrict(t1).restrict(t2) == f.restrict(t1.combined(t2)));
    }
}

TEST_CASE("count_subfunctions") {
    // PARITY has exactly two Y-subfunctions for any proper nonempty Y
    BoolFunTable p = parity(5);
    for (auto y : std::vector<std::vector<Var>>{{1}, {2, 4}, {1, 2, 3}, {1, 2, 3, 4}})
        CHECK(count_subfunctions(p, y, true) == 2);

    BoolFunTable top = BoolFunTable::constant(true, iota_vars(4));
    CHECK(count_subfunctions(top, std::vector<Var>{1, 3}, true) == 1);

    // enumeration of 2^3 restrictions, compared table by table
    BoolFunTable h = hwb(7);
    std::vector<Var> y{1, 2, 3};
    std::set<std::string> dumps;
    for (uint64_t i = 0; i < 8; ++i) {
        BoolFunTable sub = h.restrict(assignment_from_index(y, i));
        if (sub.model_count() > 0)
            dumps.insert(sub.hex_dump());
    }
    CHECK(count_subfunctions(h, y, true) == dumps.size());

    // boundary cases
    Rng rng4(4);
    BoolFunTable f = random_table(rng4, 5);
    if (f.model_count() == 0 || f.model_count() == 32)
        f = BoolFunTable::literal(3, iota_vars(5));
    CHECK(count_subfunctions(f, std::vector<Var>{}, false) == 1);
    uint64_t full = count_subfunctions(f, f.vars(), false);
    CHECK(full == 2); // both 0-ary constants occur for a non-constant table
}

TEST_CASE("factor width") {
    BoolFunTable top = BoolFunTable::constant(true, iota_vars(4));
    Rng rng(9);
    CHECK(factor_width(top, random_vtree(rng, 4)) == 1);

    // a single clause stays within width 2 for any vtree
    CnfFormula one;
    one.variables = iota_vars(5);
    one.clauses.push_back(make_clause({1, -3, 5}));
    BoolFunTable cf = fun_from_cnf(one);
    for (int iter = 0; iter < 10; ++iter)
        CHECK(factor_width(cf, random_vtree(rng, 5)) <= 2);

    // parity again, at every internal node
    BoolFunTable p = parity(6);
    Vtree bal = Vtree::balanced(iota_vars(6));
    auto profile = subfunction_profile(p, bal);
    for (int n = 0; n < bal.node_count(); ++n) {
        if (bal.is_leaf(n))
            CHECK(profile[n] == 2);
        else
            CHECK(profile[n] == (n == bal.root() ? 1 : 2));
    }

    CHECK_THROWS_AS(factor_width(p, random_vtree(rng, 5)), domain_error);
}

TEST_CASE("assignment encoding is the little-endian expansion over sorted vars") {
    std::vector<Var> vars{2, 5, 9};
    Assignment a = assignment_from_index(vars, 0b101);
    CHECK(a.value(2) == true);
    CHECK(a.value(5) == false);
    CHECK(a.value(9) == true);
    BoolFunTable f = BoolFunTable::literal(5, vars);
    CHECK(f.index_of(a) == 0b101);
    CHECK_FALSE(f.value(a));
}

TEST_CASE("zero-variable tables act as constants") {
    BoolFunTable t = BoolFunTable::constant(true, {});
    CHECK(t.row_count() == 1);
    CHECK(t.model_count() == 1);
    Rng rng17(17);
    BoolFunTable f = random_table(rng17, 3);
    Assignment full = assignment_from_index(f.vars(), 5);
    BoolFunTable r = f.restrict(full);
    CHECK(r.var_count() == 0);
    CHECK(r.bit(0) == f.bit(5));
}
