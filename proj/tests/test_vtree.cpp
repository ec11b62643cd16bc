#include "doctest.h"
#include "support.hpp"

#include "treedd/error.hpp"
#include "treedd/vtree.hpp"

#include <sstream>

using namespace treedd;
using namespace treedd::testing;

TEST_CASE("linear vtree shapes") {
    // single variable: one leaf
    Vtree one = Vtree::linear(std::vector<Var>{1});
    CHECK(one.node_count() == 1);
    CHECK(one.is_leaf(one.root()));
    CHECK(one.leaf_var(one.root()) == 1);

    // two variables: root with x1 left, x2 right
    Vtree two = Vtree::linear(std::vector<Var>{1, 2});
    CHECK(two.node_count() == 3);
    CHECK(two.leaf_var(two.left(two.root())) == 1);
    CHECK(two.leaf_var(two.right(two.root())) == 2);

    // three variables: root(leaf x1, root(leaf x2, leaf x3))
    Vtree three = Vtree::linear(std::vector<Var>{1, 2, 3});
    CHECK(three.leaf_var(three.left(three.root())) == 1);
    const int sub = three.right(three.root());
    CHECK(!three.is_leaf(sub));
    CHECK(three.leaf_var(three.left(sub)) == 2);
    CHECK(three.leaf_var(three.right(sub)) == 3);
    CHECK(three.is_linear());

    CHECK_THROWS_AS(Vtree::linear(std::vector<Var>{}), domain_error);
}

TEST_CASE("linear vtree round-trips its order") {
    Rng rng(7);
    for (int n = 1; n <= 9; ++n) {
        auto order = iota_vars(n);
        std::shuffle(order.begin(), order.end(), rng);
        CHECK(Vtree::linear(order).leaf_order() == order);
    }
}

TEST_CASE("balanced vtree splits at the midpoint") {
    Vtree four = Vtree::balanced(std::vector<Var>{1, 2, 3, 4});
    const int l = four.left(four.root()), r = four.right(four.root());
    CHECK(four.vars_below(l) == std::vector<Var>{1, 2});
    CHECK(four.vars_below(r) == std::vector<Var>{3, 4});

    CHECK(Vtree::balanced(std::vector<Var>{5}).node_count() == 1);

    // depth of a balanced vtree over 8 leaves is 3
    Vtree eight = Vtree::balanced(iota_vars(8));
    int depth = 0;
    for (int t = 0; t < eight.node_count(); ++t) {
        int d = 0;
        for (int u = t; eight.parent(u) >= 0; u = eight.parent(u))
            ++d;
        depth = std::max(depth, d);
    }
    CHECK(depth == 3);
}

TEST_CASE("vars_below is the disjoint union of the children") {
    Rng rng(11);
    for (int iter = 0; iter < 25; ++iter) {
        Vtree t = random_vtree(rng, 1 + iter % 10);
        for (int n = 0; n < t.node_count(); ++n) {
            if (t.is_leaf(n))
                continue;
            const auto& l = t.vars_below(t.left(n));
            const auto& r = t.vars_below(t.right(n));
            std::vector<Var> merged(l);
            merged.insert(merged.end(), r.begin(), r.end());
            std::sort(merged.begin(), merged.end());
            CHECK(std::adjacent_find(merged.begin(), merged.end()) == merged.end());
            CHECK(merged == t.vars_below(n));
        }
    }
}

TEST_CASE("remove_leaf contracts the freed parent") {
    // root(leaf x1, leaf x2) minus x1 -> single leaf x2
    Vtree two = Vtree::linear(std::vector<Var>{1, 2});
    Vtree r = remove_leaf(two, 1);
    CHECK(r.node_count() == 1);
    CHECK(r.leaf_var(r.root()) == 2);

    // root(leaf x1, root(leaf x2, leaf x3)) minus x2 -> root(leaf x1, leaf x3)
    Vtree three = Vtree::linear(std::vector<Var>{1, 2, 3});
    Vtree s = remove_leaf(three, 2);
    CHECK(s.node_count() == 3);
    CHECK(s.leaf_var(s.left(s.root())) == 1);
    CHECK(s.leaf_var(s.right(s.root())) == 3);

    // the child of the removed parent attaches to the grandparent
    Vtree deep = Vtree::balanced(iota_vars(6));
    Vtree d = remove_leaf(deep, 3);
    std::vector<Var> expect{1, 2, 4, 5, 6};
    CHECK(d.vars() == expect);

    CHECK_THROWS_AS(remove_leaf(two, 9), domain_error);
    Vtree single = Vtree::linear(std::vector<Var>{4});
    CHECK_THROWS_AS(remove_leaf(single, 4), domain_error);
}

TEST_CASE("remove_leaf keeps every other leaf and stays binary") {
    Rng rng(3);
    for (int iter = 0; iter < 30; ++iter) {
        const int n = 2 + iter % 9;
        Vtree t = random_vtree(rng, n);
        Var x = static_cast<Var>(1 + static_cast<int>(rng() % n));
        Vtree r = remove_leaf(t, x);
        std::vector<Var> expect;
        for (Var v : t.vars())
            if (v != x)
                expect.push_back(v);
        CHECK(r.vars() == expect);
        for (int node = 0; node < r.node_count(); ++node)
            if (!r.is_leaf(node)) {
                CHECK(r.left(node) >= 0);
                CHECK(r.right(node) >= 0);
            }
    }
}

TEST_CASE("vtree text format round-trips") {
    Rng rng(5);
    for (int iter = 0; iter < 20; ++iter) {
        Vtree t = random_vtree(rng, 1 + iter % 12);
        std::ostringstream out;
        write_vtree(out, t);
        std::istringstream in(out.str());
        Vtree back = read_vtree(in);
        CHECK(back == t);
    }
}

TEST_CASE("vtree parser rejects malformed input") {
    auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_vtree(in), parse_error);
    };
    reject("");                                     // no header
    reject("vtree 1\nL 0 1\n");                     // missing root
    reject("vtree 2\nL 0 1\nL 1 1\nroot 0\n");      // unreachable node
    reject("vtree 3\nI 0 1 2\nL 1 1\nL 2 1\nroot 0\n"); // duplicate variable
    reject("vtree 1\nL 0 0\nroot 0\n");             // variable must be positive
}
