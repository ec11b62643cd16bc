#include "doctest.h"
#include "support.hpp"

#include "treedd/error.hpp"
#include "treedd/tdd.hpp"

#include <sstream>

using namespace treedd;
using namespace treedd::testing;

namespace {

// tiny independent evaluator for the exported nnf text
struct NnfCircuit {
    struct Node {
        char kind; // 'L', 'A', 'O'
        Lit lit = 0;
        std::vector<long> children;
    };
    std::vector<Node> nodes;

    static NnfCircuit parse(const std::string& text) {
        NnfCircuit c;
        std::istringstream in(text);
        std::string line, word;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            if (!(ls >> word))
                continue;
            if (word == "nnf")
                continue;
            Node n;
            n.kind = word[0];
            if (word == "L") {
                ls >> n.lit;
            } else if (word == "A") {
                long cnt, id;
                ls >> cnt;
                while (ls >> id)
                    n.children.push_back(id);
            } else if (word == "O") {
                long j, cnt, id;
                ls >> j >> cnt;
                while (ls >> id)
                    n.children.push_back(id);
            }
            c.nodes.push_back(std::move(n));
        }
        return c;
    }

    bool eval(const Assignment& tau) const {
        std::vector<char> val(nodes.size());
        for (size_t i = 0; i < nodes.size(); ++i) {
            const Node& n = nodes[i];
            if (n.kind == 'L') {
                val[i] = tau.satisfies(n.lit);
            } else if (n.kind == 'A') {
                bool v = true;
                for (long ch : n.children)
                    v = v && val[ch];
                val[i] = v;
            } else {
                bool v = false;
                for (long ch : n.children)
                    v = v || val[ch];
                val[i] = v;
            }
        }
        return val.back(); // the root is the last node
    }
};

} // namespace

TEST_CASE("constant and single-model constructors") {
    Rng rng(2);
    VtreePtr vt = share(random_vtree(rng, 3));
    CHECK(count_models(constant_tdd(true, vt)) == 8);
    CHECK(constant_tdd(true, vt).width() == 1);
    CHECK(count_models(constant_tdd(false, vt)) == 0);

    VtreePtr v4 = share(random_vtree(rng, 4));
    Assignment ones({{1, true}, {2, true}, {3, true}, {4, true}});
    Tdd m = single_model_tdd(ones, v4);
    CHECK(m.width() == 1);
    CHECK(count_models(m) == 1);
    CHECK(evaluate(m, ones));

    Tdd l = literal_tdd(-2, v4);
    CHECK(count_models(l) == 8); // half of the assignments
}

TEST_CASE("clause TDD has width 2 and matches the oracle") {
    Rng rng(31);
    // unit clause over a 2-variable linear vtree: models {10, 11}
    VtreePtr two = share(Vtree::linear(std::vector<Var>{1, 2}));
    Tdd unit = clause_tdd(make_clause({1}), two);
    CHECK(unit.width() <= 2);
    CHECK(count_models(unit) == 2);

    VtreePtr v2 = share(random_vtree(rng, 2));
    CHECK(count_models(clause_tdd(make_clause({1, -2}), v2)) == 3);

    for (int iter = 0; iter < 40; ++iter) {
        const int n = 2 + iter % 7;
        CnfFormula f = random_cnf(rng, n, 1);
        VtreePtr vt = share(random_vtree(rng, n));
        Tdd c = clause_tdd(f.clauses[0], vt);
        CHECK(c.width() <= 2);
        CHECK(matches_table(c, fun_from_cnf(f)));
        CHECK(c.size() <= 2 * 2 * 2 * n); // size <= 2|X| k^2 with k = 2
    }

    VtreePtr small = share(Vtree::linear(std::vector<Var>{1}));
    CHECK_THROWS_AS(clause_tdd(make_clause({4}), small), domain_error);
}

TEST_CASE("evaluate marks families bottom-up") {
    Rng rng(5);
    VtreePtr vt = share(random_vtree(rng, 2));
    Tdd c = clause_tdd(make_clause({1, 2}), vt);
    CHECK_FALSE(evaluate(c, Assignment({{1, false}, {2, false}})));
    CHECK(evaluate(c, Assignment({{1, true}, {2, false}})));
    CHECK_THROWS_AS(evaluate(c, Assignment::single(1, true)), domain_error);
}

TEST_CASE("size and width bounds") {
    Rng rng(6);
    for (int iter = 0; iter < 20; ++iter) {
        const int n = 1 + iter % 8;
        Tdd c = tdd_from_table(random_table(rng, n), share(random_vtree(rng, n)));
        CHECK(c.size() <= 2L * n * c.width() * c.width());
    }
}

TEST_CASE("determinism validator") {
    Rng rng(8);
    VtreePtr vt = share(Vtree::linear(std::vector<Var>{1, 2}));

    // duplicate literal label in a leaf family
    NTdd bad1 = clause_tdd(make_clause({1, 2}), vt);
    bad1.families[vt->leaf_of(1)].push_back(TddNode{LeafLabel::pos, {}});
    auto r1 = validate_deterministic(bad1);
    REQUIRE(std::holds_alternative<DeterminismViolation>(r1));
    CHECK(std::get<DeterminismViolation>(r1).vtree_node == vt->leaf_of(1));

    // a pair feeding two nodes
    NTdd bad2 = clause_tdd(make_clause({1, 2}), vt);
    bad2.families[vt->root()].push_back(TddNode{LeafLabel::zero, {{0, 0}}});
    bad2.families[vt->root()].push_back(TddNode{LeafLabel::zero, {{0, 0}}});
    auto r2 = validate_deterministic(bad2);
    REQUIRE(std::holds_alternative<DeterminismViolation>(r2));
    CHECK(std::get<DeterminismViolation>(r2).vtree_node == vt->root());
    CHECK(std::get<DeterminismViolation>(r2).description.find("(0,0)") !=
          std::string::npos);

    // every constructor output passes
    for (int iter = 0; iter < 10; ++iter) {
        const int n = 1 + iter % 6;
        NTdd ok = tdd_from_table(random_table(rng, n), share(random_vtree(rng, n)));
        CHECK(std::holds_alternative<Tdd>(validate_deterministic(ok)));
    }
}

TEST_CASE("certificates witness exactly the models") {
    Rng rng(12);
    for (int iter = 0; iter < 25; ++iter) {
        const int n = 1 + iter % 8;
        BoolFunTable f = random_table(rng, n);
        VtreePtr vt = share(random_vtree(rng, n));
        Tdd c = tdd_from_table(f, vt);
        for (uint64_t i = 0; i < f.row_count(); ++i) {
            Assignment tau = assignment_from_index(f.vars(), i);
            auto cert = certificate_of(c, tau);
            CHECK(cert.has_value() == evaluate(c, tau));
            if (cert) {
                // structural conditions: chosen pairs wire up, leaves satisfied
                for (int t = 0; t < vt->node_count(); ++t) {
                    const int32_t g = cert->node_at[t];
                    REQUIRE(g >= 0);
                    if (vt->is_leaf(t)) {
                        CHECK(leaf_label_satisfied(c.families[t][g].label,
                                                   tau.value(vt->leaf_var(t))));
                    } else {
                        auto key = std::make_pair(cert->node_at[vt->left(t)],
                                                  cert->node_at[vt->right(t)]);
                        CHECK(std::binary_search(c.families[t][g].pairs.begin(),
                                                 c.families[t][g].pairs.end(), key));
                    }
                }
                CHECK(cert->node_at[vt->root()] == c.output);
            }
        }
    }
}

TEST_CASE("counting and enumeration agree with the oracle") {
    Rng rng(14);
    for (int iter = 0; iter < 25; ++iter) {
        const int n = 1 + iter % 8;
        BoolFunTable f = random_table(rng, n);
        Tdd c = tdd_from_table(f, share(random_vtree(rng, n)));
        CHECK(count_models(c) == f.model_count());
        std::set<std::string> seen;
        enumerate_models(c, UINT64_MAX, [&](const Assignment& a) {
            CHECK(f.value(a));
            CHECK(seen.insert(a.to_string()).second); // each model exactly once
            return true;
        });
        CHECK(seen.size() == f.model_count());
    }
    // limit is honored
    Tdd top = constant_tdd(true, share(Vtree::balanced(iota_vars(5))));
    uint64_t got = 0;
    enumerate_models(top, 7, [&](const Assignment&) {
        ++got;
        return true;
    });
    CHECK(got == 7);
}

TEST_CASE("tdd text format round-trips") {
    Rng rng(21);
    for (int iter = 0; iter < 15; ++iter) {
        const int n = 1 + iter % 7;
        Tdd c = tdd_from_table(random_table(rng, n), share(random_vtree(rng, n)));
        std::ostringstream out;
        write_tdd(out, c);
        std::istringstream in(out.str());
        Tdd back = read_tdd(in);
        CHECK(back == c);
    }

    // malformed pair reference
    VtreePtr vt = share(Vtree::linear(std::vector<Var>{1, 2}));
    std::ostringstream out;
    write_tdd(out, constant_tdd(true, vt));
    std::string text = out.str();
    auto pos = text.find("(0,0)");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 5, "(0,7)");
    std::istringstream in(text);
    CHECK_THROWS_AS(read_tdd(in), parse_error);
}

TEST_CASE("d-DNNF export evaluates to the same function") {
    Rng rng(33);
    for (int iter = 0; iter < 20; ++iter) {
        const int n = 1 + iter % 6;
        BoolFunTable f = random_table(rng, n);
        Tdd c = tdd_from_table(f, share(random_vtree(rng, n)));
        std::ostringstream out;
        write_ddnnf(out, c);
        NnfCircuit nnf = NnfCircuit::parse(out.str());
        for (uint64_t i = 0; i < f.row_count(); ++i) {
            Assignment tau = assignment_from_index(f.vars(), i);
            CHECK(nnf.eval(tau) == f.bit(i));
        }
    }
    // the constant-1 circuit exports a trivial nnf
    std::ostringstream out;
    write_ddnnf(out, constant_tdd(true, share(Vtree::linear(std::vector<Var>{1}))));
    CHECK(NnfCircuit::parse(out.str()).eval(Assignment::single(1, false)));
}
