#include "treedd/learn.hpp"

#include "treedd/error.hpp"
#include "treedd/minimize.hpp"
#include "treedd/transform.hpp"

#include <algorithm>
#include <map>

namespace treedd {

namespace {

// Observation-table style learner state over a fixed vtree: Nodes_t holds
// partial assignments on X_t, Tests_t holds separating contexts on X \ X_t.
// Leaves keep both assignments of their variable and use syntactic identity
// as their equivalence, so only internal nodes carry Tests.
class Learner {
public:
    Learner(VtreePtr t, Teacher& teacher, LearnStats* stats)
        : vt_(std::move(t)), teacher_(teacher), stats_(stats) {
        const int n = vt_->node_count();
        nodes_.resize(n);
        tests_.resize(n);
        for (int i = 0; i < n; ++i) {
            if (vt_->is_leaf(i)) {
                const Var x = vt_->leaf_var(i);
                nodes_[i] = {Assignment::single(x, false), Assignment::single(x, true)};
            }
        }
        // the root starts with the empty assignment; it seeds the very first
        // closure round and is skipped once real assignments exist
        nodes_[vt_->root()].push_back(Assignment{});
        // the only context at the root is the empty one
        tests_[vt_->root()].push_back(Assignment{});
    }

    Tdd run() {
        for (long round = 0; round < kMaxRounds; ++round) {
            close_and_make_consistent();
            Tdd hypothesis = build();
            if (stats_)
                ++stats_->equivalence_queries;
            auto cx = teacher_.equivalence(hypothesis);
            if (!cx)
                return canonize(hypothesis);
            if (evaluate(hypothesis, *cx) == member(*cx))
                throw learn_error("teacher returned an assignment that is not a "
                                  "counterexample");
            for (int t = 0; t < vt_->node_count(); ++t) {
                if (vt_->is_leaf(t))
                    continue;
                Assignment part = cx->restricted(vt_->vars_below(t));
                if (std::find(nodes_[t].begin(), nodes_[t].end(), part) ==
                    nodes_[t].end())
                    nodes_[t].push_back(std::move(part));
            }
        }
        throw learn_error("learner did not converge");
    }

private:
    static constexpr long kMaxRounds = 100000;

    bool member(const Assignment& tau) {
        auto it = cache_.find(tau);
        if (it != cache_.end())
            return it->second;
        if (stats_)
            ++stats_->membership_queries;
        bool b = teacher_.membership(tau);
        cache_.emplace(tau, b);
        return b;
    }

    // at-t-equivalence; assignments with different domains never compare equal
    // (this retires the root's seed assignment once real ones arrive)
    bool equivalent_at(int t, const Assignment& a, const Assignment& b) {
        if (a.domain() != b.domain())
            return false;
        if (vt_->is_leaf(t))
            return a == b;
        for (const Assignment& k : tests_[t])
            if (member(a.combined(k)) != member(b.combined(k)))
                return false;
        return true;
    }

    bool close_once() {
        bool changed = false;
        for (int t = vt_->node_count() - 1; t >= 0; --t) { // children first
            if (vt_->is_leaf(t))
                continue;
            const int l = vt_->left(t), r = vt_->right(t);
            for (const Assignment& tl : nodes_[l]) {
                if (tl.domain_size() != vt_->vars_below(l).size())
                    continue;
                for (const Assignment& tr : nodes_[r]) {
                    if (tr.domain_size() != vt_->vars_below(r).size())
                        continue;
                    Assignment sigma = tl.combined(tr);
                    bool found = false;
                    for (const Assignment& existing : nodes_[t])
                        if (equivalent_at(t, sigma, existing)) {
                            found = true;
                            break;
                        }
                    if (!found) {
                        nodes_[t].push_back(std::move(sigma));
                        changed = true;
                    }
                }
            }
        }
        return changed;
    }

    // one consistency defect fixed per call; returns false when consistent
    bool fix_one_inconsistency() {
        for (int t = 0; t < vt_->node_count(); ++t) {
            if (vt_->is_leaf(t))
                continue;
            const int l = vt_->left(t), r = vt_->right(t);
            // left-consistency, then right-consistency
            for (int side = 0; side < 2; ++side) {
                const int a = side == 0 ? l : r;
                const int b = side == 0 ? r : l;
                if (vt_->is_leaf(a))
                    continue; // leaf equivalence is identity, nothing to separate
                for (size_t i = 0; i < nodes_[a].size(); ++i) {
                    for (size_t j = i + 1; j < nodes_[a].size(); ++j) {
                        if (!equivalent_at(a, nodes_[a][i], nodes_[a][j]))
                            continue;
                        for (const Assignment& other : nodes_[b]) {
                            if (other.domain_size() != vt_->vars_below(b).size())
                                continue;
                            for (const Assignment& k : tests_[t]) {
                                Assignment c1 = side == 0
                                                    ? nodes_[a][i].combined(other)
                                                    : other.combined(nodes_[a][i]);
                                Assignment c2 = side == 0
                                                    ? nodes_[a][j].combined(other)
                                                    : other.combined(nodes_[a][j]);
                                if (member(c1.combined(k)) != member(c2.combined(k))) {
                                    // separating context for family a:
                                    // the sibling part times the failing test
                                    tests_[a].push_back(other.combined(k));
                                    return true;
                                }
                            }
                        }
                    }
                }
            }
        }
        return false;
    }

    void close_and_make_consistent() {
        while (true) {
            while (close_once()) {
            }
            if (!fix_one_inconsistency())
                return;
        }
    }

    // class representatives per node, in first-appearance order
    std::vector<std::vector<Assignment>> classes_of(int t) {
        std::vector<std::vector<Assignment>> classes;
        for (const Assignment& tau : nodes_[t]) {
            if (tau.domain_size() != vt_->vars_below(t).size())
                continue; // the root seed
            bool placed = false;
            for (auto& cls : classes)
                if (equivalent_at(t, cls.front(), tau)) {
                    cls.push_back(tau);
                    placed = true;
                    break;
                }
            if (!placed)
                classes.push_back({tau});
        }
        return classes;
    }

    Tdd build() {
        const Vtree& vt = *vt_;
        NTdd h;
        h.vtree = vt_;
        h.families.assign(vt.node_count(), {});
        std::vector<std::vector<Assignment>> reps(vt.node_count());
        for (int t = vt.node_count() - 1; t >= 0; --t) {
            if (vt.is_leaf(t)) {
                // class order fixed: x=0 first
                reps[t] = {nodes_[t][0], nodes_[t][1]};
                h.families[t].push_back(TddNode{LeafLabel::neg, {}});
                h.families[t].push_back(TddNode{LeafLabel::pos, {}});
                continue;
            }
            auto classes = classes_of(t);
            reps[t].reserve(classes.size());
            for (auto& cls : classes)
                reps[t].push_back(cls.front());
            h.families[t].assign(classes.size(), TddNode{});
            const int l = vt.left(t), r = vt.right(t);
            for (int32_t i = 0; i < static_cast<int32_t>(reps[l].size()); ++i) {
                for (int32_t j = 0; j < static_cast<int32_t>(reps[r].size()); ++j) {
                    Assignment sigma = reps[l][i].combined(reps[r][j]);
                    int32_t k = -1;
                    for (int32_t q = 0; q < static_cast<int32_t>(reps[t].size()); ++q)
                        if (equivalent_at(t, sigma, reps[t][q])) {
                            k = q;
                            break;
                        }
                    if (k < 0)
                        throw learn_error("state not closed at hypothesis build");
                    h.families[t][k].pairs.emplace_back(i, j);
                }
            }
            for (auto& n : h.families[t])
                std::sort(n.pairs.begin(), n.pairs.end());
        }
        const int root = vt.root();
        h.output = -1;
        for (int32_t q = 0; q < static_cast<int32_t>(reps[root].size()); ++q)
            if (member(reps[root][q])) {
                h.output = q;
                break;
            }
        if (h.output < 0) {
            // hidden function looks constant 0 so far: dedicated reject node
            h.families[root].push_back(TddNode{});
            h.output = static_cast<int32_t>(h.families[root].size()) - 1;
        }
        return Tdd(std::move(h), Tdd::unchecked_t{});
    }

    VtreePtr vt_;
    Teacher& teacher_;
    LearnStats* stats_;
    std::vector<std::vector<Assignment>> nodes_;
    std::vector<std::vector<Assignment>> tests_;
    std::map<Assignment, bool> cache_;
};

class TableTeacher : public Teacher {
public:
    explicit TableTeacher(BoolFunTable f) : f_(std::move(f)) {}

    bool membership(const Assignment& tau) override { return f_.value(tau); }

    std::optional<Assignment> equivalence(const Tdd& h) override {
        for (uint64_t i = 0; i < f_.row_count(); ++i) {
            Assignment tau = assignment_from_index(f_.vars(), i);
            if (evaluate(h, tau) != f_.bit(i))
                return tau;
        }
        return std::nullopt;
    }

private:
    BoolFunTable f_;
};

class TddTeacher : public Teacher {
public:
    explicit TddTeacher(Tdd c) : hidden_(std::move(c)), canon_(canonize(hidden_)) {}

    bool membership(const Assignment& tau) override { return evaluate(hidden_, tau); }

    std::optional<Assignment> equivalence(const Tdd& h) override {
        if (canonize(h) == canon_)
            return std::nullopt;
        Tdd diff = canonize(apply(op_xor, h, hidden_));
        auto model = any_model(diff);
        if (!model)
            throw learn_error("inequivalent hypothesis with an empty difference");
        return model;
    }

private:
    Tdd hidden_;
    Tdd canon_;
};

} // namespace

Tdd learn(VtreePtr t, Teacher& teacher, LearnStats* stats) {
    Learner learner(std::move(t), teacher, stats);
    return learner.run();
}

std::unique_ptr<Teacher> truth_table_teacher(BoolFunTable f) {
    return std::make_unique<TableTeacher>(std::move(f));
}

std::unique_ptr<Teacher> tdd_teacher(Tdd c) {
    return std::make_unique<TddTeacher>(std::move(c));
}

} // namespace treedd
