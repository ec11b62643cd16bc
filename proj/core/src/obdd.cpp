#include "treedd/obdd.hpp"

#include "treedd/error.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <tuple>
#include <ostream>
#include <sstream>

namespace treedd {

int Obdd::level_of(Var x) const {
    for (size_t i = 0; i < order.size(); ++i)
        if (order[i] == x)
            return static_cast<int>(i);
    throw domain_error("obdd: variable " + std::to_string(x) + " not in the order");
}

void validate_obdd(const Obdd& b) {
    if (b.order.empty())
        throw domain_error("obdd: empty variable order");
    {
        auto sorted = b.order;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw domain_error("obdd: duplicate variable in the order");
    }
    if (b.nodes.size() < 2)
        throw domain_error("obdd: missing sink slots");
    if (b.source < 0 || b.source >= static_cast<int>(b.nodes.size()))
        throw domain_error("obdd: source out of range");
    for (size_t id = 2; id < b.nodes.size(); ++id) {
        const auto& n = b.nodes[id];
        const int lvl = b.level_of(n.var);
        for (int target : {n.lo, n.hi}) {
            if (target < 0 || target >= static_cast<int>(b.nodes.size()))
                throw domain_error("obdd: edge target out of range");
            if (!b.is_sink(target) && b.level_of(b.nodes[target].var) <= lvl)
                throw domain_error("obdd: edge does not go forward in the order");
        }
    }
}

bool eval_obdd(const Obdd& b, const Assignment& tau) {
    int cur = b.source;
    while (!b.is_sink(cur)) {
        const auto& n = b.nodes[cur];
        cur = tau.value(n.var) ? n.hi : n.lo;
    }
    return cur == Obdd::sink1;
}

BoolFunTable fun_from_obdd(const Obdd& b, int max_vars) {
    std::vector<Var> vars = b.order;
    std::sort(vars.begin(), vars.end());
    if (static_cast<int>(vars.size()) > max_vars)
        throw domain_error("oracle: obdd exceeds the variable limit");
    std::vector<bool> bits(uint64_t{1} << vars.size());
    for (uint64_t i = 0; i < bits.size(); ++i)
        bits[i] = eval_obdd(b, assignment_from_index(vars, i));
    return BoolFunTable(vars, std::move(bits));
}

namespace {

// Strictly layered view: level i holds the nodes testing order[i]; every
// edge goes to the next level; sinks live at level n. Level-skipping edges
// are completed with shared pass-through nodes.
struct Layered {
    // per level, per node: successor indices into the next level's node list
    // (or {0,1} sink codes at the last level)
    std::vector<std::vector<std::pair<int, int>>> levels;
    int source = -1; // index within level 0
};

Layered layerize(const Obdd& b) {
    const int n = static_cast<int>(b.order.size());
    Layered out;
    out.levels.resize(n);
    // new node ids per level, keyed by the original node (level, orig-id);
    // pass-through dummies keyed by (level, ~target)
    std::vector<std::map<long, int>> idx(n);
    struct Job {
        int level;
        long key;
        int orig; // original node id, or -(target+2) for a pass-through
    };
    std::vector<Job> stack;
    auto intern = [&](int level, int orig_or_pass) -> int {
        long key = orig_or_pass;
        auto [it, fresh] = idx[level].try_emplace(key,
                                                  static_cast<int>(out.levels[level].size()));
        if (fresh) {
            out.levels[level].push_back({-1, -1});
            stack.push_back({level, key, orig_or_pass});
        }
        return it->second;
    };
    // resolve an edge from `fromLevel` to original target id
    std::function<int(int, int)> route = [&](int from_level, int target) -> int {
        const int tlevel = b.is_sink(target) ? n : b.level_of(b.nodes[target].var);
        if (tlevel == from_level + 1)
            return b.is_sink(target) ? target : intern(tlevel, target);
        // insert a pass-through at the next level
        return intern(from_level + 1, -(target + 2));
    };

    if (b.is_sink(b.source)) {
        // constant: a single pass-through chain to the sink
        out.source = intern(0, -(b.source + 2));
    } else if (b.level_of(b.nodes[b.source].var) > 0) {
        out.source = intern(0, -(b.source + 2));
    } else {
        out.source = intern(0, b.source);
    }
    while (!stack.empty()) {
        Job j = stack.back();
        stack.pop_back();
        int lo, hi;
        if (j.orig >= 0) {
            lo = route(j.level, b.nodes[j.orig].lo);
            hi = route(j.level, b.nodes[j.orig].hi);
        } else {
            const int target = -j.orig - 2;
            const int tlevel = b.is_sink(target) ? n : b.level_of(b.nodes[target].var);
            if (tlevel == j.level) { // arrived: behave like the original node
                lo = route(j.level, b.nodes[target].lo);
                hi = route(j.level, b.nodes[target].hi);
            } else {
                int next = (tlevel == j.level + 1 && !b.is_sink(target))
                               ? intern(tlevel, target)
                               : (tlevel == j.level + 1 ? target
                                                        : intern(j.level + 1, -(target + 2)));
                lo = hi = next;
            }
        }
        out.levels[j.level][idx[j.level][j.key]] = {lo, hi};
    }
    return out;
}

} // namespace

Tdd obdd_to_tdd(const Obdd& b) {
    validate_obdd(b);
    std::vector<Var> reversed(b.order.rbegin(), b.order.rend());
    VtreePtr vt = share(Vtree::linear(reversed));
    const int n = static_cast<int>(b.order.size());

    Layered layers = layerize(b);

    // vtree spine: spine[i] = family holding states after reading x_1..x_{i+1}
    // (i.e. the internal node with vars {x_1..x_{i+1}}), spine[0] = leaf of x_1
    std::vector<int> spine(n);
    {
        int u = vt->root(); // vars {x_1..x_n}
        for (int i = n - 1; i >= 1; --i) {
            spine[i] = u;
            u = vt->right(u);
        }
        spine[0] = u; // leaf of x_1
    }

    NTdd c;
    c.vtree = vt;
    c.families.assign(vt->node_count(), {});

    if (n == 1) {
        // states after x_1 are the sinks themselves
        const auto& lvl = layers.levels[0];
        auto [lo, hi] = lvl[layers.source];
        LeafLabel label;
        if (lo == Obdd::sink1 && hi == Obdd::sink1)
            label = LeafLabel::one;
        else if (hi == Obdd::sink1)
            label = LeafLabel::pos;
        else if (lo == Obdd::sink1)
            label = LeafLabel::neg;
        else
            return empty_function(vt);
        c.families[spine[0]].push_back(TddNode{label, {}});
        c.output = 0;
        return Tdd(std::move(c), Tdd::unchecked_t{});
    }

    // g-node index per (level >= 1) layered node; level-1 nodes live in the
    // x_1 leaf family, deeper ones in spine families. Sinks get two slots.
    std::vector<std::vector<int32_t>> gid(n);
    int32_t sink_gid[2] = {-1, -1};

    // level-1 nodes: leaf labels from the source's outgoing edges
    {
        auto [lo, hi] = layers.levels[0][layers.source];
        gid[1].assign(layers.levels[1].size(), -1);
        auto& fam = c.families[spine[0]];
        if (lo == hi) {
            gid[1][lo] = static_cast<int32_t>(fam.size());
            fam.push_back(TddNode{LeafLabel::one, {}});
        } else {
            gid[1][hi] = static_cast<int32_t>(fam.size());
            fam.push_back(TddNode{LeafLabel::pos, {}});
            gid[1][lo] = static_cast<int32_t>(fam.size());
            fam.push_back(TddNode{LeafLabel::neg, {}});
        }
    }

    // literal nodes for leaves x_2..x_n created on demand
    std::vector<int32_t> lit_pos(n, -1), lit_neg(n, -1);
    auto literal_node = [&](int level, bool value) -> int32_t {
        const int leaf = vt->leaf_of(b.order[level]);
        auto& cache = value ? lit_pos : lit_neg;
        if (cache[level] < 0) {
            cache[level] = static_cast<int32_t>(c.families[leaf].size());
            c.families[leaf].push_back(
                TddNode{value ? LeafLabel::pos : LeafLabel::neg, {}});
        }
        return cache[level];
    };

    // build families bottom-up along the spine: states after x_{i+1}
    for (int i = 1; i < n; ++i) {
        const bool to_sinks = i + 1 == n; // level n states are the sinks
        auto& fam = c.families[spine[i]];
        const size_t nstates = to_sinks ? 2 : layers.levels[i + 1].size();
        std::vector<std::vector<std::pair<int32_t, int32_t>>> pairs(nstates);
        for (size_t w = 0; w < layers.levels[i].size(); ++w) {
            if (gid[i][w] < 0)
                continue;
            auto [lo, hi] = layers.levels[i][w];
            pairs[lo].push_back({literal_node(i, false), gid[i][w]});
            pairs[hi].push_back({literal_node(i, true), gid[i][w]});
        }
        if (to_sinks) {
            for (int s = 0; s < 2; ++s)
                if (!pairs[s].empty()) {
                    std::sort(pairs[s].begin(), pairs[s].end());
                    pairs[s].erase(std::unique(pairs[s].begin(), pairs[s].end()),
                                   pairs[s].end());
                    sink_gid[s] = static_cast<int32_t>(fam.size());
                    fam.push_back(TddNode{LeafLabel::zero, std::move(pairs[s])});
                }
        } else {
            gid[i + 1].assign(nstates, -1);
            for (size_t v = 0; v < nstates; ++v)
                if (!pairs[v].empty()) {
                    std::sort(pairs[v].begin(), pairs[v].end());
                    pairs[v].erase(std::unique(pairs[v].begin(), pairs[v].end()),
                                   pairs[v].end());
                    gid[i + 1][v] = static_cast<int32_t>(fam.size());
                    fam.push_back(TddNode{LeafLabel::zero, std::move(pairs[v])});
                }
        }
    }

    if (sink_gid[1] < 0)
        return empty_function(vt);
    c.output = sink_gid[1];
    auto result = validate_deterministic(std::move(c));
    if (auto* v = std::get_if<DeterminismViolation>(&result))
        throw domain_error("obdd_to_tdd: internal determinism violation: " +
                           v->description);
    return std::get<Tdd>(std::move(result));
}

Obdd tdd_to_obdd(const Tdd& c) {
    const Vtree& vt = *c.vtree;
    if (!vt.is_linear())
        throw domain_error("tdd_to_obdd: only TDDs over linear vtrees convert to OBDDs");
    const int n = vt.var_count();

    Obdd b;
    b.nodes.resize(2);
    if (n == 1) {
        const Var x = vt.leaf_var(vt.root());
        b.order = {x};
        const LeafLabel l = c.families[vt.root()][c.output].label;
        if (l == LeafLabel::zero) {
            b.source = Obdd::sink0;
        } else if (l == LeafLabel::one) {
            b.source = Obdd::sink1;
        } else {
            b.nodes.push_back({x, l == LeafLabel::neg ? Obdd::sink1 : Obdd::sink0,
                               l == LeafLabel::pos ? Obdd::sink1 : Obdd::sink0});
            b.source = 2;
        }
        return b;
    }

    // spine[j]: j-th internal node counted from the deepest one; lit_leaf[j]
    // is its leaf child. At the deepest spine node both children are leaves
    // and the right one acts as the terminal state leaf, matching the shape
    // Vtree::linear produces.
    std::vector<int> spine;
    std::vector<int> lit_leaf;
    std::vector<bool> leaf_left;
    {
        int u = vt.root();
        std::vector<int> top_down;
        while (!vt.is_leaf(u)) {
            top_down.push_back(u);
            u = !vt.is_leaf(vt.left(u)) ? vt.left(u) : vt.right(u);
        }
        spine.assign(top_down.rbegin(), top_down.rend());
        for (size_t j = 0; j < spine.size(); ++j) {
            const int s = spine[j];
            const bool ll = j == 0 ? true : vt.left(s) != spine[j - 1];
            leaf_left.push_back(ll);
            lit_leaf.push_back(ll ? vt.left(s) : vt.right(s));
        }
    }
    const int terminal_leaf = vt.right(spine[0]); // deepest state leaf
    const Var zvar = vt.leaf_var(terminal_leaf);

    // obdd order: z first, then the literal leaves deepest-first
    b.order.push_back(zvar);
    for (int lf : lit_leaf)
        b.order.push_back(vt.leaf_var(lf));

    // decision node per (family, node); root-family nodes map to sinks
    std::vector<std::map<int32_t, int>> v_of(spine.size() + 1); // [0]: z-leaf family
    auto sink_of = [&](int32_t g) {
        return g == c.output ? Obdd::sink1 : Obdd::sink0;
    };

    // find the family node holding a given (literal-node, state-node) pair
    auto parent_of = [&](size_t j, int32_t lit, int32_t state) -> int32_t {
        const auto key = leaf_left[j] ? std::make_pair(lit, state)
                                      : std::make_pair(state, lit);
        const auto& fam = c.families[spine[j]];
        for (int32_t g = 0; g < static_cast<int32_t>(fam.size()); ++g)
            if (std::binary_search(fam[g].pairs.begin(), fam[g].pairs.end(), key))
                return g;
        return -1;
    };
    // the node of a leaf family satisfied by value b, or -1
    auto leaf_sat_node = [&](int leaf, bool value) -> int32_t {
        const auto& fam = c.families[leaf];
        for (int32_t g = 0; g < static_cast<int32_t>(fam.size()); ++g)
            if (leaf_label_satisfied(fam[g].label, value))
                return g;
        return -1;
    };

    // create decision nodes bottom-up; edge target for a state g at slot j
    // (slot 0 = z-family, slot j>=1 = family spine[j-1]) testing the next var
    std::function<int(size_t, int32_t)> v_node = [&](size_t slot, int32_t g) -> int {
        if (slot == spine.size()) // root family reached
            return sink_of(g);
        auto it = v_of[slot].find(g);
        if (it != v_of[slot].end())
            return it->second;
        const Var testvar = vt.leaf_var(lit_leaf[slot]);
        int id = static_cast<int>(b.nodes.size());
        b.nodes.push_back({testvar, Obdd::sink0, Obdd::sink0});
        v_of[slot].emplace(g, id);
        for (int value = 0; value < 2; ++value) {
            const int32_t lit = leaf_sat_node(lit_leaf[slot], value != 0);
            int target = Obdd::sink0;
            if (lit >= 0) {
                const int32_t h = parent_of(slot, lit, g);
                if (h >= 0)
                    target = v_node(slot + 1, h);
            }
            if (value)
                b.nodes[id].hi = target;
            else
                b.nodes[id].lo = target;
        }
        return id;
    };

    if (is_empty_marker(c)) {
        b.source = Obdd::sink0;
        return b;
    }
    // source tests z; its edges go to the z-leaf states
    int src = static_cast<int>(b.nodes.size());
    b.nodes.push_back({zvar, Obdd::sink0, Obdd::sink0});
    for (int value = 0; value < 2; ++value) {
        const int32_t l = leaf_sat_node(terminal_leaf, value != 0);
        int target = Obdd::sink0;
        if (l >= 0)
            target = v_node(0, l);
        if (value)
            b.nodes[src].hi = target;
        else
            b.nodes[src].lo = target;
    }
    b.source = src;
    return b;
}

Obdd read_obdd(std::istream& in) {
    Obdd b;
    b.nodes.resize(2);
    std::string line, word;
    int lineno = 0;
    std::map<long, int> id_map; // file id -> node id; sinks filled on sight
    long source_file_id = -1;
    bool have_source = false;
    std::vector<std::tuple<int, long, long>> pending; // node, lo file id, hi file id
    auto intern = [&](long fid) -> int {
        auto [it, fresh] = id_map.try_emplace(fid, 0);
        if (fresh) {
            it->second = static_cast<int>(b.nodes.size());
            b.nodes.push_back({});
        }
        return it->second;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (!(ls >> word) || word == "c")
            continue;
        if (word == "order") {
            std::string name;
            while (ls >> name) {
                size_t pos = (name.size() > 1 && (name[0] == 'x' || name[0] == 'X')) ? 1 : 0;
                try {
                    long v = std::stol(name.substr(pos));
                    if (v <= 0)
                        throw parse_error("variable must be positive", lineno);
                    b.order.push_back(static_cast<Var>(v));
                } catch (const std::logic_error&) {
                    throw parse_error("bad variable '" + name + "'", lineno);
                }
            }
        } else if (word == "node") {
            long id, lo, hi;
            std::string name;
            if (!(ls >> id >> name >> lo >> hi))
                throw parse_error("bad node line", lineno);
            size_t pos = (name.size() > 1 && (name[0] == 'x' || name[0] == 'X')) ? 1 : 0;
            Var v;
            try {
                v = static_cast<Var>(std::stol(name.substr(pos)));
            } catch (const std::logic_error&) {
                throw parse_error("bad variable '" + name + "'", lineno);
            }
            int nid = intern(id);
            if (nid < 2)
                throw parse_error("node id collides with a sink", lineno);
            b.nodes[nid].var = v;
            pending.emplace_back(nid, lo, hi);
        } else if (word == "sink0" || word == "sink1") {
            long id;
            if (!(ls >> id))
                throw parse_error("bad sink line", lineno);
            if (id_map.count(id))
                throw parse_error("sink id already used", lineno);
            id_map[id] = word == "sink0" ? Obdd::sink0 : Obdd::sink1;
        } else if (word == "source") {
            if (!(ls >> source_file_id))
                throw parse_error("bad source line", lineno);
            have_source = true;
        } else {
            throw parse_error("unknown directive '" + word + "'", lineno);
        }
    }
    if (!have_source)
        throw parse_error("missing source line");
    for (auto [nid, lo, hi] : pending) {
        auto lit = id_map.find(lo), hit = id_map.find(hi);
        if (lit == id_map.end() || hit == id_map.end())
            throw parse_error("node references an undefined id");
        b.nodes[nid].lo = lit->second;
        b.nodes[nid].hi = hit->second;
    }
    auto sit = id_map.find(source_file_id);
    if (sit == id_map.end())
        throw parse_error("source references an undefined id");
    b.source = sit->second;
    try {
        validate_obdd(b);
    } catch (const domain_error& e) {
        throw parse_error(e.what());
    }
    return b;
}

void write_obdd(std::ostream& out, const Obdd& b) {
    out << "order";
    for (Var v : b.order)
        out << " " << v;
    out << "\n";
    out << "sink0 0\nsink1 1\n";
    for (size_t i = 2; i < b.nodes.size(); ++i)
        out << "node " << i << " " << b.nodes[i].var << " " << b.nodes[i].lo << " "
            << b.nodes[i].hi << "\n";
    out << "source " << b.source << "\n";
}

} // namespace treedd
