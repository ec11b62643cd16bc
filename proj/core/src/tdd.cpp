#include "treedd/tdd.hpp"

#include "treedd/error.hpp"

#include <algorithm>
#include <map>
#include <cassert>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace treedd {

int NTdd::width() const {
    size_t w = 0;
    for (const auto& fam : families)
        w = std::max(w, fam.size());
    return static_cast<int>(w);
}

long NTdd::size() const {
    long s = 0;
    for (const auto& fam : families)
        for (const auto& n : fam)
            s += static_cast<long>(n.pairs.size());
    return s;
}

void validate_structure(const NTdd& c) {
    if (!c.vtree)
        throw domain_error("tdd: missing vtree");
    const Vtree& vt = *c.vtree;
    if (static_cast<int>(c.families.size()) != vt.node_count())
        throw domain_error("tdd: family count differs from vtree node count");
    for (int t = 0; t < vt.node_count(); ++t) {
        for (const auto& n : c.families[t]) {
            if (vt.is_leaf(t)) {
                if (!n.pairs.empty())
                    throw domain_error("tdd: leaf-family node with pair inputs");
            } else {
                const auto nl = static_cast<int32_t>(c.families[vt.left(t)].size());
                const auto nr = static_cast<int32_t>(c.families[vt.right(t)].size());
                if (!std::is_sorted(n.pairs.begin(), n.pairs.end()))
                    throw domain_error("tdd: pair list not sorted");
                if (std::adjacent_find(n.pairs.begin(), n.pairs.end()) != n.pairs.end())
                    throw domain_error("tdd: duplicate pair in one node");
                for (auto [a, b] : n.pairs)
                    if (a < 0 || a >= nl || b < 0 || b >= nr)
                        throw domain_error("tdd: pair references missing child node");
            }
        }
    }
    if (c.output < 0 || c.output >= static_cast<int32_t>(c.families[vt.root()].size()))
        throw domain_error("tdd: output index out of range");
}

std::variant<Tdd, DeterminismViolation> validate_deterministic(NTdd c) {
    validate_structure(c);
    const Vtree& vt = *c.vtree;
    for (int t = 0; t < vt.node_count(); ++t) {
        const auto& fam = c.families[t];
        if (vt.is_leaf(t)) {
            int npos = 0, nneg = 0, none = 0, nzero = 0;
            for (const auto& n : fam) {
                npos += n.label == LeafLabel::pos;
                nneg += n.label == LeafLabel::neg;
                none += n.label == LeafLabel::one;
                nzero += n.label == LeafLabel::zero;
            }
            if (npos > 1 || nneg > 1 || none > 1)
                return DeterminismViolation{t, "duplicate leaf label in family of variable " +
                                                   std::to_string(vt.leaf_var(t))};
            if (none == 1 && (npos > 0 || nneg > 0))
                return DeterminismViolation{
                    t, "1-labeled node next to a literal node in family of variable " +
                           std::to_string(vt.leaf_var(t))};
        } else {
            std::map<std::pair<int32_t, int32_t>, int32_t> owner;
            for (int32_t g = 0; g < static_cast<int32_t>(fam.size()); ++g)
                for (auto p : fam[g].pairs) {
                    auto [it, fresh] = owner.emplace(p, g);
                    if (!fresh)
                        return DeterminismViolation{
                            t, "pair (" + std::to_string(p.first) + "," +
                                   std::to_string(p.second) + ") feeds nodes " +
                                   std::to_string(it->second) + " and " + std::to_string(g)};
                }
        }
    }
    return Tdd(std::move(c), Tdd::unchecked_t{});
}

bool evaluate(const NTdd& c, const Assignment& tau) {
    const Vtree& vt = *c.vtree;
    if (tau.domain() != vt.vars())
        throw domain_error("evaluate: assignment domain differs from vars(C)");
    std::vector<std::vector<char>> sat(vt.node_count());
    for (int t = vt.node_count() - 1; t >= 0; --t) { // children before parents
        const auto& fam = c.families[t];
        sat[t].assign(fam.size(), 0);
        if (vt.is_leaf(t)) {
            const bool v = tau.value(vt.leaf_var(t));
            for (size_t g = 0; g < fam.size(); ++g)
                sat[t][g] = leaf_label_satisfied(fam[g].label, v);
        } else {
            const auto& sl = sat[vt.left(t)];
            const auto& sr = sat[vt.right(t)];
            for (size_t g = 0; g < fam.size(); ++g)
                for (auto [a, b] : fam[g].pairs)
                    if (sl[a] && sr[b]) {
                        sat[t][g] = 1;
                        break;
                    }
        }
    }
    return sat[vt.root()][c.output];
}

std::optional<Certificate> certificate_of(const Tdd& c, const Assignment& tau) {
    const Vtree& vt = *c.vtree;
    if (tau.domain() != vt.vars())
        throw domain_error("certificate_of: assignment domain differs from vars(C)");
    Certificate cert;
    cert.node_at.assign(vt.node_count(), -1);
    for (int t = vt.node_count() - 1; t >= 0; --t) {
        const auto& fam = c.families[t];
        int32_t chosen = -1;
        if (vt.is_leaf(t)) {
            const bool v = tau.value(vt.leaf_var(t));
            for (size_t g = 0; g < fam.size(); ++g)
                if (leaf_label_satisfied(fam[g].label, v)) {
                    chosen = static_cast<int32_t>(g);
                    break; // unique by determinism
                }
        } else {
            const auto key = std::make_pair(cert.node_at[vt.left(t)],
                                            cert.node_at[vt.right(t)]);
            if (key.first >= 0 && key.second >= 0)
                for (size_t g = 0; g < fam.size(); ++g)
                    if (std::binary_search(fam[g].pairs.begin(), fam[g].pairs.end(), key)) {
                        chosen = static_cast<int32_t>(g);
                        break; // unique: each pair feeds at most one node
                    }
        }
        if (chosen < 0)
            return std::nullopt;
        cert.node_at[t] = chosen;
    }
    if (cert.node_at[vt.root()] != c.output)
        return std::nullopt;
    return cert;
}

// --- constructors ------------------------------------------------------------

Tdd empty_function(VtreePtr t) {
    NTdd c;
    c.vtree = std::move(t);
    c.families.assign(c.vtree->node_count(), {});
    c.families[c.vtree->root()].push_back(TddNode{}); // zero label, no pairs
    c.output = 0;
    return Tdd(std::move(c), Tdd::unchecked_t{});
}

bool is_empty_marker(const NTdd& c) {
    const Vtree& vt = *c.vtree;
    for (int t = 0; t < vt.node_count(); ++t) {
        if (t == vt.root())
            continue;
        if (!c.families[t].empty())
            return false;
    }
    const auto& root = c.families[vt.root()];
    if (root.size() != 1 || !root[0].pairs.empty())
        return false;
    if (vt.is_leaf(vt.root()) && root[0].label != LeafLabel::zero)
        return false;
    return true;
}

Tdd constant_tdd(bool b, VtreePtr t) {
    if (!b)
        return empty_function(std::move(t));
    NTdd c;
    c.vtree = std::move(t);
    const Vtree& vt = *c.vtree;
    c.families.assign(vt.node_count(), {});
    for (int n = 0; n < vt.node_count(); ++n) {
        TddNode node;
        if (vt.is_leaf(n))
            node.label = LeafLabel::one;
        else
            node.pairs = {{0, 0}};
        c.families[n].push_back(std::move(node));
    }
    c.output = 0;
    return Tdd(std::move(c), Tdd::unchecked_t{});
}

Tdd single_model_tdd(const Assignment& tau, VtreePtr t) {
    NTdd c;
    c.vtree = std::move(t);
    const Vtree& vt = *c.vtree;
    if (tau.domain() != vt.vars())
        throw domain_error("single_model_tdd: assignment domain differs from vtree");
    c.families.assign(vt.node_count(), {});
    for (int n = 0; n < vt.node_count(); ++n) {
        TddNode node;
        if (vt.is_leaf(n))
            node.label = tau.value(vt.leaf_var(n)) ? LeafLabel::pos : LeafLabel::neg;
        else
            node.pairs = {{0, 0}};
        c.families[n].push_back(std::move(node));
    }
    c.output = 0;
    return Tdd(std::move(c), Tdd::unchecked_t{});
}

Tdd clause_tdd(const Clause& cl, VtreePtr t) {
    if (cl.empty())
        return empty_function(std::move(t));
    NTdd c;
    c.vtree = std::move(t);
    const Vtree& vt = *c.vtree;
    for (Var v : cl.vars())
        if (!vt.has_var(v))
            throw domain_error("clause_tdd: clause variable " + std::to_string(v) +
                               " not in the vtree");
    c.families.assign(vt.node_count(), {});
    // per node: index of the clause-side node (c_t) and negation-side node (d_t)
    std::vector<int32_t> cidx(vt.node_count(), -1), didx(vt.node_count(), -1);
    for (int n = vt.node_count() - 1; n >= 0; --n) {
        auto& fam = c.families[n];
        if (vt.is_leaf(n)) {
            const Lit l = cl.lit_on(vt.leaf_var(n));
            if (l != 0) {
                TddNode cn, dn;
                cn.label = is_positive(l) ? LeafLabel::pos : LeafLabel::neg;
                dn.label = is_positive(l) ? LeafLabel::neg : LeafLabel::pos;
                fam.push_back(cn);
                fam.push_back(dn);
                cidx[n] = 0;
                didx[n] = 1;
            } else {
                fam.push_back(TddNode{LeafLabel::one, {}});
                didx[n] = 0;
            }
        } else {
            const int l = vt.left(n), r = vt.right(n);
            const int32_t cl_ = cidx[l], dl = didx[l], cr = cidx[r], dr = didx[r];
            TddNode cn;
            if (cl_ >= 0 && cr >= 0)
                cn.pairs = {{cl_, cr}, {cl_, dr}, {dl, cr}};
            else if (cl_ >= 0)
                cn.pairs = {{cl_, dr}};
            else if (cr >= 0)
                cn.pairs = {{dl, cr}};
            if (!cn.pairs.empty()) {
                std::sort(cn.pairs.begin(), cn.pairs.end());
                fam.push_back(std::move(cn));
                cidx[n] = 0;
            }
            TddNode dn;
            dn.pairs = {{dl, dr}};
            fam.push_back(std::move(dn));
            didx[n] = static_cast<int32_t>(fam.size()) - 1;
        }
    }
    c.output = cidx[vt.root()];
    assert(c.output >= 0);
    return Tdd(std::move(c), Tdd::unchecked_t{});
}

Tdd literal_tdd(Lit l, VtreePtr t) {
    Clause c{{l}};
    return clause_tdd(c, std::move(t));
}

// --- queries ------------------------------------------------------------------

namespace {

// per-family flags: node has at least one model
std::vector<std::vector<char>> model_flags(const NTdd& c) {
    const Vtree& vt = *c.vtree;
    std::vector<std::vector<char>> live(vt.node_count());
    for (int t = vt.node_count() - 1; t >= 0; --t) {
        const auto& fam = c.families[t];
        live[t].assign(fam.size(), 0);
        for (size_t g = 0; g < fam.size(); ++g) {
            if (vt.is_leaf(t)) {
                live[t][g] = fam[g].label != LeafLabel::zero;
            } else {
                for (auto [a, b] : fam[g].pairs)
                    if (live[vt.left(t)][a] && live[vt.right(t)][b]) {
                        live[t][g] = 1;
                        break;
                    }
            }
        }
    }
    return live;
}

} // namespace

bool has_model(const NTdd& c) {
    return model_flags(c)[c.vtree->root()][c.output];
}

BigInt count_models(const Tdd& c) {
    const Vtree& vt = *c.vtree;
    std::vector<std::vector<BigInt>> cnt(vt.node_count());
    for (int t = vt.node_count() - 1; t >= 0; --t) {
        const auto& fam = c.families[t];
        cnt[t].resize(fam.size());
        for (size_t g = 0; g < fam.size(); ++g) {
            if (vt.is_leaf(t)) {
                switch (fam[g].label) {
                case LeafLabel::zero: cnt[t][g] = 0; break;
                case LeafLabel::one: cnt[t][g] = 2; break;
                default: cnt[t][g] = 1;
                }
            } else {
                BigInt s = 0;
                for (auto [a, b] : fam[g].pairs)
                    s += cnt[vt.left(t)][a] * cnt[vt.right(t)][b];
                cnt[t][g] = std::move(s);
            }
        }
    }
    return cnt[vt.root()][c.output];
}

void enumerate_models(const Tdd& c, uint64_t limit,
                      const std::function<bool(const Assignment&)>& fn) {
    if (limit == 0)
        return;
    const Vtree& vt = *c.vtree;
    const auto& vars = vt.vars();
    std::vector<std::pair<Var, bool>> slot(vars.size());
    for (size_t i = 0; i < vars.size(); ++i)
        slot[i] = {vars[i], false};
    auto slot_of = [&](Var x) {
        return std::lower_bound(vars.begin(), vars.end(), x) - vars.begin();
    };
    uint64_t emitted = 0;

    // visit models of node (t,g); calls k for each completed partial choice;
    // returns false to abort the whole enumeration
    std::function<bool(int, int32_t, const std::function<bool()>&)> visit =
        [&](int t, int32_t g, const std::function<bool()>& k) -> bool {
        const TddNode& node = c.families[t][g];
        if (vt.is_leaf(t)) {
            auto at = slot_of(vt.leaf_var(t));
            switch (node.label) {
            case LeafLabel::zero:
                return true;
            case LeafLabel::pos:
                slot[at].second = true;
                return k();
            case LeafLabel::neg:
                slot[at].second = false;
                return k();
            case LeafLabel::one:
                slot[at].second = false;
                if (!k())
                    return false;
                slot[at].second = true;
                return k();
            }
            return true;
        }
        for (auto [a, b] : node.pairs) {
            bool cont = visit(vt.left(t), a,
                              [&] { return visit(vt.right(t), b, k); });
            if (!cont)
                return false;
        }
        return true;
    };

    visit(vt.root(), c.output, [&]() -> bool {
        Assignment a(slot);
        ++emitted;
        if (!fn(a))
            return false;
        return emitted < limit;
    });
}

std::optional<Assignment> any_model(const Tdd& c) {
    std::optional<Assignment> out;
    enumerate_models(c, 1, [&](const Assignment& a) {
        out = a;
        return false;
    });
    return out;
}

BoolFunTable exhaustive_table(const NTdd& c, int max_vars) {
    const auto& vars = c.vtree->vars();
    if (static_cast<int>(vars.size()) > max_vars)
        throw domain_error("exhaustive_table: too many variables");
    std::vector<bool> bits(uint64_t{1} << vars.size());
    for (uint64_t i = 0; i < bits.size(); ++i)
        bits[i] = evaluate(c, assignment_from_index(vars, i));
    return BoolFunTable(vars, std::move(bits));
}

// --- serialization -------------------------------------------------------------

void write_tdd(std::ostream& out, const NTdd& c) {
    out << "tdd inline\n";
    write_vtree(out, *c.vtree);
    for (int t = 0; t < c.vtree->node_count(); ++t) {
        const auto& fam = c.families[t];
        out << "F " << t << " " << fam.size() << "\n";
        for (size_t g = 0; g < fam.size(); ++g) {
            out << "n " << g;
            if (c.vtree->is_leaf(t)) {
                switch (fam[g].label) {
                case LeafLabel::zero: out << " const 0"; break;
                case LeafLabel::one: out << " const 1"; break;
                case LeafLabel::pos: out << " lit +" << c.vtree->leaf_var(t); break;
                case LeafLabel::neg: out << " lit -" << c.vtree->leaf_var(t); break;
                }
            } else {
                out << " pairs";
                for (auto [a, b] : fam[g].pairs)
                    out << " (" << a << "," << b << ")";
            }
            out << "\n";
        }
    }
    out << "out " << c.output << "\n";
}

namespace {

Vtree read_inline_vtree(std::istream& in, int& lineno) {
    std::ostringstream block;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        block << line << "\n";
        std::istringstream ls(line);
        std::string word;
        if (ls >> word && word == "root")
            break;
    }
    std::istringstream vs(block.str());
    return read_vtree(vs);
}

} // namespace

NTdd read_ntdd(std::istream& in) {
    std::string line, word;
    int lineno = 0;
    NTdd c;
    // header
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (!(ls >> word) || word == "c")
            continue;
        if (word != "tdd")
            throw parse_error("expected 'tdd' header", lineno);
        std::string mode;
        if (!(ls >> mode))
            throw parse_error("tdd header needs 'inline' or 'file <path>'", lineno);
        if (mode == "inline") {
            c.vtree = share(read_inline_vtree(in, lineno));
        } else if (mode == "file") {
            std::string path;
            if (!(ls >> path))
                throw parse_error("tdd header: missing vtree file path", lineno);
            std::ifstream vf(path);
            if (!vf)
                throw parse_error("cannot open vtree file '" + path + "'", lineno);
            c.vtree = share(read_vtree(vf));
        } else {
            throw parse_error("tdd header: unknown mode '" + mode + "'", lineno);
        }
        break;
    }
    if (!c.vtree)
        throw parse_error("missing tdd header");
    const Vtree& vt = *c.vtree;
    c.families.assign(vt.node_count(), {});

    int cur_family = -1;
    long expected = 0;
    std::vector<bool> node_seen;
    bool have_out = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (!(ls >> word) || word == "c")
            continue;
        if (word == "F") {
            if (cur_family >= 0 && expected != 0)
                throw parse_error("family " + std::to_string(cur_family) +
                                      " has missing node lines",
                                  lineno);
            long count;
            if (!(ls >> cur_family >> count) || cur_family < 0 ||
                cur_family >= vt.node_count() || count < 0)
                throw parse_error("bad family line", lineno);
            c.families[cur_family].assign(count, {});
            node_seen.assign(count, false);
            expected = count;
        } else if (word == "n") {
            long id;
            std::string kind;
            if (cur_family < 0)
                throw parse_error("node line before any family line", lineno);
            if (!(ls >> id >> kind) || id < 0 ||
                id >= static_cast<long>(c.families[cur_family].size()))
                throw parse_error("bad node id", lineno);
            if (node_seen[id])
                throw parse_error("node redefined", lineno);
            node_seen[id] = true;
            --expected;
            TddNode& node = c.families[cur_family][id];
            if (kind == "lit") {
                std::string tok;
                if (!(ls >> tok) || tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
                    throw parse_error("bad literal token", lineno);
                if (!vt.is_leaf(cur_family))
                    throw parse_error("literal node in internal family", lineno);
                Var x;
                try {
                    x = static_cast<Var>(std::stoul(tok.substr(1)));
                } catch (const std::logic_error&) {
                    throw parse_error("bad literal token", lineno);
                }
                if (x != vt.leaf_var(cur_family))
                    throw parse_error("literal variable does not match the leaf", lineno);
                node.label = tok[0] == '+' ? LeafLabel::pos : LeafLabel::neg;
            } else if (kind == "const") {
                int b;
                if (!(ls >> b) || (b != 0 && b != 1))
                    throw parse_error("bad constant", lineno);
                if (!vt.is_leaf(cur_family))
                    throw parse_error("constant node in internal family", lineno);
                node.label = b ? LeafLabel::one : LeafLabel::zero;
            } else if (kind == "pairs") {
                if (vt.is_leaf(cur_family))
                    throw parse_error("pair node in leaf family", lineno);
                std::string tok;
                while (ls >> tok) {
                    long a, b;
                    if (sscanf(tok.c_str(), "(%ld,%ld)", &a, &b) != 2)
                        throw parse_error("bad pair token '" + tok + "'", lineno);
                    node.pairs.emplace_back(static_cast<int32_t>(a),
                                            static_cast<int32_t>(b));
                }
                std::sort(node.pairs.begin(), node.pairs.end());
            } else {
                throw parse_error("unknown node kind '" + kind + "'", lineno);
            }
        } else if (word == "out") {
            long id;
            if (!(ls >> id))
                throw parse_error("bad out line", lineno);
            c.output = static_cast<int32_t>(id);
            have_out = true;
        } else {
            throw parse_error("unknown directive '" + word + "'", lineno);
        }
    }
    if (!have_out)
        throw parse_error("missing out line");
    try {
        validate_structure(c);
    } catch (const domain_error& e) {
        throw parse_error(e.what());
    }
    return c;
}

Tdd read_tdd(std::istream& in) {
    auto v = validate_deterministic(read_ntdd(in));
    if (auto* viol = std::get_if<DeterminismViolation>(&v))
        throw parse_error("not deterministic at vtree node " +
                          std::to_string(viol->vtree_node) + ": " + viol->description);
    return std::get<Tdd>(std::move(v));
}

void write_ddnnf(std::ostream& out, const Tdd& c) {
    const Vtree& vt = *c.vtree;
    // reachable nodes, downward from the output
    std::vector<std::vector<char>> keep(vt.node_count());
    for (int t = 0; t < vt.node_count(); ++t)
        keep[t].assign(c.families[t].size(), 0);
    keep[vt.root()][c.output] = 1;
    for (int t = 0; t < vt.node_count(); ++t) { // parents before children
        if (vt.is_leaf(t))
            continue;
        for (size_t g = 0; g < c.families[t].size(); ++g)
            if (keep[t][g])
                for (auto [a, b] : c.families[t][g].pairs) {
                    keep[vt.left(t)][a] = 1;
                    keep[vt.right(t)][b] = 1;
                }
    }

    std::vector<std::string> lines;
    long edges = 0;
    auto emit = [&](std::string s) {
        lines.push_back(std::move(s));
        return static_cast<long>(lines.size()) - 1;
    };
    std::vector<std::vector<long>> id(vt.node_count());
    for (int t = vt.node_count() - 1; t >= 0; --t) {
        id[t].assign(c.families[t].size(), -1);
        for (size_t g = 0; g < c.families[t].size(); ++g) {
            if (!keep[t][g])
                continue;
            if (t == vt.root() && static_cast<int32_t>(g) != c.output)
                continue;
            const TddNode& node = c.families[t][g];
            if (vt.is_leaf(t)) {
                const auto x = std::to_string(vt.leaf_var(t));
                switch (node.label) {
                case LeafLabel::pos:
                    id[t][g] = emit("L " + x);
                    break;
                case LeafLabel::neg:
                    id[t][g] = emit("L -" + x);
                    break;
                case LeafLabel::one: {
                    long p = emit("L " + x);
                    long n = emit("L -" + x);
                    edges += 2;
                    id[t][g] = emit("O " + x + " 2 " + std::to_string(p) + " " +
                                    std::to_string(n));
                    break;
                }
                case LeafLabel::zero:
                    id[t][g] = emit("O 0 0");
                    break;
                }
            } else {
                std::string o = "O 0 " + std::to_string(node.pairs.size());
                for (auto [a, b] : node.pairs) {
                    long an = emit("A 2 " + std::to_string(id[vt.left(t)][a]) + " " +
                                   std::to_string(id[vt.right(t)][b]));
                    edges += 2;
                    o += " " + std::to_string(an);
                    ++edges;
                }
                id[t][g] = emit(std::move(o));
            }
        }
    }
    out << "nnf " << lines.size() << " " << edges << " " << vt.var_count() << "\n";
    for (const auto& l : lines)
        out << l << "\n";
}

} // namespace treedd
