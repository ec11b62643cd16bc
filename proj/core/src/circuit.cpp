#include "treedd/circuit.hpp"

#include "treedd/error.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace treedd {

std::vector<Var> Circuit::input_vars() const {
    std::vector<Var> vs;
    for (const auto& g : gates)
        if (g.kind == GateKind::input)
            vs.push_back(g.var);
    std::sort(vs.begin(), vs.end());
    return vs;
}

Circuit parse_circuit(std::istream& in) {
    Circuit c;
    std::string line, word;
    int lineno = 0;
    std::map<long, int> id_map; // file id -> gate index
    long output_id = -1;
    bool have_output = false;
    auto resolve = [&](long id, int ln) {
        auto it = id_map.find(id);
        if (it == id_map.end())
            throw parse_error("gate " + std::to_string(id) + " used before definition",
                              ln);
        return it->second;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (!(ls >> word) || word == "c" || word[0] == '#')
            continue;
        if (word == "output") {
            if (!(ls >> output_id))
                throw parse_error("bad output line", lineno);
            have_output = true;
            continue;
        }
        long id;
        if (!(ls >> id) || id < 0)
            throw parse_error("bad gate id", lineno);
        if (id_map.count(id))
            throw parse_error("gate " + std::to_string(id) + " redefined", lineno);
        Circuit::Gate g;
        if (word == "input") {
            std::string name;
            if (!(ls >> name))
                throw parse_error("input gate without variable", lineno);
            size_t pos = (name.size() > 1 && (name[0] == 'x' || name[0] == 'X')) ? 1 : 0;
            long v;
            try {
                v = std::stol(name.substr(pos));
            } catch (const std::logic_error&) {
                throw parse_error("bad variable name '" + name + "'", lineno);
            }
            if (v <= 0)
                throw parse_error("variable must be positive", lineno);
            g.kind = Circuit::GateKind::input;
            g.var = static_cast<Var>(v);
        } else if (word == "not") {
            long ch;
            if (!(ls >> ch))
                throw parse_error("not gate needs one child", lineno);
            g.kind = Circuit::GateKind::g_not;
            g.fanin.push_back(resolve(ch, lineno));
        } else if (word == "and" || word == "or") {
            g.kind = word == "and" ? Circuit::GateKind::g_and : Circuit::GateKind::g_or;
            long ch;
            while (ls >> ch)
                g.fanin.push_back(resolve(ch, lineno));
            if (g.fanin.empty())
                throw parse_error(word + " gate needs at least one child", lineno);
        } else {
            throw parse_error("unknown gate kind '" + word + "'", lineno);
        }
        id_map[id] = static_cast<int>(c.gates.size());
        c.gates.push_back(std::move(g));
    }
    if (!have_output)
        throw parse_error("missing output line");
    auto it = id_map.find(output_id);
    if (it == id_map.end())
        throw parse_error("output names an undefined gate");
    c.output = it->second;
    // children resolve to earlier gates only, so the circuit is acyclic by
    // construction; still reject duplicate variable inputs
    std::vector<Var> vs = c.input_vars();
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
        throw parse_error("two input gates share a variable");
    return c;
}

void write_circuit(std::ostream& out, const Circuit& c) {
    for (size_t i = 0; i < c.gates.size(); ++i) {
        const auto& g = c.gates[i];
        switch (g.kind) {
        case Circuit::GateKind::input:
            out << "input " << i << " " << g.var << "\n";
            break;
        case Circuit::GateKind::g_not:
            out << "not " << i << " " << g.fanin[0] << "\n";
            break;
        case Circuit::GateKind::g_and:
        case Circuit::GateKind::g_or:
            out << (g.kind == Circuit::GateKind::g_and ? "and " : "or ") << i;
            for (int ch : g.fanin)
                out << " " << ch;
            out << "\n";
            break;
        }
    }
    out << "output " << c.output << "\n";
}

Graph circuit_graph(const Circuit& c) {
    Graph g;
    for (size_t i = 0; i < c.gates.size(); ++i) {
        g.add_vertex(static_cast<uint32_t>(i + 1));
        for (int ch : c.gates[i].fanin)
            g.add_edge(static_cast<uint32_t>(i + 1), static_cast<uint32_t>(ch + 1));
    }
    g.normalize();
    return g;
}

bool eval_circuit(const Circuit& c, const Assignment& tau) {
    std::vector<char> val(c.gates.size());
    for (size_t i = 0; i < c.gates.size(); ++i) {
        const auto& g = c.gates[i];
        switch (g.kind) {
        case Circuit::GateKind::input:
            val[i] = tau.value(g.var);
            break;
        case Circuit::GateKind::g_not:
            val[i] = !val[g.fanin[0]];
            break;
        case Circuit::GateKind::g_and: {
            bool v = true;
            for (int ch : g.fanin)
                v = v && val[ch];
            val[i] = v;
            break;
        }
        case Circuit::GateKind::g_or: {
            bool v = false;
            for (int ch : g.fanin)
                v = v || val[ch];
            val[i] = v;
            break;
        }
        }
    }
    return val[c.output];
}

BoolFunTable fun_from_circuit(const Circuit& c, int max_vars) {
    std::vector<Var> vars = c.input_vars();
    if (static_cast<int>(vars.size()) > max_vars)
        throw domain_error("oracle: circuit exceeds the variable limit");
    std::vector<bool> bits(uint64_t{1} << vars.size());
    for (uint64_t i = 0; i < bits.size(); ++i)
        bits[i] = eval_circuit(c, assignment_from_index(vars, i));
    return BoolFunTable(vars, std::move(bits));
}

} // namespace treedd
