#include "treedd/oracle.hpp"

#include "treedd/error.hpp"

#include <algorithm>
#include <set>

namespace treedd {

Assignment::Assignment(std::vector<std::pair<Var, bool>> vals) : vals_(std::move(vals)) {
    std::sort(vals_.begin(), vals_.end());
    for (size_t i = 0; i + 1 < vals_.size(); ++i)
        if (vals_[i].first == vals_[i + 1].first)
            throw domain_error("assignment: variable " + std::to_string(vals_[i].first) +
                               " assigned twice");
}

std::vector<Var> Assignment::domain() const {
    std::vector<Var> d;
    d.reserve(vals_.size());
    for (auto [v, b] : vals_)
        d.push_back(v);
    return d;
}

bool Assignment::defines(Var x) const {
    auto it = std::lower_bound(vals_.begin(), vals_.end(), std::make_pair(x, false));
    return it != vals_.end() && it->first == x;
}

bool Assignment::value(Var x) const {
    auto it = std::lower_bound(vals_.begin(), vals_.end(), std::make_pair(x, false));
    if (it == vals_.end() || it->first != x)
        throw domain_error("assignment: variable " + std::to_string(x) + " not assigned");
    return it->second;
}

Assignment Assignment::combined(const Assignment& other) const {
    std::vector<std::pair<Var, bool>> merged;
    merged.reserve(vals_.size() + other.vals_.size());
    merged.insert(merged.end(), vals_.begin(), vals_.end());
    merged.insert(merged.end(), other.vals_.begin(), other.vals_.end());
    return Assignment(std::move(merged)); // ctor re-sorts and rejects overlap
}

Assignment Assignment::restricted(std::span<const Var> y) const {
    std::vector<std::pair<Var, bool>> out;
    out.reserve(y.size());
    for (Var v : y)
        out.emplace_back(v, value(v));
    return Assignment(std::move(out));
}

std::string Assignment::to_string() const {
    std::string s;
    for (auto [v, b] : vals_) {
        if (!s.empty())
            s += ' ';
        if (!b)
            s += '-';
        s += std::to_string(v);
    }
    return s;
}

Assignment assignment_from_index(std::span<const Var> vars, uint64_t index) {
    std::vector<std::pair<Var, bool>> vals;
    vals.reserve(vars.size());
    for (size_t i = 0; i < vars.size(); ++i)
        vals.emplace_back(vars[i], (index >> i) & 1);
    return Assignment(std::move(vals));
}

BoolFunTable::BoolFunTable(std::vector<Var> vars, std::vector<bool> bits)
    : vars_(std::move(vars)), bits_(std::move(bits)) {
    if (!std::is_sorted(vars_.begin(), vars_.end()) ||
        std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
        throw domain_error("truth table: variables must be sorted and distinct");
    if (vars_.size() > kMaxOracleVars)
        throw domain_error("truth table: variable limit exceeded");
    if (bits_.size() != (uint64_t{1} << vars_.size()))
        throw domain_error("truth table: bit count must be 2^|vars|");
}

BoolFunTable BoolFunTable::constant(bool b, std::vector<Var> vars) {
    std::sort(vars.begin(), vars.end());
    if (vars.size() > kMaxOracleVars)
        throw domain_error("truth table: variable limit exceeded");
    std::vector<bool> bits(uint64_t{1} << vars.size(), b);
    return BoolFunTable(std::move(vars), std::move(bits));
}

BoolFunTable BoolFunTable::literal(Lit l, std::vector<Var> vars) {
    BoolFunTable f = constant(false, std::move(vars));
    auto it = std::lower_bound(f.vars_.begin(), f.vars_.end(), var_of(l));
    if (it == f.vars_.end() || *it != var_of(l))
        throw domain_error("truth table: literal variable not in table");
    size_t pos = it - f.vars_.begin();
    for (uint64_t i = 0; i < f.bits_.size(); ++i)
        f.bits_[i] = (((i >> pos) & 1) != 0) == is_positive(l);
    return f;
}

uint64_t BoolFunTable::index_of(const Assignment& tau) const {
    if (tau.domain_size() != vars_.size())
        throw domain_error("truth table: assignment domain mismatch");
    uint64_t idx = 0;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (tau.value(vars_[i]))
            idx |= uint64_t{1} << i;
    return idx;
}

uint64_t BoolFunTable::model_count() const {
    uint64_t n = 0;
    for (bool b : bits_)
        n += b;
    return n;
}

BoolFunTable BoolFunTable::restrict(const Assignment& tau) const {
    for (Var v : tau.domain())
        if (!std::binary_search(vars_.begin(), vars_.end(), v))
            throw domain_error("restrict: unknown variable " + std::to_string(v));
    std::vector<Var> rest;
    uint64_t fixed_bits = 0;
    std::vector<size_t> rest_pos;
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (tau.defines(vars_[i])) {
            if (tau.value(vars_[i]))
                fixed_bits |= uint64_t{1} << i;
        } else {
            rest.push_back(vars_[i]);
            rest_pos.push_back(i);
        }
    }
    std::vector<bool> bits(uint64_t{1} << rest.size());
    for (uint64_t j = 0; j < bits.size(); ++j) {
        uint64_t idx = fixed_bits;
        for (size_t k = 0; k < rest_pos.size(); ++k)
            if ((j >> k) & 1)
                idx |= uint64_t{1} << rest_pos[k];
        bits[j] = bits_[idx];
    }
    return BoolFunTable(std::move(rest), std::move(bits));
}

std::string BoolFunTable::hex_dump() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    uint8_t nibble = 0;
    int filled = 0;
    for (uint64_t i = 0; i < bits_.size(); ++i) {
        nibble |= static_cast<uint8_t>(bits_[i]) << filled;
        if (++filled == 4 || i + 1 == bits_.size()) {
            s += digits[nibble];
            nibble = 0;
            filled = 0;
        }
    }
    return s;
}

BoolFunTable fun_from_cnf(const CnfFormula& f, int max_vars) {
    if (static_cast<int>(f.variables.size()) > max_vars)
        throw domain_error("oracle: formula exceeds the variable limit");
    std::vector<Var> vars = f.variables;
    std::sort(vars.begin(), vars.end());
    std::vector<bool> bits(uint64_t{1} << vars.size(), true);
    std::vector<size_t> pos_of(vars.empty() ? 0 : vars.back() + 1, SIZE_MAX);
    for (size_t i = 0; i < vars.size(); ++i)
        pos_of[vars[i]] = i;
    for (uint64_t idx = 0; idx < bits.size(); ++idx) {
        for (const auto& c : f.clauses) {
            bool sat = false;
            for (Lit l : c.lits) {
                bool v = (idx >> pos_of[var_of(l)]) & 1;
                if (v == is_positive(l)) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                bits[idx] = false;
                break;
            }
        }
    }
    return BoolFunTable(std::move(vars), std::move(bits));
}

uint64_t count_subfunctions(const BoolFunTable& f, std::span<const Var> y,
                            bool nontrivial_only) {
    std::vector<Var> ys(y.begin(), y.end());
    std::sort(ys.begin(), ys.end());
    for (Var v : ys)
        if (!std::binary_search(f.vars().begin(), f.vars().end(), v))
            throw domain_error("count_subfunctions: Y not a subset of vars(f)");
    std::set<std::vector<bool>> seen;
    const uint64_t total = uint64_t{1} << ys.size();
    for (uint64_t i = 0; i < total; ++i) {
        BoolFunTable sub = f.restrict(assignment_from_index(ys, i));
        if (nontrivial_only && sub.is_constant_false())
            continue;
        std::vector<bool> key;
        key.reserve(sub.row_count());
        for (uint64_t r = 0; r < sub.row_count(); ++r)
            key.push_back(sub.bit(r));
        seen.insert(std::move(key));
    }
    return seen.size();
}

std::vector<uint64_t> subfunction_profile(const BoolFunTable& f, const Vtree& t) {
    if (t.vars() != f.vars())
        throw domain_error("factor width: vtree variables differ from vars(f)");
    std::vector<uint64_t> counts(t.node_count());
    for (int n = 0; n < t.node_count(); ++n)
        counts[n] = count_subfunctions(f, t.vars_below(n), true);
    return counts;
}

uint64_t factor_width(const BoolFunTable& f, const Vtree& t) {
    uint64_t w = 0;
    for (uint64_t c : subfunction_profile(f, t))
        w = std::max(w, c);
    return w;
}

} // namespace treedd
