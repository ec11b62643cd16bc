#pragma once

#include "treedd/cnf.hpp"
#include "treedd/vtree.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace treedd {

/// Partial Boolean assignment: a total mapping from a finite variable set to
/// {0,1}, stored sorted by variable. Immutable in spirit; all operations
/// return new values.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::vector<std::pair<Var, bool>> vals);

    static Assignment single(Var x, bool b) { return Assignment({{x, b}}); }

    const std::vector<std::pair<Var, bool>>& entries() const { return vals_; }
    std::vector<Var> domain() const;
    size_t domain_size() const { return vals_.size(); }
    bool defines(Var x) const;
    bool value(Var x) const; // throws if not defined
    bool satisfies(Lit l) const { return value(var_of(l)) == is_positive(l); }

    /// tau1 x tau2 over disjoint domains; throws on overlap.
    Assignment combined(const Assignment& other) const;
    /// tau|_Y for Y a subset of the domain.
    Assignment restricted(std::span<const Var> y) const;

    bool operator==(const Assignment&) const = default;
    bool operator<(const Assignment& o) const { return vals_ < o.vals_; }

    std::string to_string() const; // "1 -2 3" style, for diagnostics

private:
    std::vector<std::pair<Var, bool>> vals_;
};

/// Builds the assignment over `vars` (sorted) encoded by `index`: bit i of
/// index gives the value of vars[i].
Assignment assignment_from_index(std::span<const Var> vars, uint64_t index);

/// Explicit truth table over a sorted variable set. The table row for an
/// assignment tau is at index sum_i tau(vars[i]) * 2^i. A table over zero
/// variables is a constant with a single row.
///
/// This is the verification oracle: exponential in the variable count, capped
/// by `kMaxOracleVars`.
class BoolFunTable {
public:
    static constexpr int kMaxOracleVars = 20;

    BoolFunTable() = default;
    BoolFunTable(std::vector<Var> vars, std::vector<bool> bits);

    static BoolFunTable constant(bool b, std::vector<Var> vars);
    static BoolFunTable literal(Lit l, std::vector<Var> vars);

    const std::vector<Var>& vars() const { return vars_; }
    int var_count() const { return static_cast<int>(vars_.size()); }
    uint64_t row_count() const { return bits_.size(); }
    bool bit(uint64_t index) const { return bits_[index]; }

    uint64_t index_of(const Assignment& tau) const; // tau total on vars()
    bool value(const Assignment& tau) const { return bits_[index_of(tau)]; }

    uint64_t model_count() const;
    bool is_constant_false() const { return model_count() == 0; }

    /// f[tau]: the function over vars() \ domain(tau); throws if tau mentions
    /// unknown variables.
    BoolFunTable restrict(const Assignment& tau) const;

    bool operator==(const BoolFunTable&) const = default;

    std::string hex_dump() const; // row bits packed little-endian, for fixtures

private:
    std::vector<Var> vars_; // sorted
    std::vector<bool> bits_;
};

/// Truth table of a CNF formula by exhaustive evaluation over f.variables.
BoolFunTable fun_from_cnf(const CnfFormula& f, int max_vars = BoolFunTable::kMaxOracleVars);

/// Number of distinct functions {f[tau] : tau in 2^Y}; with nontrivial_only,
/// functions without a model are not counted.
uint64_t count_subfunctions(const BoolFunTable& f, std::span<const Var> y,
                            bool nontrivial_only);

/// fw(f, T) = max over vtree nodes t of the number of nontrivial
/// X_t-subfunctions of f. Requires vars(T) == vars(f).
uint64_t factor_width(const BoolFunTable& f, const Vtree& t);

/// Per-node subfunction counts in vtree node order, for reports.
std::vector<uint64_t> subfunction_profile(const BoolFunTable& f, const Vtree& t);

} // namespace treedd
