#include "treedd/benchfn.hpp"

#include "treedd/error.hpp"

#include <bit>
#include <numeric>
#include <ostream>

namespace treedd {

BoolFunTable hwb(int n) {
    if (n < 1 || n > BoolFunTable::kMaxOracleVars)
        throw domain_error("hwb: n out of range");
    std::vector<Var> vars(n);
    std::iota(vars.begin(), vars.end(), Var{1});
    std::vector<bool> bits(uint64_t{1} << n);
    for (uint64_t i = 0; i < bits.size(); ++i) {
        const int s = std::popcount(i);
        // variable x_s sits at bit position s-1
        bits[i] = s > 0 && ((i >> (s - 1)) & 1);
    }
    return BoolFunTable(std::move(vars), std::move(bits));
}

std::vector<Var> mux_forward_order(int k) {
    const int n = 1 << k;
    std::vector<Var> order(k + n);
    std::iota(order.begin(), order.end(), Var{1});
    return order;
}

BoolFunTable mux(int k) {
    if (k < 1)
        throw domain_error("mux: k must be positive");
    const int n = 1 << k;
    if (k + n > BoolFunTable::kMaxOracleVars)
        throw domain_error("mux: k + 2^k exceeds the variable limit");
    std::vector<Var> vars = mux_forward_order(k);
    std::vector<bool> bits(uint64_t{1} << (k + n));
    for (uint64_t i = 0; i < bits.size(); ++i) {
        // selector bits occupy positions 0..k-1, x_0 least significant
        const uint64_t sel = i & ((uint64_t{1} << k) - 1);
        bits[i] = (i >> (k + sel)) & 1;
    }
    return BoolFunTable(std::move(vars), std::move(bits));
}

BoolFunTable parity(int n) {
    if (n < 1 || n > BoolFunTable::kMaxOracleVars)
        throw domain_error("parity: n out of range");
    std::vector<Var> vars(n);
    std::iota(vars.begin(), vars.end(), Var{1});
    std::vector<bool> bits(uint64_t{1} << n);
    for (uint64_t i = 0; i < bits.size(); ++i)
        bits[i] = std::popcount(i) % 2 == 0;
    return BoolFunTable(std::move(vars), std::move(bits));
}

void fw_report(std::ostream& out, const std::string& name, const BoolFunTable& f,
               const std::vector<std::pair<std::string, Vtree>>& vtrees) {
    out << "function,n,vtree-kind,vtree-node,subfunction-count,max\n";
    for (const auto& [kind, vt] : vtrees) {
        auto profile = subfunction_profile(f, vt);
        uint64_t maxc = 0;
        for (uint64_t c : profile)
            maxc = std::max(maxc, c);
        for (size_t node = 0; node < profile.size(); ++node)
            out << name << "," << f.var_count() << "," << kind << "," << node << ","
                << profile[node] << "," << maxc << "\n";
    }
}

} // namespace treedd
