#include <algorithm>
#include <cmath>
#include <vector>

#include "gne/errors.hpp"
#include "gne/hybrid.hpp"

namespace gne {

void validate(const Dag& dag) {
    if (dag.n < 1) throw ValidationError("dag needs at least one vertex");
    for (auto [later, earlier] : dag.edges) {
        if (later >= dag.n) throw ValidationError("dag edge endpoint out of range");
        if (earlier >= later)
            throw ValidationError("dag edge must point from a later to an earlier vertex");
    }
}

ExtensionCount count_linear_extensions(const Dag& dag) {
    validate(dag);
    if (dag.n > 24)
        throw CapacityError("exact extension counting limited to N <= 24");
    uint32_t n = (uint32_t)dag.n;
    std::vector<uint32_t> deps(n, 0);  // vertices that must precede u
    for (auto [later, earlier] : dag.edges) deps[later] |= 1u << earlier;
    std::vector<unsigned __int128> ways((size_t)1 << n, 0);
    ways[0] = 1;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        unsigned __int128 acc = 0;
        for (uint32_t rest = mask; rest;) {
            uint32_t bit = rest & (0u - rest);
            rest ^= bit;
            uint32_t u = (uint32_t)__builtin_ctz(bit);
            uint32_t prev = mask ^ bit;
            if ((deps[u] & ~prev) == 0) acc += ways[prev];
        }
        ways[mask] = acc;
    }
    unsigned __int128 exact = ways[((size_t)1 << n) - 1];
    double log_nats = std::log((double)(long double)exact);
    return {log_nats, exact};
}

std::string uint128_to_string(unsigned __int128 x) {
    if (x == 0) return "0";
    std::string s;
    while (x > 0) {
        s.push_back((char)('0' + (int)(x % 10)));
        x /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

double extensions_lower_bound(uint64_t n, double alpha, uint64_t k_intervals) {
    if (k_intervals < 1) throw ValidationError("need at least one interval");
    double k = (double)k_intervals;
    double x = (double)n / k - 2.0 * alpha * (double)n / (k * k);
    if (x < 0.0) x = 0.0;
    return k * std::lgamma(x + 1.0);
}

}  // namespace gne
