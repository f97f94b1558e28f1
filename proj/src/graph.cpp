#include "gne/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "gne/errors.hpp"

namespace gne {

int letter_index(char c, uint32_t a) {
    const char* p = std::char_traits<char>::find(kLetters, kMaxAlphabet, c);
    if (!p) return -1;
    int idx = (int)(p - kLetters);
    return idx < (int)a ? idx : -1;
}

void canonicalize_edges(GraphWithNames& g) {
    for (auto& e : g.edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(g.edges.begin(), g.edges.end());
}

void validate(const GraphWithNames& g) {
    if (g.a < 2 || g.a > kMaxAlphabet) throw ValidationError("alphabet size out of range");
    uint64_t n = g.names.size();
    for (const auto& name : g.names) {
        if (name.size() != g.len) throw ValidationError("name length != L");
        for (char c : name)
            if (letter_index(c, g.a) < 0) throw ValidationError("letter outside alphabet");
    }
    if (!g.ordered) {
        std::unordered_set<std::string> seen(g.names.begin(), g.names.end());
        if (seen.size() != g.names.size()) throw ValidationError("duplicate vertex names");
        if (g.len < 64 && n > 0) {
            double space = std::pow((double)g.a, (double)g.len);
            if ((double)n > space) throw ValidationError("more vertices than names");
        }
    }
    for (size_t i = 0; i < g.edges.size(); ++i) {
        auto [u, v] = g.edges[i];
        if (u >= v) throw ValidationError("edge must have u < v");
        if (v >= n) throw ValidationError("edge endpoint out of range");
        if (i > 0 && g.edges[i] == g.edges[i - 1]) throw ValidationError("duplicate edge");
    }
}

bool operator==(const GraphWithNames& x, const GraphWithNames& y) {
    return x.a == y.a && x.len == y.len && x.ordered == y.ordered && x.names == y.names &&
           x.edges == y.edges;
}

uint32_t name_length(uint64_t n, double beta, uint32_t a) {
    if (n < 2) throw ValidationError("need at least 2 vertices");
    double log_ratio = std::log((double)n) / std::log((double)a);
    auto guarded_ceil = [](double x) {
        return (uint32_t)std::ceil(x - 1e-9 * std::max(1.0, std::abs(x)));
    };
    uint32_t l = std::max(guarded_ceil(beta * log_ratio), guarded_ceil(log_ratio));
    return std::max<uint32_t>(l, 1);
}

std::string binary_name(uint64_t v, uint32_t len) {
    std::string s(len, '0');
    uint64_t x = len < 64 ? (v + 1) & ((1ull << len) - 1) : v + 1;
    for (uint32_t i = 0; i < len; ++i)
        if (x >> (len - 1 - i) & 1) s[i] = '1';
    return s;
}

uint64_t hamming_distance(const std::string& x, const std::string& y) {
    uint64_t d = 0;
    size_t m = std::min(x.size(), y.size());
    for (size_t i = 0; i < m; ++i) d += x[i] != y[i];
    return d + (x.size() > m ? x.size() - m : y.size() - m);
}

}  // namespace gne
