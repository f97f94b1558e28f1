#include "gne/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gne/errors.hpp"

namespace gne {

namespace {
constexpr double kMassTol = 1e-12;
}

double xlogx(double x) {
    return x > 0.0 ? x * std::log(x) : 0.0;
}

void validate(const Distribution& dist) {
    double total = 0.0;
    for (double p : dist.probs) {
        if (!(p >= 0.0)) throw ValidationError("distribution entry negative or NaN");
        total += p;
    }
    if (std::abs(total - 1.0) > kMassTol)
        throw ValidationError("distribution mass " + std::to_string(total) + " != 1");
}

void validate(const JointDistribution& joint) {
    if (joint.probs.empty()) throw ValidationError("empty joint distribution");
    size_t cols = joint.probs.front().size();
    double total = 0.0;
    for (const auto& row : joint.probs) {
        if (row.size() != cols) throw ValidationError("ragged joint distribution");
        for (double p : row) {
            if (!(p >= 0.0)) throw ValidationError("joint entry negative or NaN");
            total += p;
        }
    }
    if (std::abs(total - 1.0) > kMassTol)
        throw ValidationError("joint mass " + std::to_string(total) + " != 1");
}

double ent(const Distribution& dist) {
    validate(dist);
    double h = 0.0;
    for (double p : dist.probs) h -= xlogx(p);
    return h;
}

ConditionalEntropy conditional_entropy(const JointDistribution& joint) {
    validate(joint);
    double marg = 0.0;
    double cond = 0.0;
    for (const auto& row : joint.probs) {
        double w = 0.0;
        for (double p : row) w += p;
        marg -= xlogx(w);
        if (w > 0.0) {
            double h_row = 0.0;
            for (double p : row) h_row -= xlogx(p / w);
            cond += w * h_row;
        }
    }
    return {marg, cond};
}

double joint_entropy(const JointDistribution& joint) {
    validate(joint);
    double h = 0.0;
    for (const auto& row : joint.probs)
        for (double p : row) h -= xlogx(p);
    return h;
}

double bernoulli_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("bernoulli p outside [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

double large_dev_rate(double p, double x) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("large_dev_rate requires 0 < p < 1");
    if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("large_dev_rate requires 0 <= x <= 1");
    double term1 = x > 0.0 ? x * std::log(x / p) : 0.0;
    double term2 = x < 1.0 ? (1.0 - x) * (std::log1p(-x) - std::log1p(-p)) : 0.0;
    return term1 + term2;
}

double log_choose(uint64_t m, uint64_t k) {
    if (k > m) throw ValidationError("log_choose needs k <= m");
    if (k == 0 || k == m) return 0.0;
    return std::lgamma((double)m + 1.0) - std::lgamma((double)k + 1.0) -
           std::lgamma((double)(m - k) + 1.0);
}

double log_choose_asymptotic(uint64_t m, uint64_t k) {
    if (k == 0) return 0.0;
    return (double)k * std::log((double)m / (double)k);
}

double log_choose_pow(uint32_t a, uint32_t len, uint64_t n) {
    if (a < 2) throw ValidationError("alphabet size must be >= 2");
    double log_universe = (double)len * std::log((double)a);
    if ((double)n > std::exp(std::min(log_universe, 700.0)) && log_universe < 700.0)
        throw ValidationError("name space smaller than n");
    // ln C(A^L, n) = sum_{i<n} ln(A^L - i) - ln n!
    double inv_universe = std::exp(-log_universe);
    double acc = 0.0;
    for (uint64_t i = 0; i < n; ++i) acc += std::log1p(-(double)i * inv_universe);
    return (double)n * log_universe + acc - std::lgamma((double)n + 1.0);
}

double log_graph_count(uint64_t n_vertices, uint64_t max_edges) {
    if (n_vertices < 1) throw ValidationError("need at least one vertex");
    double pairs = 0.5 * (double)n_vertices * (double)(n_vertices - 1);
    double m = std::min((double)max_edges, pairs);
    if (m <= 0.0) return 0.0;  // only the empty graph
    if (m >= pairs) return pairs * std::log(2.0);
    uint64_t top = (uint64_t)m;
    if (top > 200000000ull) throw CapacityError("log_graph_count: M too large to sum");
    // terms t_k = ln C(pairs, k) are increasing while k < pairs/2
    std::vector<double> terms(top + 1);
    terms[0] = 0.0;
    for (uint64_t k = 1; k <= top; ++k)
        terms[k] = terms[k - 1] + std::log((pairs - (double)k + 1.0) / (double)k);
    double mx = *std::max_element(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += std::exp(t - mx);
    return mx + std::log(s);
}

}  // namespace gne
