#include "gne/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "gne/entropy.hpp"
#include "gne/errors.hpp"
#include "gne/rng.hpp"
#include "gne/special.hpp"
#include "gne/sum.hpp"

namespace gne {

void validate(const HybridParams& params) {
    if (params.n < 2) throw ValidationError("need at least 2 vertices");
    if (!(params.alpha >= 0.0 && params.alpha < (double)params.n))
        throw ValidationError("alpha must be in [0, N)");
    if (!(params.beta > 1.0)) throw ValidationError("beta must be > 1");
    if (params.a < 2 || params.a > kMaxAlphabet)
        throw ValidationError("alphabet size out of range");
}

uint32_t hybrid_name_length(const HybridParams& params) {
    return name_length(params.n, params.beta, params.a);
}

HybridOutput gen_hybrid(const HybridParams& params) {
    validate(params);
    uint64_t n = params.n;
    uint32_t len = hybrid_name_length(params);
    uint32_t a = params.a;
    double p = params.alpha / (double)n;

    HybridOutput out;
    out.graph.a = a;
    out.graph.len = len;
    out.graph.ordered = params.ordered;
    out.graph.names.resize(n);
    out.trace.n = n;
    out.trace.len = len;
    out.trace.origins.resize(n * len);
    out.trace.link_counts.assign(n, 0);
    out.trace.tree_flags.assign(n, 1);
    out.dag.n = n;

    Rng rng(params.seed);
    std::string name(len, kLetters[0]);
    for (uint32_t u = 0; u < len; ++u) {
        name[u] = kLetters[rng.below(a)];
        out.trace.origins[u] = 0;
    }
    out.graph.names[0] = name;

    // descendant sets along decreasing paths, ascending, v itself last
    std::vector<std::vector<uint32_t>> desc(n);
    desc[0] = {0};

    std::vector<uint32_t> parents;
    std::vector<uint32_t> merged;
    for (uint64_t v = 1; v < n; ++v) {
        parents.clear();
        uint64_t t = rng.geometric_skip(p);
        while (t < v) {
            parents.push_back((uint32_t)t);
            uint64_t s = rng.geometric_skip(p);
            if (s >= v - t) break;
            t += 1 + s;
        }
        uint32_t q = (uint32_t)parents.size();
        out.trace.link_counts[v] = q;
        for (uint32_t i : parents) {
            out.dag.edges.emplace_back((uint32_t)v, i);
            out.graph.edges.emplace_back(i, (uint32_t)v);
        }
        for (uint32_t u = 0; u < len; ++u) {
            uint64_t pick = rng.below(q + 1);
            if (pick == 0) {
                name[u] = kLetters[rng.below(a)];
                out.trace.origins[v * len + u] = (uint32_t)v;
            } else {
                uint32_t par = parents[pick - 1];
                name[u] = out.graph.names[par][u];
                out.trace.origins[v * len + u] = out.trace.origins[(uint64_t)par * len + u];
            }
        }
        out.graph.names[v] = name;

        bool tree = true;
        merged.clear();
        for (uint32_t i : parents) {
            if (!out.trace.tree_flags[i]) tree = false;
            if (merged.empty()) {
                merged = desc[i];
            } else {
                std::vector<uint32_t> tmp;
                tmp.reserve(merged.size() + desc[i].size());
                std::merge(merged.begin(), merged.end(), desc[i].begin(), desc[i].end(),
                           std::back_inserter(tmp));
                for (size_t s = 1; s < tmp.size(); ++s)
                    if (tmp[s] == tmp[s - 1]) tree = false;
                tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
                merged.swap(tmp);
            }
        }
        merged.push_back((uint32_t)v);
        desc[v] = merged;
        out.trace.tree_flags[v] = tree ? 1 : 0;
    }
    canonicalize_edges(out.graph);
    return out;
}

RenameResult rename_duplicates(const GraphWithNames& g, uint64_t seed) {
    RenameResult res;
    res.graph = g;
    uint64_t n = g.num_vertices();
    if ((double)g.len * std::log((double)g.a) < std::log((double)n))
        throw ValidationError("name space too small to make names distinct");
    std::unordered_set<std::string> taken(g.names.begin(), g.names.end());
    std::unordered_set<std::string> seen;
    seen.reserve(2 * n);
    Rng rng(seed);
    std::string fresh(g.len, kLetters[0]);
    for (uint64_t v = 0; v < n; ++v) {
        if (seen.insert(res.graph.names[v]).second) continue;  // first holder keeps it
        do {
            for (uint32_t u = 0; u < g.len; ++u) fresh[u] = kLetters[rng.below(g.a)];
        } while (taken.count(fresh));
        taken.insert(fresh);
        seen.insert(fresh);
        res.graph.names[v] = fresh;
        ++res.renamed;
    }
    res.graph.ordered = false;
    return res;
}

namespace {

double series_sum(double alpha, double beta, uint32_t a, double tol, uint32_t k_max,
                  bool use_tol) {
    double log_a = std::log((double)a);
    double pref = beta;  // beta * alpha^k / k!
    double sum = 0.0;
    for (uint32_t k = 0;; ++k) {
        sum += pref * j_integral(alpha, k) * h_mix(a, k) / log_a;
        if (!use_tol && k >= k_max) break;
        if (use_tol) {
            // tail <= beta * alpha^(k+1)/(k+2)! / (1 - alpha/(k+3))
            double next = pref * alpha / (double)(k + 1);
            double bound = next / (double)(k + 2);
            if (alpha < (double)(k + 3)) bound /= 1.0 - alpha / (double)(k + 3);
            if (bound < tol) break;
            if (k > 5000) throw ValidationError("hybrid rate series failed to converge");
        }
        pref *= alpha / (double)(k + 1);
    }
    return sum;
}

}  // namespace

double rate_hybrid(double alpha, double beta, uint32_t a, bool ordered, double tol) {
    if (!(alpha >= 0.0)) throw ValidationError("alpha must be >= 0");
    if (!(beta > 1.0)) throw ValidationError("beta must be > 1");
    if (a < 2 || a > kMaxAlphabet) throw ValidationError("alphabet size out of range");
    if (!(tol > 0.0)) throw ValidationError("tol must be > 0");
    double r = 0.5 * alpha + series_sum(alpha, beta, a, tol, 0, true);
    return ordered ? r : r - 1.0;
}

double rate_hybrid_truncated(double alpha, double beta, uint32_t a, bool ordered,
                             uint32_t k_max) {
    double r = 0.5 * alpha + series_sum(alpha, beta, a, 0.0, k_max, false);
    return ordered ? r : r - 1.0;
}

namespace {

ESeries e_series_impl(uint64_t n, double alpha, uint32_t a, double name_len,
                      uint32_t k_cap, bool parallel) {
    if (n < 2) throw ValidationError("need at least 2 vertices");
    if (!(alpha >= 0.0)) throw ValidationError("alpha must be >= 0");
    uint32_t k_max = k_cap;
    if (k_max == 0) {
        k_max = 1;
        double t = alpha;
        while (t > 1e-16 && k_max < 400) {
            ++k_max;
            t *= alpha / (double)k_max;
        }
    }
    std::vector<double> h(k_max + 1);
    for (uint32_t k = 0; k <= k_max; ++k) h[k] = h_mix(a, k);

    ESeries es;
    es.per_step.resize(n);
    double inv_n = 1.0 / (double)n;
    auto step_term = [&](size_t step) {
        double s = 0.0;
        double x = 1.0;  // C(step,k) (alpha/N)^k
        uint32_t top = std::min<uint64_t>(k_max, step);
        for (uint32_t k = 0;; ++k) {
            s += h[k] * x;
            if (k >= top) break;
            x *= alpha * (double)(step - k) * inv_n / (double)(k + 1);
        }
        double e = name_len * s * std::exp(-alpha * (double)step * inv_n);
        es.per_step[step] = e;
        return e;
    };
    es.name_nats = parallel ? block_sum_parallel(n, step_term) : block_sum_serial(n, step_term);
    double pairs = 0.5 * (double)n * (double)(n - 1);
    es.edge_nats = pairs * bernoulli_entropy(alpha * inv_n);
    es.total_nats = es.name_nats + es.edge_nats;
    return es;
}

}  // namespace

ESeries e_series(uint64_t n, double alpha, uint32_t a, double name_len, uint32_t k_cap) {
    return e_series_impl(n, alpha, a, name_len, k_cap, true);
}

ESeries e_series_serial(uint64_t n, double alpha, uint32_t a, double name_len,
                        uint32_t k_cap) {
    return e_series_impl(n, alpha, a, name_len, k_cap, false);
}

EntropyReport mc_entropy(const HybridParams& params, uint32_t link_samples,
                         uint64_t sample_seed) {
    if (link_samples < 1) throw ValidationError("link_samples must be >= 1");
    HybridOutput built = gen_hybrid(params);
    const auto& names = built.graph.names;
    uint64_t n = params.n;
    uint32_t len = built.graph.len;
    uint32_t a = params.a;
    double p = params.alpha / (double)n;
    double log_a = std::log((double)a);

    std::vector<double> step_mean(n), step_var(n);
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<uint32_t> parents;
        std::vector<uint32_t> counts(a, 0);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64)
#endif
        for (long long v = 0; v < (long long)n; ++v) {
            Rng rng(derive_seed(sample_seed, (uint64_t)v, 0x6d63));
            double sum = 0.0, sumsq = 0.0;
            for (uint32_t r = 0; r < link_samples; ++r) {
                parents.clear();
                uint64_t t = rng.geometric_skip(p);
                while (t < (uint64_t)v) {
                    parents.push_back((uint32_t)t);
                    uint64_t s = rng.geometric_skip(p);
                    if (s >= (uint64_t)v - t) break;
                    t += 1 + s;
                }
                double x;
                if (parents.empty()) {
                    x = (double)len * log_a;
                } else {
                    uint32_t q = (uint32_t)parents.size();
                    double denom = (double)(1 + q) * (double)a;
                    x = 0.0;
                    for (uint32_t u = 0; u < len; ++u) {
                        for (uint32_t i : parents)
                            counts[(uint32_t)letter_index(names[i][u], a)]++;
                        double h = 0.0;
                        uint32_t zeros = 0;
                        for (uint32_t c : counts) {
                            if (c == 0) {
                                ++zeros;
                            } else {
                                h -= xlogx((1.0 + (double)a * (double)c) / denom);
                            }
                        }
                        h -= (double)zeros * xlogx(1.0 / denom);
                        x += h;
                        for (uint32_t i : parents)
                            counts[(uint32_t)letter_index(names[i][u], a)] = 0;
                    }
                }
                sum += x;
                sumsq += x * x;
            }
            double mean = sum / (double)link_samples;
            step_mean[(size_t)v] = mean;
            step_var[(size_t)v] =
                link_samples > 1
                    ? std::max(0.0, (sumsq - sum * mean) / (double)(link_samples - 1))
                    : 0.0;
        }
    }
    double name_total = block_sum_serial(n, [&](size_t v) { return step_mean[v]; });
    double var_total = block_sum_serial(
        n, [&](size_t v) { return step_var[v] / (double)link_samples; });
    double pairs = 0.5 * (double)n * (double)(n - 1);
    double total = name_total + pairs * bernoulli_entropy(p);
    return make_report(total, n, EntropyMethod::monte_carlo, std::sqrt(var_total));
}

CollisionStats collision_stats(const CopyTrace& trace, const GraphWithNames& g,
                               uint64_t pair_samples, uint64_t seed) {
    uint64_t n = g.num_vertices();
    if (trace.n != n || trace.len != g.len)
        throw ValidationError("copy trace does not match the graph");
    CollisionStats st;
    std::unordered_map<std::string, uint32_t> freq;
    for (const auto& name : g.names) ++freq[name];
    for (const auto& name : g.names)
        if (freq[name] > 1) ++st.duplicate_name_count;
    uint64_t hits = 0;
    Rng rng(seed);
    for (uint64_t s = 0; s < pair_samples; ++s) {
        uint64_t i = rng.below(n);
        uint64_t j = rng.below(n - 1);
        if (j >= i) ++j;
        hits += trace.origin(i, 0) == trace.origin(j, 0);
    }
    st.est_theta = (double)hits / (double)pair_samples;
    uint64_t non_tree = 0;
    for (uint8_t f : trace.tree_flags) non_tree += f == 0;
    st.non_tree_fraction = (double)non_tree / (double)n;
    return st;
}

}  // namespace gne
