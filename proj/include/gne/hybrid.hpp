#pragma once

#include <cstdint>
#include <vector>

#include "gne/graph.hpp"
#include "gne/models.hpp"

namespace gne {

struct HybridParams {
    uint64_t n;
    double alpha;
    double beta;
    uint32_t a;
    uint64_t seed = 1;
    bool ordered = false;  // names carry the construction index
};

void validate(const HybridParams& params);
uint32_t hybrid_name_length(const HybridParams& params);

// Per-coordinate copy bookkeeping from the construction.  origin(v, u) is
// the vertex whose original letter ended up at coordinate u of vertex v;
// origin(v, u) == v means the letter is v's own.  tree_flags[v] records
// whether the descendant structure reachable from v stayed a tree.
struct CopyTrace {
    uint64_t n = 0;
    uint32_t len = 0;
    std::vector<uint32_t> origins;      // n * len
    std::vector<uint32_t> link_counts;  // Q_n per vertex
    std::vector<uint8_t> tree_flags;

    uint32_t origin(uint64_t v, uint32_t u) const { return origins[v * len + u]; }
};

// Directed acyclic graph with edges later -> earlier.
struct Dag {
    uint64_t n = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges;  // (later, earlier)
};

void validate(const Dag& dag);

struct HybridOutput {
    GraphWithNames graph;
    Dag dag;
    CopyTrace trace;
};

// Sequential construction: vertex k links to each earlier vertex
// independently with probability alpha/N, then each name coordinate copies
// uniformly from the linked parents' letters plus one fresh uniform letter.
HybridOutput gen_hybrid(const HybridParams& params);

struct RenameResult {
    GraphWithNames graph;
    uint64_t renamed = 0;
};

// Gives fresh non-colliding uniform names to the later-indexed holders of
// any duplicated name.  Output names are all distinct.
RenameResult rename_duplicates(const GraphWithNames& g, uint64_t seed);

// Asymptotic rate of the ordered model,
//   alpha/2 + beta * sum_k alpha^k J_k(alpha) h_A(k) / (k! ln A),
// truncated when the tail bound beta * alpha^(k+1)/(k+2)! drops below tol.
// The unordered rate is the ordered rate minus 1.
double rate_hybrid(double alpha, double beta, uint32_t a, bool ordered, double tol = 1e-12);
double rate_hybrid_truncated(double alpha, double beta, uint32_t a, bool ordered,
                             uint32_t k_max);

// Finite-N per-step series e_{N,n} = name_len * sum_k h_A(k) C(n,k)
// (alpha/N)^k exp(-alpha n/N) (nats), n = 0..N-1, plus the exact edge terms
// n*E(alpha/N).  name_len is a parameter: pass the model's integer name
// length to approximate the construction itself (it then matches the
// Monte-Carlo estimator), or beta log_A N for the limit form whose
// normalized total converges to rate_hybrid.
struct ESeries {
    std::vector<double> per_step;  // name terms e_{N,n}
    double name_nats = 0.0;
    double edge_nats = 0.0;
    double total_nats = 0.0;
};
ESeries e_series(uint64_t n, double alpha, uint32_t a, double name_len,
                 uint32_t k_cap = 0);
ESeries e_series_serial(uint64_t n, double alpha, uint32_t a, double name_len,
                        uint32_t k_cap = 0);

// Chain-rule Monte-Carlo estimate of the ordered model's entropy: one
// construction trajectory; at each step the exact edge term plus the name
// term averaged over link_samples fresh link sets.  Unbiased; std_error
// from the per-step sample variances.
EntropyReport mc_entropy(const HybridParams& params, uint32_t link_samples,
                         uint64_t sample_seed);

struct CollisionStats {
    uint64_t duplicate_name_count = 0;  // vertices whose raw name is not unique
    double est_theta = 0.0;             // P(C_1(I) = C_1(J)) over sampled pairs
    double non_tree_fraction = 0.0;
};
CollisionStats collision_stats(const CopyTrace& trace, const GraphWithNames& g,
                               uint64_t pair_samples = 100000, uint64_t seed = 1);

// Exact number of vertex orderings consistent with the DAG's edge
// directions, by subset DP over prefixes.  N <= 24 (the count always fits
// 128 bits there); larger inputs raise CapacityError.
struct ExtensionCount {
    double log_nats;
    unsigned __int128 exact;
};
ExtensionCount count_linear_extensions(const Dag& dag);

std::string uint128_to_string(unsigned __int128 x);

// Interval-partition lower bound for E log M: K * ln((N/K - 2 alpha N/K^2)!).
double extensions_lower_bound(uint64_t n, double alpha, uint64_t k_intervals);

}  // namespace gne
