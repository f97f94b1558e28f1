#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "gne/graph.hpp"

namespace gne {

// Parameter blocks for the model families.  Every variant carries its seed.
struct ErBinary {
    uint64_t n;
    double alpha;
    uint64_t seed = 1;
};

struct ErNamed {
    uint64_t n;
    double alpha;
    double beta;
    uint32_t a;
    uint64_t seed = 1;
};

struct SmallWorld {
    uint32_t side;  // odd torus side; N = side^2
    double alpha;
    double gamma;
    uint64_t seed = 1;
};

struct Hamming {
    uint64_t n;
    double alpha;
    double beta;
    uint32_t a;
    double d;  // Hamming-distance fraction, in (0, 1 - 1/A)
    uint64_t seed = 1;
};

struct TreeSequential {
    uint64_t n;
    uint64_t seed = 1;
};

struct TreeUniform {
    uint64_t n;
    uint64_t seed = 1;
};

using ModelParams =
    std::variant<ErBinary, ErNamed, SmallWorld, Hamming, TreeSequential, TreeUniform>;

void validate(const ModelParams& params);
uint64_t model_size(const ModelParams& params);  // N (side^2 for small worlds)
const char* model_tag(const ModelParams& params);

GraphWithNames generate(const ModelParams& params);

// Small-world calibration: a solves a * S_n = alpha exactly, where S_n is
// the per-vertex sum 4*sum_{i,j>=1} r_{ij}^-gamma + 4*sum_{i>=2} i^-gamma.
// `asymptotic_a` is the paper's limit expression (alpha/(pi ln N) at
// gamma = 2, alpha*kappa_gamma*N^(gamma/2-1) for gamma < 2; absent for
// gamma > 2 where a tends to the constant alpha/S_inf).
struct SmallWorldCalibration {
    double a;
    double per_vertex_sum;  // S_n
    std::optional<double> asymptotic_a;
};
SmallWorldCalibration calibrate_small_world(uint32_t side, double gamma, double alpha);
double calibrate_a(uint32_t side, double gamma, double alpha);

// Per-vertex sums over the torus displacement classes; the parallel kernel
// and its serial reference are bit-identical (blocked summation).
double smallworld_degree_sum(uint32_t side, double gamma);
double smallworld_degree_sum_serial(uint32_t side, double gamma);
double smallworld_bernoulli_sum(uint32_t side, double gamma, double a);
double smallworld_bernoulli_sum_serial(uint32_t side, double gamma, double a);

// Expected per-vertex edge weight mu_N of the Hamming model, via a stable
// log-space binomial tail sum.
double hamming_mu(uint64_t n_vertices, uint32_t a, uint32_t len, uint32_t m);
// ln mu_N / ln N, for comparison with its large-deviation limit.
double hamming_mu_exponent(uint64_t n_vertices, uint32_t a, uint32_t len, uint32_t m);
uint32_t hamming_window(double d, uint32_t len);  // M = round(d*L) clamped to [1, L-1]

enum class EntropyMethod { exact, monte_carlo };

struct EntropyReport {
    double nats = 0.0;
    double bits = 0.0;
    double normalized_rate = 0.0;  // nats / (N ln N)
    std::optional<double> std_error;
    EntropyMethod method = EntropyMethod::exact;
};

EntropyReport make_report(double nats, uint64_t n, EntropyMethod method,
                          std::optional<double> std_error = std::nullopt);

// Exact finite-N entropy where the model admits a closed form (all six
// families here do).
EntropyReport exact_entropy(const ModelParams& params);

// Asymptotic entropy rate c with ent ~ c N log N.
double rate(const ModelParams& params);

// Edge lengths under a per-vertex ordering of the other vertices.
enum class OrderingKind {
    torus_distance,  // by torus Euclidean distance, ties by (di, dj) lex
    index_distance,  // by |index difference|, ties: smaller index first
};

struct EdgeLengthStats {
    std::vector<uint64_t> lengths;  // one per edge
    double fraction_longer(double m) const;
    uint64_t median() const;
};
EdgeLengthStats edge_length_stats(const GraphWithNames& g, OrderingKind kind);

struct NameSimilarityStats {
    uint64_t total_edge_hamming;
    double per_edge_mean;
    double normalized;  // total / (N ln N), the zero-rate diagnostic
};
NameSimilarityStats name_similarity_stats(const GraphWithNames& g);

}  // namespace gne
