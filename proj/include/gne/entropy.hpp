#pragma once

#include <cstdint>
#include <vector>

namespace gne {

// Finite probability distribution.  Entries must be non-negative and sum
// to 1 within 1e-12.
struct Distribution {
    std::vector<double> probs;
};

// Joint distribution of a pair of finite variables.  probs[i][j] is the
// mass of (row outcome i, column outcome j); total mass 1 within 1e-12.
struct JointDistribution {
    std::vector<std::vector<double>> probs;
};

void validate(const Distribution& dist);
void validate(const JointDistribution& joint);

// x*ln(x) with the 0*ln(0) = 0 convention.
double xlogx(double x);

// Shannon entropy in nats: -sum p ln p.
double ent(const Distribution& dist);

struct ConditionalEntropy {
    double marginal;     // entropy of the row variable
    double conditional;  // expected entropy of the column variable given the row
};

// Splits ent(joint) = marginal + conditional (chain rule), conditioning on
// the row variable.
ConditionalEntropy conditional_entropy(const JointDistribution& joint);

double joint_entropy(const JointDistribution& joint);

// Entropy of the Bernoulli(p) distribution, nats.
double bernoulli_entropy(double p);

// Binomial large-deviation rate x ln(x/p) + (1-x) ln((1-x)/(1-p)).
// Requires 0 < p < 1 and 0 <= x <= 1.
double large_dev_rate(double p, double x);

// ln C(m, k) via log-gamma.
double log_choose(uint64_t m, uint64_t k);

// The crude sweep companion K ln(m/K); value 0 for k = 0.
double log_choose_asymptotic(uint64_t m, uint64_t k);

// ln C(A^L, n): the name-set count with a universe too large for uint64.
double log_choose_pow(uint32_t a, uint32_t len, uint64_t n);

// ln of the number of graphs on N labelled vertices with at most M edges,
// i.e. ln sum_{k<=min(M,C(N,2))} C(C(N,2), k), by stable log-sum-exp.
double log_graph_count(uint64_t n_vertices, uint64_t max_edges);

}  // namespace gne
