#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gne/models.hpp"

namespace gne {

// One sweep: a model family with its constants, evaluated at each size in
// `sizes` (vertex counts, or torus sides for small worlds).  Exact models
// produce one exact row per size; the hybrid model runs the Monte-Carlo
// estimator over `seeds` replicate trajectories and reports the finite-N
// series next to it.
struct SweepSpec {
    std::string model;  // erbinary ernamed smallworld hamming treeseq treeuniform hybrid
    double alpha = 0.0;
    double beta = 0.0;
    uint32_t a = 2;
    double gamma = 0.0;
    double d = 0.0;
    bool ordered = true;          // hybrid only
    uint32_t link_samples = 32;   // hybrid only
    std::vector<uint64_t> sizes;  // strictly increasing
    uint32_t seeds = 1;
    uint64_t root_seed = 1;
};

void validate(const SweepSpec& spec);

inline constexpr const char* kSweepCsvHeader =
    "model,alpha,beta,A,gamma,d,N,root_seed,seeds,method,entropy_nats,"
    "normalized_rate,stderr,e_series_nats,e_series_normalized,target_rate";

// Writes the CSV (header plus one row per size).  Rows are computed in a
// worker pool but emitted in size order.
void run_sweep(const SweepSpec& spec, std::ostream& out);
void run_sweep(const SweepSpec& spec, const std::string& csv_path);

}  // namespace gne
