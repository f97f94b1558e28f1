#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gne {

// Blocked summation used by the parallel kernels.  Terms are accumulated
// per fixed-size block and the block partials are reduced in index order,
// so the result is bit-identical for any thread count (including the
// serial build).  The block size is fixed; do not make it depend on the
// number of threads.
inline constexpr size_t kSumBlock = 4096;

template <typename Term>
double block_sum_serial(size_t count, Term&& term) {
    double total = 0.0;
    for (size_t base = 0; base < count; base += kSumBlock) {
        size_t end = base + kSumBlock < count ? base + kSumBlock : count;
        double partial = 0.0;
        for (size_t i = base; i < end; ++i) partial += term(i);
        total += partial;
    }
    return total;
}

template <typename Term>
double block_sum_parallel(size_t count, Term&& term) {
    if (count == 0) return 0.0;
    size_t blocks = (count + kSumBlock - 1) / kSumBlock;
    std::vector<double> partial(blocks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long long b = 0; b < (long long)blocks; ++b) {
        size_t base = (size_t)b * kSumBlock;
        size_t end = base + kSumBlock < count ? base + kSumBlock : count;
        double acc = 0.0;
        for (size_t i = base; i < end; ++i) acc += term(i);
        partial[(size_t)b] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace gne
