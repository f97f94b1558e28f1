// Benchmark comparing the OpenMP kernels against their serial reference
// implementations.  Prints wall times, speedup, and the max deviation
// (expected 0: both paths reduce over the same fixed blocks).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "gne/hybrid.hpp"
#include "gne/models.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void report(const char* name, double serial_s, double parallel_s, double diff) {
    std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  |diff| %.3g\n", name,
                serial_s, parallel_s, serial_s / parallel_s, diff);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif

    {
        uint32_t side = 3001;
        double gamma = 1.5, alpha = 1.0;
        double a = gne::calibrate_a(side, gamma, alpha);
        auto t0 = clock_type::now();
        double s_serial = gne::smallworld_bernoulli_sum_serial(side, gamma, a);
        double t_serial = seconds_since(t0);
        t0 = clock_type::now();
        double s_par = gne::smallworld_bernoulli_sum(side, gamma, a);
        double t_par = seconds_since(t0);
        report("smallworld entropy sum", t_serial, t_par, std::abs(s_serial - s_par));
    }

    {
        uint64_t n = 2000000;
        double alpha = 1.0;
        double name_len = 2.0 * std::log((double)n) / std::log(2.0);
        auto t0 = clock_type::now();
        auto es_serial = gne::e_series_serial(n, alpha, 2, name_len);
        double t_serial = seconds_since(t0);
        t0 = clock_type::now();
        auto es_par = gne::e_series(n, alpha, 2, name_len);
        double t_par = seconds_since(t0);
        report("hybrid e-series", t_serial, t_par,
               std::abs(es_serial.total_nats - es_par.total_nats));
    }

    {
        gne::HybridParams params{4000, 1.0, 2.0, 2, 7, true};
        auto t0 = clock_type::now();
#ifdef _OPENMP
        int saved = omp_get_max_threads();
        omp_set_num_threads(1);
#endif
        auto serial = gne::mc_entropy(params, 24, 11);
        double t_serial = seconds_since(t0);
#ifdef _OPENMP
        omp_set_num_threads(saved);
#endif
        t0 = clock_type::now();
        auto par = gne::mc_entropy(params, 24, 11);
        double t_par = seconds_since(t0);
        report("hybrid mc estimator", t_serial, t_par, std::abs(serial.nats - par.nats));
    }

    return 0;
}
