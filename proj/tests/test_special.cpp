#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "gne/entropy.hpp"
#include "gne/errors.hpp"
#include "gne/quadrature.hpp"
#include "gne/special.hpp"

using namespace gne;

namespace {

// oracle: average mixture entropy over all A^k parent tuples
double h_brute(uint32_t a, uint32_t k) {
    if (k == 0) return std::log((double)a);
    uint64_t tuples = 1;
    for (uint32_t i = 0; i < k; ++i) tuples *= a;
    double sum = 0.0;
    std::vector<uint32_t> counts(a);
    for (uint64_t t = 0; t < tuples; ++t) {
        std::fill(counts.begin(), counts.end(), 0);
        uint64_t x = t;
        for (uint32_t i = 0; i < k; ++i) {
            counts[x % a]++;
            x /= a;
        }
        sum += mixture_entropy(counts, k, a);
    }
    return sum / (double)tuples;
}

// oracle: J_k by adaptive quadrature
double j_quad(double alpha, uint32_t k) {
    return integrate(
        [alpha, k](double x) { return std::pow(x, (double)k) * std::exp(-alpha * x); }, 0.0,
        1.0, 1e-13);
}

}  // namespace

TEST_CASE("quadrature sanity") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("letter mixture entropy and h_A") {
    SUBCASE("known points") {
        CHECK(h_mix(2, 0) == std::log(2.0));
        CHECK(h_mix(2, 1) == doctest::Approx(0.562335).epsilon(1e-5));
        // one parent: p = ((1+A)/(2A), 1/(2A), ...)
        CHECK(mixture_entropy({1}, 1, 2) == doctest::Approx(ent({{0.75, 0.25}})).epsilon(1e-14));
    }
    SUBCASE("matches the brute-force tuple average") {
        for (uint32_t a = 2; a <= 3; ++a)
            for (uint32_t k = 0; k <= 6; ++k)
                CHECK(h_mix(a, k) == doctest::Approx(h_brute(a, k)).epsilon(1e-12));
        for (uint32_t k = 0; k <= 8; ++k)
            CHECK(h_mix(4, k) == doctest::Approx(h_brute(4, k)).epsilon(1e-12));
    }
    SUBCASE("strictly below log A for k >= 1") {
        for (uint32_t a : {2u, 3u, 4u})
            for (uint32_t k = 1; k <= 20; ++k) CHECK(h_mix(a, k) < std::log((double)a));
    }
    SUBCASE("Monte-Carlo check of the one-parent copy rule") {
        // child letter = uniform pick among {fresh uniform letter, parent letter}
        std::mt19937_64 rng(99);
        uint64_t hits[2] = {0, 0};
        const uint64_t trials = 2000000;
        for (uint64_t t = 0; t < trials; ++t) {
            int parent = (int)(rng() & 1);
            int child = (rng() & 1) ? parent : (int)(rng() & 1);
            hits[child == parent ? 1 : 0]++;
        }
        double p_same = (double)hits[1] / (double)trials;
        double h_emp = -p_same * std::log(p_same) - (1 - p_same) * std::log(1 - p_same);
        CHECK(h_emp == doctest::Approx(h_mix(2, 1)).epsilon(5e-3));
    }
}

TEST_CASE("J integral") {
    CHECK(j_integral(1.0, 0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
    CHECK(j_integral(1.0, 0) == doctest::Approx(0.632121).epsilon(1e-6));
    for (uint32_t k = 0; k <= 10; ++k) CHECK(j_integral(0.0, k) == 1.0 / (double)(k + 1));
    SUBCASE("agrees with quadrature to 1e-10") {
        for (double alpha : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0})
            for (uint32_t k = 0; k <= 30; k += (k < 8 ? 1 : 5))
                CHECK(std::abs(j_integral(alpha, k) - j_quad(alpha, k)) < 1e-10);
        CHECK(std::abs(j_integral(2.0, 5) - j_quad(2.0, 5)) < 1e-10);
    }
    SUBCASE("bounds and monotonicity") {
        for (double alpha : {0.3, 1.0, 4.0}) {
            double prev = 2.0;
            for (uint32_t k = 0; k <= 25; ++k) {
                double v = j_integral(alpha, k);
                CHECK(v > 0.0);
                CHECK(v < 1.0 / (double)(k + 1) + 1e-15);
                CHECK(v < prev);
                prev = v;
            }
        }
        CHECK(j_integral(2.0, 3) < j_integral(1.0, 3));
    }
    CHECK_THROWS_AS(j_integral(-1.0, 0), ValidationError);
}

TEST_CASE("kappa") {
    // closed form at gamma = 1: integral of sec is ln(1 + sqrt 2)
    double closed = 1.0 / (4.0 * std::log(1.0 + std::sqrt(2.0)));
    CHECK(kappa(1.0) == doctest::Approx(closed).epsilon(1e-10));
    for (double g = 0.25; g < 2.0; g += 0.25) CHECK(kappa(g) > 0.0);
    // kappa ~ (2 - gamma)/(2 pi) as gamma -> 2
    double g = 1.999;
    CHECK(kappa(g) / (2.0 - g) * 2.0 * 3.14159265358979323846 ==
          doctest::Approx(1.0).epsilon(0.01));
    CHECK_THROWS_AS(kappa(0.0), ValidationError);
    CHECK_THROWS_AS(kappa(2.0), ValidationError);
}
