#include "gne/special.hpp"

#include <cmath>

#include "gne/entropy.hpp"
#include "gne/errors.hpp"
#include "gne/quadrature.hpp"

namespace gne {

double mixture_entropy(const std::vector<uint32_t>& counts, uint32_t k, uint32_t a) {
    if (a < 2) throw ValidationError("alphabet size must be >= 2");
    if (k == 0) return std::log((double)a);
    double denom = (double)(1 + k) * (double)a;
    double h = 0.0;
    uint32_t seen = 0;
    for (uint32_t c : counts) {
        h -= xlogx((1.0 + (double)a * (double)c) / denom);
        seen += c;
    }
    if (seen != k) throw ValidationError("mixture counts do not sum to k");
    // letters not among the parents all carry mass 1/denom
    uint32_t zeros = a - (uint32_t)counts.size();
    if (counts.size() > a) throw ValidationError("more count entries than letters");
    h -= (double)zeros * xlogx(1.0 / denom);
    return h;
}

double h_mix(uint32_t a, uint32_t k) {
    if (a < 2) throw ValidationError("alphabet size must be >= 2");
    if (k == 0) return std::log((double)a);
    // Per coordinate letter the parent count is Binomial(k, 1/A); the
    // entropy is A times the expected -p ln p term of one letter.
    double log_inv_a = -std::log((double)a);
    double log_rest = std::log1p(-1.0 / (double)a);
    double denom = (double)(1 + k) * (double)a;
    double h = 0.0;
    for (uint32_t b = 0; b <= k; ++b) {
        double logw = log_choose(k, b) + (double)b * log_inv_a +
                      (double)(k - b) * log_rest;
        double p = (1.0 + (double)a * (double)b) / denom;
        h -= std::exp(logw) * xlogx(p);
    }
    return (double)a * h;
}

double j_integral(double alpha, uint32_t k) {
    if (alpha < 0.0) throw ValidationError("j_integral requires alpha >= 0");
    if (alpha == 0.0) return 1.0 / (double)(k + 1);
    // e^{-alpha} * sum_{m>=0} alpha^m * k! / (m+k+1)!; all terms positive
    double term = 1.0 / (double)(k + 1);
    double sum = term;
    for (uint32_t m = 1; m < 4000; ++m) {
        term *= alpha / (double)(k + 1 + m);
        sum += term;
        if (term < sum * 1e-18 && alpha < (double)(k + 1 + m)) break;
    }
    return std::exp(-alpha) * sum;
}

double kappa(double gamma) {
    if (!(gamma > 0.0 && gamma < 2.0)) throw ValidationError("kappa requires 0 < gamma < 2");
    const double quarter_pi = 0.25 * 3.14159265358979323846;
    double denom_integral = integrate(
        [gamma](double theta) { return std::pow(1.0 / std::cos(theta), 2.0 - gamma); }, 0.0,
        quarter_pi, 1e-12);
    return (2.0 - gamma) / (std::exp2(1.0 + gamma) * denom_integral);
}

}  // namespace gne
