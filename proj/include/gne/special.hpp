#pragma once

#include <cstdint>
#include <vector>

namespace gne {

// Letter-mixture distribution: a letter drawn uniformly from k parent
// letters plus one fresh uniform letter has
//   P(a) = (1 + A * count_a) / ((1 + k) * A)
// where count_a is the multiplicity of a among the parents.
double mixture_entropy(const std::vector<uint32_t>& counts, uint32_t k, uint32_t a);

// h_A(k): expected mixture entropy over k iid uniform parent letters,
// in nats.  h_A(0) = ln A.  Evaluated as a Binomial(k, 1/A) average of the
// per-letter terms, which is the count-vector enumeration collapsed by
// symmetry; O(k) per value, good for k up to a few hundred.
double h_mix(uint32_t a, uint32_t k);

// J_k(alpha) = integral_0^1 x^k e^(-alpha x) dx.  alpha = 0 gives 1/(k+1).
// Uses the all-positive series e^(-alpha) sum_m alpha^m k!/(m+k+1)!; the
// textbook forward recurrence loses ~k!/alpha^k precision and is kept out
// of the library (the quadrature cross-check lives in the tests).
double j_integral(double alpha, uint32_t k);

// kappa_gamma = (2-gamma) / (2^(1+gamma) * integral_0^(pi/4) sec^(2-gamma)),
// the small-world calibration constant for 0 < gamma < 2.
double kappa(double gamma);

}  // namespace gne
