#pragma once

#include <cstdint>
#include <vector>

namespace gne {

// Minimal unsigned big integer for combinatorial ranking: little-endian
// 64-bit limbs, just the operations the codec needs.
class BigUint {
  public:
    BigUint() = default;
    explicit BigUint(uint64_t v);

    bool is_zero() const { return limbs_.empty(); }
    size_t bit_length() const;

    void add(const BigUint& other);
    void sub(const BigUint& other);  // requires *this >= other
    void mul_small(uint64_t m);
    uint64_t div_small(uint64_t d);  // returns remainder
    int compare(const BigUint& other) const;

    bool bit(size_t i) const;
    void set_bit(size_t i);

    // ln of the value (for diagnostics); 0 maps to -inf
    double log_value() const;

  private:
    void trim();
    std::vector<uint64_t> limbs_;
};

// C(m, k) as a big integer (k small enough that the loop is exact).
BigUint big_choose(uint64_t m, uint64_t k);

}  // namespace gne
