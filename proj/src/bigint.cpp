#include "gne/bigint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gne {

BigUint::BigUint(uint64_t v) {
    if (v) limbs_.push_back(v);
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

size_t BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    uint64_t top = limbs_.back();
    size_t bits = 64 - (size_t)__builtin_clzll(top);
    return (limbs_.size() - 1) * 64 + bits;
}

void BigUint::add(const BigUint& other) {
    size_t m = std::max(limbs_.size(), other.limbs_.size());
    limbs_.resize(m, 0);
    unsigned __int128 carry = 0;
    for (size_t i = 0; i < m; ++i) {
        unsigned __int128 s = carry + limbs_[i];
        if (i < other.limbs_.size()) s += other.limbs_[i];
        limbs_[i] = (uint64_t)s;
        carry = s >> 64;
    }
    if (carry) limbs_.push_back((uint64_t)carry);
}

void BigUint::sub(const BigUint& other) {
    if (compare(other) < 0) throw std::underflow_error("BigUint subtraction underflow");
    unsigned __int128 borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        unsigned __int128 rhs = borrow;
        if (i < other.limbs_.size()) rhs += other.limbs_[i];
        if ((unsigned __int128)limbs_[i] >= rhs) {
            limbs_[i] = (uint64_t)(limbs_[i] - rhs);
            borrow = 0;
        } else {
            limbs_[i] = (uint64_t)(((unsigned __int128)1 << 64) + limbs_[i] - rhs);
            borrow = 1;
        }
    }
    trim();
}

void BigUint::mul_small(uint64_t m) {
    if (m == 0 || limbs_.empty()) {
        limbs_.clear();
        return;
    }
    unsigned __int128 carry = 0;
    for (auto& l : limbs_) {
        unsigned __int128 p = (unsigned __int128)l * m + carry;
        l = (uint64_t)p;
        carry = p >> 64;
    }
    if (carry) limbs_.push_back((uint64_t)carry);
}

uint64_t BigUint::div_small(uint64_t d) {
    unsigned __int128 rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        unsigned __int128 cur = (rem << 64) | limbs_[i];
        limbs_[i] = (uint64_t)(cur / d);
        rem = cur % d;
    }
    trim();
    return (uint64_t)rem;
}

int BigUint::compare(const BigUint& other) const {
    if (limbs_.size() != other.limbs_.size())
        return limbs_.size() < other.limbs_.size() ? -1 : 1;
    for (size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != other.limbs_[i]) return limbs_[i] < other.limbs_[i] ? -1 : 1;
    }
    return 0;
}

bool BigUint::bit(size_t i) const {
    size_t limb = i / 64;
    if (limb >= limbs_.size()) return false;
    return limbs_[limb] >> (i % 64) & 1;
}

void BigUint::set_bit(size_t i) {
    size_t limb = i / 64;
    if (limb >= limbs_.size()) limbs_.resize(limb + 1, 0);
    limbs_[limb] |= 1ull << (i % 64);
}

double BigUint::log_value() const {
    if (limbs_.empty()) return -std::numeric_limits<double>::infinity();
    size_t bits = bit_length();
    // use the top <= 128 bits for the mantissa
    long double top = 0.0L;
    size_t start = bits > 128 ? bits - 128 : 0;
    for (size_t i = bits; i-- > start;) top = top * 2.0L + (bit(i) ? 1.0L : 0.0L);
    return (double)(std::log(top) + (long double)start * std::log(2.0L));
}

BigUint big_choose(uint64_t m, uint64_t k) {
    if (k > m) return BigUint();
    if (k > m - k) k = m - k;
    BigUint c(1);
    for (uint64_t i = 1; i <= k; ++i) {
        c.mul_small(m - k + i);
        c.div_small(i);
    }
    return c;
}

}  // namespace gne
