#pragma once

#include <bit>
#include <cstdint>

namespace scarchain {

using state_t = std::uint64_t;

/// All-ones mask for an L-site chain (L <= 63).
constexpr state_t chain_mask(int length) {
    return (length >= 64) ? ~state_t{0} : ((state_t{1} << length) - 1);
}

/// Cyclic left rotation within the low L bits: site i -> site i+1.
constexpr state_t rotate_left(state_t bits, int length, int shift) {
    shift %= length;
    if (shift == 0) return bits;
    const state_t mask = chain_mask(length);
    return ((bits << shift) | (bits >> (length - shift))) & mask;
}

/// Reverse the low L bits: site i -> site L - i + 1.
constexpr state_t reverse_bits(state_t bits, int length) {
    state_t out = 0;
    for (int j = 0; j < length; ++j) {
        if (bits & (state_t{1} << j)) out |= state_t{1} << (length - 1 - j);
    }
    return out;
}

constexpr int popcount(state_t bits) { return std::popcount(bits); }

/// +1 for an up spin, -1 for a down spin at 0-based site index.
constexpr int z_sign(state_t bits, int site) {
    return (bits >> site) & 1 ? +1 : -1;
}

}  // namespace scarchain
