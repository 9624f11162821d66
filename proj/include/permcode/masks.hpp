#pragma once

#include <bit>
#include <cstdint>

namespace permcode {

// Candidate set over symbols 1..q, bit j-1 <-> symbol j.
using Mask = std::uint32_t;

inline constexpr int kMaxAlphabet = 25;  // 2^q state tables cap

constexpr Mask full_mask(int q) { return (Mask{1} << q) - 1; }

constexpr Mask symbol_bit(int symbol) { return Mask{1} << (symbol - 1); }

constexpr bool is_singleton(Mask m) { return m != 0 && (m & (m - 1)) == 0; }

constexpr int cardinality(Mask m) { return std::popcount(m); }

// Smallest symbol in a nonempty mask.
inline int lowest_symbol(Mask m) { return std::countr_zero(m) + 1; }

}  // namespace permcode
