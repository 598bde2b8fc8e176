#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ubcode {

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t k);

// Advances `idx` (strictly increasing, values < n) to the next k-subset in
// lexicographic order. Returns false after the last one.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n);

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order
// until fn returns false. Returns false if stopped early.
template <class Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    do {
        if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    } while (next_combination(idx, n));
    return true;
}

} // namespace ubcode
