#pragma once

// Uniform sampling of Q_n.
//
// Removing the adjacent pair "n n" from q in Q_n leaves a unique parent in
// Q_{n-1}, and q is recovered by inserting the pair into one particular gap
// of that parent. So Q_n is in bijection with Q_{n-1} x {0, ..., 2n-2}, and
// by induction with the gap sequences (g_2, ..., g_n), g_k in [0, 2k-2].
// Drawing each g_k uniformly and independently therefore gives the uniform
// distribution on Q_n.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "stirling/permutation.hpp"
#include "stirling/random.hpp"

namespace stirling {

/// Gap choices (g_2, ..., g_n); element k-2 holds g_k.
inline std::vector<std::uint32_t> sample_gaps(std::size_t n, SplitMix64& rng) {
    std::vector<std::uint32_t> gaps;
    if (n >= 2) gaps.reserve(n - 1);
    for (std::size_t k = 2; k <= n; ++k) gaps.push_back(static_cast<std::uint32_t>(rng.below(2 * k - 1)));
    return gaps;
}

/// Word obtained from "11" by inserting "k k" before position g_k, k = 2..n.
///
/// Built backwards in O(n log n): the pair inserted at step k ends up in the
/// (g_k+1)-th and (g_k+2)-th slots of the final word among those not taken by
/// later insertions. A Fenwick tree over free slots finds them.
inline std::vector<Value> word_from_gaps(std::size_t n, const std::vector<std::uint32_t>& gaps) {
    if (n < 1) throw DomainError("word_from_gaps requires n >= 1");
    if (gaps.size() != n - 1) throw DomainError("word_from_gaps: expected n-1 gap choices");
    const std::size_t size = 2 * n;
    std::vector<std::uint32_t> tree(size + 1, 0);
    for (std::size_t i = 1; i <= size; ++i) {
        tree[i] += 1;
        std::size_t parent = i + (i & (~i + 1));
        if (parent <= size) tree[parent] += tree[i];
    }
    const std::size_t top = std::bit_floor(size);
    // 0-based index of the (rank+1)-th free slot; marks it taken.
    auto take = [&](std::size_t rank) {
        std::size_t pos = 0;
        for (std::size_t step = top; step > 0; step >>= 1) {
            if (pos + step <= size && tree[pos + step] <= rank) {
                pos += step;
                rank -= tree[pos];
            }
        }
        for (std::size_t i = pos + 1; i <= size; i += i & (~i + 1)) tree[i] -= 1;
        return pos;
    };
    std::vector<Value> word(size, 0);
    for (std::size_t k = n; k >= 2; --k) {
        const std::size_t g = gaps[k - 2];
        if (g > 2 * k - 2) throw DomainError("word_from_gaps: gap index out of range");
        const std::size_t a = take(g);
        const std::size_t b = take(g);  // the next free slot now has the same rank
        word[a] = static_cast<Value>(k);
        word[b] = static_cast<Value>(k);
    }
    word[take(0)] = 1;
    word[take(0)] = 1;
    return word;
}

inline StirlingPermutation sample_uniform(std::size_t n, SplitMix64& rng) {
    if (n < 1) throw DomainError("sample_uniform requires n >= 1");
    return PermutationBuilder::adopt(word_from_gaps(n, sample_gaps(n, rng)));
}

/// Deterministic in (n, seed).
inline StirlingPermutation sample_uniform(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return sample_uniform(n, rng);
}

}  // namespace stirling
