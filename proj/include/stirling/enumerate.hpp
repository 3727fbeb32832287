#pragma once

// Exhaustive enumeration of Q_n by recursive insertion.
//
// Every element of Q_n arises exactly once from an element of Q_{n-1} by
// inserting the adjacent pair "n n" into one of its 2n-1 gaps. Gaps are
// indexed left to right (gap g sits before position g), and children of a
// parent are emitted in gap order after the parent's own position in the
// order of Q_{n-1}. The resulting order is lexicographic in the gap
// sequence (g_2, ..., g_n) and is stable across versions.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stirling/numerics.hpp"
#include "stirling/permutation.hpp"

namespace stirling {

inline constexpr std::size_t kDefaultEnumerationCap = 9;

/// Thrown when a request exceeds a configured size limit.
class ResourceRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename Visitor>
void enumerate_from(std::vector<Value>& word, std::size_t len, Value k, Value n, Visitor& visit) {
    if (k > n) {
        visit(std::span<const Value>(word.data(), len));
        return;
    }
    // Place the pair at gap 0, then slide it right one gap at a time; each
    // slide is a three-element update instead of a full reinsertion.
    for (std::size_t i = len; i-- > 0;) word[i + 2] = word[i];
    word[0] = k;
    word[1] = k;
    for (std::size_t gap = 0;; ++gap) {
        enumerate_from(word, len + 2, static_cast<Value>(k + 1), n, visit);
        if (gap == len) break;
        // Move the pair one slot right: the element after it moves in front.
        word[gap] = word[gap + 2];
        word[gap + 2] = k;
    }
    // The pair now sits at positions len, len+1 and word[0, len) is the parent again.
}

}  // namespace detail

/// Calls visit(std::span<const Value>) for each word of Q_n in enumeration
/// order. The span is only valid during the call.
template <typename Visitor>
void for_each_word(std::size_t n, Visitor&& visit, std::size_t cap = kDefaultEnumerationCap) {
    if (n < 1) throw DomainError("enumeration requires n >= 1");
    if (n > cap) {
        throw ResourceRefusal("enumeration of Q_" + std::to_string(n) + " refused: limit is n <= " +
                              std::to_string(cap));
    }
    std::vector<Value> word(2 * n);
    word[0] = 1;
    word[1] = 1;
    detail::enumerate_from(word, 2, 2, static_cast<Value>(n), visit);
}

/// Streams validated permutations; see for_each_word for ordering.
template <typename Visitor>
void for_each_permutation(std::size_t n, Visitor&& visit, std::size_t cap = kDefaultEnumerationCap) {
    for_each_word(
        n,
        [&](std::span<const Value> w) {
            visit(PermutationBuilder::adopt(std::vector<Value>(w.begin(), w.end())));
        },
        cap);
}

/// Materializes Q_n. Intended for small n.
inline std::vector<StirlingPermutation> enumerate(std::size_t n, std::size_t cap = kDefaultEnumerationCap) {
    std::vector<StirlingPermutation> out;
    for_each_permutation(n, [&](StirlingPermutation q) { out.push_back(std::move(q)); }, cap);
    return out;
}

/// Row (C_{n,1}, ..., C_{n,n}) of a statistic, counted over all of Q_n.
inline std::vector<Integer> brute_force_triangle(std::size_t n, Statistic stat,
                                                 std::size_t cap = kDefaultEnumerationCap) {
    std::vector<unsigned long> counts(2 * n + 2, 0);
    for_each_word(n, [&](std::span<const Value> w) { ++counts[count_statistics(w).get(stat)]; }, cap);
    for (std::size_t i = n + 1; i < counts.size(); ++i) {
        if (counts[i] != 0) throw std::logic_error("statistic value above n encountered");
    }
    if (counts[0] != 0) throw std::logic_error("statistic value 0 encountered");
    std::vector<Integer> row;
    row.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) row.emplace_back(counts[i]);
    return row;
}

/// All three rows in one pass over Q_n, indexed by Statistic.
inline std::array<std::vector<Integer>, 3> brute_force_triangles(std::size_t n,
                                                                   std::size_t cap = kDefaultEnumerationCap) {
    std::array<std::vector<unsigned long>, 3> counts;
    for (auto& c : counts) c.assign(2 * n + 2, 0);
    for_each_word(
        n,
        [&](std::span<const Value> w) {
            StatCounts s = count_statistics(w);
            ++counts[0][s.ascents];
            ++counts[1][s.descents];
            ++counts[2][s.plateaux];
        },
        cap);
    std::array<std::vector<Integer>, 3> rows;
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t i = 1; i <= n; ++i) rows[k].emplace_back(counts[k][i]);
    }
    return rows;
}

}  // namespace stirling
