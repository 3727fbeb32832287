#pragma once

// Stirling permutations: words over {1,1,2,2,...,n,n} in which every entry
// between the two copies of i is larger than i.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stirling/numerics.hpp"

namespace stirling {

using Value = std::uint32_t;

enum class Statistic { ascents, descents, plateaux };

inline std::string_view to_string(Statistic s) {
    switch (s) {
        case Statistic::ascents: return "ascents";
        case Statistic::descents: return "descents";
        case Statistic::plateaux: return "plateaux";
    }
    return "?";
}

inline std::optional<Statistic> parse_statistic(std::string_view s) {
    if (s == "ascents") return Statistic::ascents;
    if (s == "descents") return Statistic::descents;
    if (s == "plateaux" || s == "plateaus") return Statistic::plateaux;
    return std::nullopt;
}

/// Ascent, descent and plateau counts over the indices 0..2n, where index 0
/// is always an ascent and index 2n is always a descent.
struct StatCounts {
    std::size_t ascents = 0;
    std::size_t descents = 0;
    std::size_t plateaux = 0;

    std::size_t get(Statistic s) const {
        switch (s) {
            case Statistic::ascents: return ascents;
            case Statistic::descents: return descents;
            case Statistic::plateaux: return plateaux;
        }
        return 0;
    }
    friend bool operator==(const StatCounts&, const StatCounts&) = default;
};

/// Counts statistics of any word under the boundary convention above.
inline StatCounts count_statistics(std::span<const Value> word) {
    StatCounts c{1, 1, 0};
    for (std::size_t i = 1; i < word.size(); ++i) {
        if (word[i - 1] < word[i]) {
            ++c.ascents;
        } else if (word[i - 1] > word[i]) {
            ++c.descents;
        } else {
            ++c.plateaux;
        }
    }
    return c;
}

enum class RejectionKind { wrong_length, multiset_mismatch, nesting_violation };

struct Rejection {
    RejectionKind kind;
    /// The offending value for multiset and nesting failures; 0 otherwise.
    Value value = 0;
    std::string message;
};

class StirlingPermutation;
using ValidationResult = std::variant<StirlingPermutation, Rejection>;

/// Thrown by StirlingPermutation::from_word / parse when the word is invalid.
class InvalidPermutation : public std::invalid_argument {
public:
    explicit InvalidPermutation(Rejection r) : std::invalid_argument(r.message), rejection_(std::move(r)) {}
    const Rejection& rejection() const { return rejection_; }

private:
    Rejection rejection_;
};

/// A validated element of Q_n. Immutable.
class StirlingPermutation {
public:
    std::size_t order() const { return word_.size() / 2; }
    std::span<const Value> word() const { return word_; }
    Value operator[](std::size_t i) const { return word_[i]; }

    StatCounts statistics() const { return count_statistics(word_); }

    /// Word read backwards; again a Stirling permutation.
    StirlingPermutation reversed() const { return StirlingPermutation(std::vector<Value>(word_.rbegin(), word_.rend())); }

    static ValidationResult validate(std::size_t order, std::vector<Value> word);

    static StirlingPermutation from_word(std::size_t order, std::vector<Value> word);

    /// Reads the text form: plain digits for n <= 9, comma separated otherwise.
    /// Commas are accepted for any n.
    static StirlingPermutation parse(std::size_t order, std::string_view text);

    std::string to_string() const {
        std::string out;
        const bool commas = order() >= 10;
        for (std::size_t i = 0; i < word_.size(); ++i) {
            if (commas && i > 0) out += ',';
            out += std::to_string(word_[i]);
        }
        return out;
    }

    friend bool operator==(const StirlingPermutation&, const StirlingPermutation&) = default;
    friend auto operator<=>(const StirlingPermutation&, const StirlingPermutation&) = default;

private:
    friend class PermutationBuilder;

    explicit StirlingPermutation(std::vector<Value> word) : word_(std::move(word)) {}

    std::vector<Value> word_;
};

/// Grants internal code a way to wrap words it has built correctly by construction.
class PermutationBuilder {
public:
    static StirlingPermutation adopt(std::vector<Value> word) { return StirlingPermutation(std::move(word)); }
};

inline ValidationResult StirlingPermutation::validate(std::size_t order, std::vector<Value> word) {
    if (order == 0 || word.size() != 2 * order) {
        return Rejection{RejectionKind::wrong_length, 0,
                         "expected a word of length " + std::to_string(2 * order) + ", got " +
                             std::to_string(word.size())};
    }
    std::vector<std::size_t> first(order + 1, SIZE_MAX);
    std::vector<std::size_t> second(order + 1, SIZE_MAX);
    for (std::size_t pos = 0; pos < word.size(); ++pos) {
        Value v = word[pos];
        if (v < 1 || v > order) {
            return Rejection{RejectionKind::multiset_mismatch, v,
                             "value " + std::to_string(v) + " outside 1.." + std::to_string(order)};
        }
        if (first[v] == SIZE_MAX) {
            first[v] = pos;
        } else if (second[v] == SIZE_MAX) {
            second[v] = pos;
        } else {
            return Rejection{RejectionKind::multiset_mismatch, v,
                             "value " + std::to_string(v) + " occurs more than twice"};
        }
    }
    for (Value v = 1; v <= order; ++v) {
        if (second[v] == SIZE_MAX) {
            return Rejection{RejectionKind::multiset_mismatch, v,
                             "value " + std::to_string(v) + " does not occur exactly twice"};
        }
    }
    for (Value v = 1; v <= order; ++v) {
        for (std::size_t pos = first[v] + 1; pos < second[v]; ++pos) {
            if (word[pos] <= v) {
                return Rejection{RejectionKind::nesting_violation, v,
                                 "entry " + std::to_string(word[pos]) + " between the two copies of " +
                                     std::to_string(v) + " is not larger than " + std::to_string(v)};
            }
        }
    }
    return StirlingPermutation(std::move(word));
}

inline StirlingPermutation StirlingPermutation::from_word(std::size_t order, std::vector<Value> word) {
    auto result = validate(order, std::move(word));
    if (auto* rej = std::get_if<Rejection>(&result)) throw InvalidPermutation(std::move(*rej));
    return std::get<StirlingPermutation>(std::move(result));
}

inline std::vector<Value> parse_word(std::string_view text) {
    std::vector<Value> word;
    const bool commas = text.find(',') != std::string_view::npos;
    auto bad = [&] {
        return InvalidPermutation(Rejection{RejectionKind::wrong_length, 0, "malformed permutation text '" + std::string(text) + "'"});
    };
    if (!commas) {
        for (char ch : text) {
            if (ch < '0' || ch > '9') throw bad();
            word.push_back(static_cast<Value>(ch - '0'));
        }
        return word;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view tok = text.substr(start, end - start);
        if (tok.empty() || tok.size() > 9) throw bad();
        Value v = 0;
        for (char ch : tok) {
            if (ch < '0' || ch > '9') throw bad();
            v = v * 10 + static_cast<Value>(ch - '0');
        }
        word.push_back(v);
        start = end + 1;
    }
    return word;
}

inline StirlingPermutation StirlingPermutation::parse(std::size_t order, std::string_view text) {
    return from_word(order, parse_word(text));
}

inline StatCounts statistics(const StirlingPermutation& q) { return q.statistics(); }

}  // namespace stirling
