#pragma once

// The triangle C_{n,i} of Stirling permutations counted by descents (or
// plateaux, which satisfy the same recurrence), the descent polynomials
// C_n(x) = sum_i C_{n,i} x^i, and the location of their peak coefficients.

#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "stirling/numerics.hpp"
#include "stirling/permutation.hpp"

namespace stirling {

using TriangleRow = std::vector<Integer>;

/// Rows 1..n_max; rows()[n-1][i-1] = C_{n,i}.
class StatisticTriangle {
public:
    StatisticTriangle(Statistic label, std::vector<TriangleRow> rows) : label_(label), rows_(std::move(rows)) {}

    Statistic label() const { return label_; }
    std::size_t n_max() const { return rows_.size(); }
    const TriangleRow& row(std::size_t n) const {
        if (n < 1 || n > rows_.size()) throw DomainError("triangle row " + std::to_string(n) + " not available");
        return rows_[n - 1];
    }
    const std::vector<TriangleRow>& rows() const { return rows_; }

    friend bool operator==(const StatisticTriangle&, const StatisticTriangle&) = default;

private:
    Statistic label_;
    std::vector<TriangleRow> rows_;
};

/// Row n from row n-1: C_{n,i} = i C_{n-1,i} + (2n-i) C_{n-1,i-1}, with
/// out-of-range entries of the previous row read as zero.
inline TriangleRow next_triangle_row(const TriangleRow& prev, std::size_t n) {
    TriangleRow row(n);
    for (std::size_t i = 1; i <= n; ++i) {
        Integer& c = row[i - 1];
        if (i <= prev.size()) c = prev[i - 1] * static_cast<unsigned long>(i);
        if (i >= 2) mpz_addmul_ui(c.get_mpz_t(), prev[i - 2].get_mpz_t(), 2 * n - i);
    }
    return row;
}

inline StatisticTriangle triangle_by_recurrence(std::size_t n_max, Statistic label = Statistic::descents) {
    if (n_max < 1) throw DomainError("triangle requires n_max >= 1");
    std::vector<TriangleRow> rows;
    rows.reserve(n_max);
    rows.push_back({Integer(1)});
    for (std::size_t n = 2; n <= n_max; ++n) rows.push_back(next_triangle_row(rows.back(), n));
    return StatisticTriangle(label, std::move(rows));
}

/// Process-wide memo of triangle rows; grows to the largest n requested.
/// The three statistics share one triangle, so a single table serves all labels.
class TriangleMemo {
public:
    static TriangleMemo& instance() {
        static TriangleMemo memo;
        return memo;
    }

    TriangleRow row(std::size_t n) {
        if (n < 1) throw DomainError("triangle row index must be >= 1");
        std::lock_guard lock(mutex_);
        if (rows_.empty()) rows_.push_back({Integer(1)});
        while (rows_.size() < n) rows_.push_back(next_triangle_row(rows_.back(), rows_.size() + 1));
        return rows_[n - 1];
    }

    /// Installs rows from an external source (the CLI cache) when they extend
    /// what is held. Each row must have length n and sum to (2n-1)!!.
    void preload(std::vector<TriangleRow> rows) {
        if (rows.empty() || rows.front() != TriangleRow{Integer(1)}) throw DomainError("preloaded triangle must start with row [1]");
        for (std::size_t n = 1; n <= rows.size(); ++n) {
            Integer sum = 0;
            for (const auto& c : rows[n - 1]) sum += c;
            if (rows[n - 1].size() != n || sum != double_factorial(static_cast<long>(n))) {
                throw DomainError("preloaded triangle row " + std::to_string(n) + " is inconsistent");
            }
        }
        std::lock_guard lock(mutex_);
        if (rows.size() > rows_.size()) rows_ = std::move(rows);
    }

    std::vector<TriangleRow> snapshot() {
        std::lock_guard lock(mutex_);
        return rows_;
    }

private:
    std::mutex mutex_;
    std::vector<TriangleRow> rows_;
};

inline IntPolynomial polynomial_from_row(const TriangleRow& row) {
    std::vector<Integer> coeffs;
    coeffs.reserve(row.size() + 1);
    coeffs.emplace_back(0);
    coeffs.insert(coeffs.end(), row.begin(), row.end());
    return IntPolynomial(std::move(coeffs));
}

/// C_n(x) -> C_{n+1}(x) = (x - x^2) C_n'(x) + (2n+1) x C_n(x).
inline IntPolynomial next_descent_polynomial(const IntPolynomial& current, std::size_t next_n) {
    static const IntPolynomial x_minus_x2{0, 1, -1};
    IntPolynomial out = x_minus_x2 * current.derivative();
    out += current.shift_up(1) * Integer(static_cast<unsigned long>(2 * next_n - 1));
    return out;
}

/// C_1, ..., C_{n_max} built from C_1(x) = x by the derivative recurrence.
inline std::vector<IntPolynomial> descent_polynomials(std::size_t n_max) {
    if (n_max < 1) throw DomainError("descent polynomials require n >= 1");
    std::vector<IntPolynomial> out;
    out.reserve(n_max);
    out.push_back(IntPolynomial::x());
    for (std::size_t n = 2; n <= n_max; ++n) out.push_back(next_descent_polynomial(out.back(), n));
    return out;
}

inline IntPolynomial polynomial_by_derivative_recurrence(std::size_t n) { return descent_polynomials(n).back(); }

/// Checks C_n(x) = x (1-x)^{2n} d/dx[(1-x)^{1-2n} C_{n-1}(x)] with
/// denominators cleared:
///   C_n(x) (1-x)^{2n-2} = x [C_{n-1}'(x) D(x) - C_{n-1}(x) D'(x)],
/// where D = (1-x)^{2n-1} and the bracket is the quotient-rule numerator.
/// C_n and C_{n-1} come from the triangle recurrence, not from the
/// derivative recurrence.
inline bool wilf_form_check(std::size_t n) {
    if (n < 2) throw DomainError("wilf_form_check requires n >= 2");
    const TriangleRow prev_row = TriangleMemo::instance().row(n - 1);
    const IntPolynomial c_n = polynomial_from_row(TriangleMemo::instance().row(n));
    const IntPolynomial c_prev = polynomial_from_row(prev_row);
    const IntPolynomial one_minus_x{1, -1};
    const IntPolynomial d = one_minus_x.pow(static_cast<unsigned>(2 * n - 1));
    const IntPolynomial lhs = c_n * one_minus_x.pow(static_cast<unsigned>(2 * n - 2));
    const IntPolynomial numerator = c_prev.derivative() * d - c_prev * d.derivative();
    return lhs == numerator.shift_up(1);
}

struct ModeReport {
    std::size_t n = 0;
    /// A'(1)/A(1) for the row's generating polynomial.
    Rational mu;
    std::vector<std::size_t> argmax_indices;
    std::vector<std::size_t> darroch_candidates;
    /// Every argmax index m satisfies |mu - m| < 1.
    bool within_darroch_bound = false;
    /// argmax_indices is a subset of darroch_candidates.
    bool argmax_in_candidates = false;
};

inline ModeReport mode_of_row(std::size_t n, const TriangleRow& row) {
    ModeReport r;
    r.n = n;
    Integer total = 0;
    Integer weighted = 0;
    Integer best = 0;
    for (std::size_t i = 1; i <= row.size(); ++i) {
        const Integer& c = row[i - 1];
        total += c;
        mpz_addmul_ui(weighted.get_mpz_t(), c.get_mpz_t(), i);
        if (c > best) {
            best = c;
            r.argmax_indices.assign(1, i);
        } else if (c == best) {
            r.argmax_indices.push_back(i);
        }
    }
    if (total <= 0) throw DomainError("mode_of_row: row must have positive sum");
    r.mu = make_rational(weighted, total);

    const long num = 2 * static_cast<long>(n) + 1;
    if (num % 3 == 0) {
        r.darroch_candidates = {static_cast<std::size_t>(num / 3)};
    } else {
        r.darroch_candidates = {static_cast<std::size_t>(num / 3), static_cast<std::size_t>(num / 3 + 1)};
    }

    r.within_darroch_bound = true;
    r.argmax_in_candidates = true;
    for (std::size_t m : r.argmax_indices) {
        Rational gap = r.mu - Rational(static_cast<long>(m));
        if (abs(gap) >= 1) r.within_darroch_bound = false;
        bool found = false;
        for (std::size_t c : r.darroch_candidates) found = found || c == m;
        if (!found) r.argmax_in_candidates = false;
    }
    return r;
}

inline ModeReport locate_mode(std::size_t n) {
    if (n < 1) throw DomainError("locate_mode requires n >= 1");
    return mode_of_row(n, TriangleMemo::instance().row(n));
}

}  // namespace stirling
