#pragma once

// Exact moments of the plateau statistic Y_n on Q_n, the plateau indicator
// identities, and the distance of the standardized statistic from N(0, 1).
//
// Plateaux, descents and ascents share one triangle, so everything here
// applies to all three statistics.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "stirling/enumerate.hpp"
#include "stirling/numerics.hpp"
#include "stirling/random.hpp"
#include "stirling/sampler.hpp"
#include "stirling/triangle.hpp"

namespace stirling {

struct Moments {
    std::size_t n = 0;
    Rational mean;
    Rational second_moment;
    Rational variance;
    /// sqrt(variance); display only.
    double sigma = 0.0;
};

inline Rational mean_closed_form(std::size_t n) { return make_rational(2 * static_cast<long>(n) + 1, 3); }

/// s_n = E(Y_n^2) = (8n^3 + 6n^2 - 2n - 3) / (18n - 9).
inline Rational second_moment_closed_form(std::size_t n) {
    const Integer m(static_cast<unsigned long>(n));
    return make_rational(8 * m * m * m + 6 * m * m - 2 * m - 3, 18 * m - 9);
}

/// Var(Y_n) = (2n^2 - 2) / (18n - 9).
inline Rational variance_closed_form(std::size_t n) {
    const Integer m(static_cast<unsigned long>(n));
    return make_rational(2 * m * m - 2, 18 * m - 9);
}

inline Moments moments_exact(std::size_t n) {
    if (n < 1) throw DomainError("moments require n >= 1");
    Moments m;
    m.n = n;
    m.mean = mean_closed_form(n);
    m.second_moment = second_moment_closed_form(n);
    m.variance = m.second_moment - m.mean * m.mean;
    if (m.variance != variance_closed_form(n)) throw std::logic_error("variance closed forms disagree");
    m.sigma = std::sqrt(to_double(m.variance));
    return m;
}

/// s_1, ..., s_{n_max} from s_1 = 1 and s_{n+1} = (2n-1)/(2n+1) s_n + (4n+4)/3.
inline std::vector<Rational> second_moment_by_recurrence(std::size_t n_max) {
    if (n_max < 1) throw DomainError("second_moment_by_recurrence requires n_max >= 1");
    std::vector<Rational> s{Rational(1)};
    s.reserve(n_max);
    for (std::size_t n = 1; n < n_max; ++n) {
        const long k = static_cast<long>(n);
        s.push_back(make_rational(2 * k - 1, 2 * k + 1) * s.back() + make_rational(4 * k + 4, 3));
    }
    return s;
}

/// Mean and second moment of a statistic by enumerating Q_n.
inline std::pair<Rational, Rational> moments_brute_force(std::size_t n, Statistic stat = Statistic::plateaux,
                                                         std::size_t cap = kDefaultEnumerationCap) {
    std::uint64_t c = 0, s1 = 0, s2 = 0;
    for_each_word(
        n,
        [&](std::span<const Value> w) {
            const std::uint64_t y = count_statistics(w).get(stat);
            ++c;
            s1 += y;
            s2 += y * y;
        },
        cap);
    const Integer count(static_cast<unsigned long>(c));
    const Integer sum(static_cast<unsigned long>(s1));
    const Integer sum_sq(static_cast<unsigned long>(s2));
    return {make_rational(sum, count), make_rational(sum_sq, count)};
}

/// Y_{n,i} for i = 1..n: out[i] = 1 iff the two copies of i are adjacent.
/// out[0] is unused.
inline void plateau_indicators(std::span<const Value> word, std::vector<unsigned char>& out) {
    std::fill(out.begin(), out.end(), 0);
    for (std::size_t p = 1; p < word.size(); ++p) {
        if (word[p - 1] == word[p]) out[word[p]] = 1;
    }
}

/// Counts over Q_n of Y_{n,i} = 1 and of Y_{n,i} Y_{n,j} = 1, in one pass.
struct IndicatorCounts {
    std::size_t n = 0;
    Integer total;
    std::vector<Integer> single;               // [i], 1-based
    std::vector<std::vector<Integer>> pair;    // [i][j], 1-based

    Rational expect(std::size_t i) const { return make_rational(single.at(i), total); }
    Rational expect(std::size_t i, std::size_t j) const { return make_rational(pair.at(i).at(j), total); }
};

inline IndicatorCounts indicator_counts(std::size_t n, std::size_t cap = kDefaultEnumerationCap) {
    std::vector<std::uint64_t> single(n + 1, 0);
    std::vector<std::uint64_t> pair((n + 1) * (n + 1), 0);
    std::vector<unsigned char> y(n + 1);
    std::vector<std::size_t> on;
    std::uint64_t total = 0;
    for_each_word(
        n,
        [&](std::span<const Value> w) {
            ++total;
            plateau_indicators(w, y);
            on.clear();
            for (std::size_t i = 1; i <= n; ++i) {
                if (y[i]) on.push_back(i);
            }
            for (std::size_t i : on) {
                ++single[i];
                for (std::size_t j : on) ++pair[i * (n + 1) + j];
            }
        },
        cap);
    IndicatorCounts out;
    out.n = n;
    out.total = Integer(static_cast<unsigned long>(total));
    out.single.resize(n + 1);
    out.pair.assign(n + 1, std::vector<Integer>(n + 1));
    for (std::size_t i = 0; i <= n; ++i) {
        out.single[i] = Integer(static_cast<unsigned long>(single[i]));
        for (std::size_t j = 0; j <= n; ++j) out.pair[i][j] = Integer(static_cast<unsigned long>(pair[i * (n + 1) + j]));
    }
    return out;
}

struct IndicatorCheckReport {
    std::size_t n = 0;
    bool pairs_scale = false;       // E(Y_{n+1,i}Y_{n+1,j}) = (2n-1)/(2n+1) E(Y_{n,i}Y_{n,j}), i != j <= n
    bool singles_scale = false;     // E(Y_{n+1,i}) = 2n/(2n+1) E(Y_{n,i}), i <= n
    bool top_pair_absorbs = false;  // E(Y_{n+1,i}Y_{n+1,n+1}) = E(Y_{n+1,i}), i <= n+1
    std::string failure;

    bool ok() const { return pairs_scale && singles_scale && top_pair_absorbs; }
};

/// Verifies the three one-step identities for the plateau indicators by
/// enumerating Q_n and Q_{n+1}.
inline IndicatorCheckReport indicator_pair_step_checks(std::size_t n, std::size_t cap = kDefaultEnumerationCap) {
    if (n < 1) throw DomainError("indicator checks require n >= 1");
    const IndicatorCounts cur = indicator_counts(n, cap);
    const IndicatorCounts next = indicator_counts(n + 1, cap);
    IndicatorCheckReport r;
    r.n = n;
    r.pairs_scale = r.singles_scale = r.top_pair_absorbs = true;
    const long k = static_cast<long>(n);
    const Rational pair_factor = make_rational(2 * k - 1, 2 * k + 1);
    const Rational single_factor = make_rational(2 * k, 2 * k + 1);
    auto note = [&](const std::string& what) {
        if (r.failure.empty()) r.failure = what;
    };
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            if (i == j) continue;
            if (next.expect(i, j) != pair_factor * cur.expect(i, j)) {
                r.pairs_scale = false;
                note("pair identity fails at (i, j) = (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
        if (next.expect(i) != single_factor * cur.expect(i)) {
            r.singles_scale = false;
            note("single identity fails at i = " + std::to_string(i));
        }
    }
    for (std::size_t i = 1; i <= n + 1; ++i) {
        if (next.expect(i, n + 1) != next.expect(i)) {
            r.top_pair_absorbs = false;
            note("top-pair identity fails at i = " + std::to_string(i));
        }
    }
    if (next.expect(n + 1) != 1) {
        r.top_pair_absorbs = false;
        note("E(Y_{n+1,n+1}) != 1");
    }
    return r;
}

/// E(Y_{n,i}) = prod_{j=1}^{n-i} (2n-2j)/(2n-2j+1); 1 for i = n.
inline Rational plateau_probability(std::size_t n, std::size_t i) {
    if (i < 1 || i > n) throw DomainError("plateau_probability requires 1 <= i <= n");
    Integer num = 1;
    Integer den = 1;
    for (std::size_t j = 1; j <= n - i; ++j) {
        num *= static_cast<unsigned long>(2 * n - 2 * j);
        den *= static_cast<unsigned long>(2 * n - 2 * j + 1);
    }
    return make_rational(num, den);
}

/// sum_{i=0}^{n-1} prod_{j=1}^{i} (2n-2j)/(2n-2j+1) == (2n+1)/3, exactly.
inline bool sum_identity_check(std::size_t n) {
    if (n < 1) throw DomainError("sum_identity_check requires n >= 1");
    Rational term = 1;
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) term *= make_rational(static_cast<long>(2 * n - 2 * i), static_cast<long>(2 * n - 2 * i + 1));
        sum += term;
    }
    return sum == mean_closed_form(n);
}

/// Bender's triangular array normalized: p_n(k) = C_{n,k} / (2n-1)!!.
struct NormalizedDistribution {
    std::size_t n = 0;
    std::vector<Rational> pmf;  // pmf[k-1] = p_n(k)
    Rational mean;
    Rational variance;
    /// (k - mean) / sigma for k = 1..n.
    std::vector<double> standardized_support;
};

inline NormalizedDistribution normalized_distribution(std::size_t n) {
    if (n < 2) throw DomainError("normalized_distribution requires n >= 2 (Q_1 is a point mass)");
    const TriangleRow row = TriangleMemo::instance().row(n);
    NormalizedDistribution d;
    d.n = n;
    Integer total = 0;
    for (const auto& c : row) total += c;
    for (const auto& c : row) d.pmf.push_back(make_rational(c, total));
    d.mean = mean_closed_form(n);
    d.variance = variance_closed_form(n);
    const double sigma = std::sqrt(to_double(d.variance));
    for (std::size_t k = 1; k <= n; ++k) {
        d.standardized_support.push_back(to_double(Rational(static_cast<long>(k)) - d.mean) / sigma);
    }
    return d;
}

/// Standard normal CDF, Phi(x) = erfc(-x / sqrt 2) / 2. The C library erfc
/// is accurate to a few ulp, far inside 1e-12 absolute.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

/// sup_t |F(t) - Phi(t)| for a step CDF with atoms at sorted points.
/// cdf_after[k] = F(points[k]); F just below points[k] is cdf_after[k-1].
inline double ks_distance_steps(std::span<const double> points, std::span<const double> cdf_after) {
    double d = 0.0;
    double before = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const double phi = normal_cdf(points[k]);
        d = std::max({d, std::abs(before - phi), std::abs(cdf_after[k] - phi)});
        before = cdf_after[k];
    }
    return d;
}

/// KS distance between the exact standardized statistic on Q_n and N(0, 1).
/// Cumulative probabilities are summed exactly before conversion.
inline double ks_distance_exact(std::size_t n) {
    const NormalizedDistribution d = normalized_distribution(n);
    std::vector<double> cdf;
    cdf.reserve(n);
    Rational cum = 0;
    for (const auto& p : d.pmf) {
        cum += p;
        cdf.push_back(to_double(cum));
    }
    return ks_distance_steps(d.standardized_support, cdf);
}

/// Plateau-count histogram of `samples` uniform draws from Q_n.
///
/// Samples are drawn in blocks of kSampleBlock; block b uses the stream
/// SplitMix64(derive_seed(seed, b)). The histogram does not depend on the
/// number of workers.
inline constexpr std::size_t kSampleBlock = 4096;

inline std::vector<std::uint64_t> sample_plateau_histogram(std::size_t n, std::size_t samples, std::uint64_t seed,
                                                           unsigned workers = 0) {
    if (n < 1) throw DomainError("sampling requires n >= 1");
    const std::size_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
    if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(blocks, 1)));
    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(n + 1, 0));
    auto run = [&](unsigned w) {
        for (std::size_t b = w; b < blocks; b += workers) {
            SplitMix64 rng(derive_seed(seed, b));
            const std::size_t count = std::min(kSampleBlock, samples - b * kSampleBlock);
            for (std::size_t s = 0; s < count; ++s) {
                const auto word = word_from_gaps(n, sample_gaps(n, rng));
                ++partial[w][count_statistics(word).plateaux];
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    std::vector<std::uint64_t> hist(n + 1, 0);
    for (const auto& p : partial) {
        for (std::size_t i = 0; i <= n; ++i) hist[i] += p[i];
    }
    return hist;
}

/// KS distance between the empirical standardized plateau count of Monte
/// Carlo samples and N(0, 1). Standardizes with the exact mean and variance.
inline double ks_distance_empirical(std::size_t n, std::size_t samples, std::uint64_t seed, unsigned workers = 0) {
    if (samples < 1) throw DomainError("ks_distance_empirical requires at least one sample");
    if (n < 2) throw DomainError("ks_distance_empirical requires n >= 2 (Q_1 is a point mass)");
    const auto hist = sample_plateau_histogram(n, samples, seed, workers);
    const Rational mean = mean_closed_form(n);
    const double sigma = std::sqrt(to_double(variance_closed_form(n)));
    std::vector<double> points;
    std::vector<double> cdf;
    std::uint64_t cum = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        if (hist[k] == 0) continue;
        cum += hist[k];
        points.push_back(to_double(Rational(static_cast<long>(k)) - mean) / sigma);
        cdf.push_back(static_cast<double>(cum) / static_cast<double>(samples));
    }
    return ks_distance_steps(points, cdf);
}

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t degrees_of_freedom = 0;
    double p_value = 0.0;
};

/// Pearson goodness-of-fit against the uniform distribution on the bins.
inline ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> observed) {
    if (observed.size() < 2) throw DomainError("chi-square test needs at least two bins");
    double total = 0.0;
    for (auto o : observed) total += static_cast<double>(o);
    const double expected = total / static_cast<double>(observed.size());
    ChiSquareResult r;
    for (auto o : observed) {
        const double diff = static_cast<double>(o) - expected;
        r.statistic += diff * diff / expected;
    }
    r.degrees_of_freedom = observed.size() - 1;
    r.p_value = boost::math::gamma_q(static_cast<double>(r.degrees_of_freedom) / 2.0, r.statistic / 2.0);
    return r;
}

}  // namespace stirling
