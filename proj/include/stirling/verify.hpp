#pragma once

// Invariant suites behind the `verify` command. Each check reports a name,
// pass/fail and a short detail line; nothing throws on a failed check.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "stirling/distribution.hpp"
#include "stirling/enumerate.hpp"
#include "stirling/numerics.hpp"
#include "stirling/real_roots.hpp"
#include "stirling/sampler.hpp"
#include "stirling/triangle.hpp"

namespace stirling::verify {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Seeds used by the sampler suite; fixed so results are reproducible.
inline constexpr std::uint64_t kSamplerSeeds[] = {0x5EED0001ULL, 0x5EED0002ULL, 0x5EED0003ULL};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"triangle", "realroots", "interlace", "moments",
                                                "identities", "sampler",   "clt"};
    return names;
}

namespace detail {

inline CheckResult check(std::string suite, std::string name, const std::function<std::string()>& body) {
    CheckResult r{std::move(suite), std::move(name), false, {}};
    try {
        r.detail = body();
        r.passed = r.detail.empty();
        if (r.passed) r.detail = "ok";
    } catch (const std::exception& ex) {
        r.detail = std::string("exception: ") + ex.what();
    }
    return r;
}

inline std::string fail_at(const std::string& what, std::size_t n) { return what + " fails at n = " + std::to_string(n); }

}  // namespace detail

inline std::vector<CheckResult> triangle_suite(bool quick) {
    const std::size_t exact_max = quick ? 60 : 200;
    const std::size_t brute_max = quick ? 6 : 7;
    const std::size_t enum_max = quick ? 7 : 8;
    std::vector<CheckResult> out;
    out.push_back(detail::check("triangle", "row sums equal (2n-1)!!", [&]() -> std::string {
        const auto t = triangle_by_recurrence(exact_max);
        for (std::size_t n = 1; n <= exact_max; ++n) {
            Integer sum = 0;
            for (const auto& c : t.row(n)) sum += c;
            if (sum != double_factorial(static_cast<long>(n))) return detail::fail_at("row sum", n);
        }
        return {};
    }));
    out.push_back(detail::check("triangle", "|Q_n| equals (2n-1)!!", [&]() -> std::string {
        for (std::size_t n = 1; n <= enum_max; ++n) {
            unsigned long count = 0;
            for_each_word(n, [&](std::span<const Value>) { ++count; });
            if (Integer(count) != double_factorial(static_cast<long>(n))) return detail::fail_at("enumeration count", n);
        }
        return {};
    }));
    out.push_back(detail::check("triangle", "recurrences agree with enumeration", [&]() -> std::string {
        const auto t = triangle_by_recurrence(brute_max);
        const auto polys = descent_polynomials(brute_max);
        for (std::size_t n = 1; n <= brute_max; ++n) {
            const auto rows = brute_force_triangles(n);
            for (const auto& r : rows) {
                if (r != t.row(n)) return detail::fail_at("recurrence vs enumeration", n);
            }
            if (polys[n - 1] != polynomial_from_row(t.row(n))) return detail::fail_at("derivative recurrence", n);
        }
        return {};
    }));
    out.push_back(detail::check("triangle", "derivative recurrence matches triangle", [&]() -> std::string {
        const auto t = triangle_by_recurrence(exact_max);
        const auto polys = descent_polynomials(exact_max);
        for (std::size_t n = 1; n <= exact_max; ++n) {
            if (polys[n - 1] != polynomial_from_row(t.row(n))) return detail::fail_at("coefficient match", n);
            if (polys[n - 1].eval(1) != Rational(double_factorial(static_cast<long>(n)))) {
                return detail::fail_at("C_n(1) = (2n-1)!!", n);
            }
            if (polys[n - 1].derivative().eval(1) / polys[n - 1].eval(1) != mean_closed_form(n)) {
                return detail::fail_at("C_n'(1)/C_n(1) = (2n+1)/3", n);
            }
        }
        return {};
    }));
    out.push_back(detail::check("triangle", "cleared-denominator derivative form", [&]() -> std::string {
        for (std::size_t n = 2; n <= (quick ? 30 : 60); ++n) {
            if (!wilf_form_check(n)) return detail::fail_at("identity", n);
        }
        return {};
    }));
    out.push_back(detail::check("triangle", "mode within distance 1 of (2n+1)/3", [&]() -> std::string {
        for (std::size_t n = 1; n <= exact_max; ++n) {
            const ModeReport m = locate_mode(n);
            if (!m.within_darroch_bound || !m.argmax_in_candidates) return detail::fail_at("mode", n);
            if ((2 * n + 1) % 3 == 0 && m.argmax_indices.size() != 1) return detail::fail_at("single peak", n);
        }
        return {};
    }));
    return out;
}

inline std::vector<CheckResult> realroots_suite(bool quick) {
    const std::size_t n_max = quick ? 25 : 60;
    return {detail::check("realroots", "C_n has n distinct real non-positive roots", [&]() -> std::string {
        for (std::size_t n = 1; n <= n_max; ++n) {
            const auto cert = certify_real_roots(n);
            if (!cert.verified) return detail::fail_at(cert.failure, n);
        }
        return {};
    })};
}

inline std::vector<CheckResult> interlace_suite(bool quick) {
    const std::size_t n_max = quick ? 15 : 30;
    return {detail::check("interlace", "roots of C_{n-1}/x and C_n/x interlace", [&]() -> std::string {
        for (std::size_t n = 2; n <= n_max; ++n) {
            const auto cert = interlace_certificate(n);
            if (!cert.verified) return detail::fail_at(cert.failure, n);
        }
        return {};
    })};
}

inline std::vector<CheckResult> moments_suite(bool quick) {
    const std::size_t n_max = quick ? 200 : 1000;
    const std::size_t brute_max = quick ? 6 : 7;
    std::vector<CheckResult> out;
    out.push_back(detail::check("moments", "second-moment recurrence equals closed form", [&]() -> std::string {
        const auto s = second_moment_by_recurrence(n_max);
        for (std::size_t n = 1; n <= n_max; ++n) {
            if (s[n - 1] != second_moment_closed_form(n)) return detail::fail_at("s_n", n);
            if (s[n - 1] - mean_closed_form(n) * mean_closed_form(n) != variance_closed_form(n)) {
                return detail::fail_at("variance", n);
            }
        }
        return {};
    }));
    out.push_back(detail::check("moments", "enumerated moments equal closed forms", [&]() -> std::string {
        for (std::size_t n = 1; n <= brute_max; ++n) {
            auto [mean, second] = moments_brute_force(n);
            if (mean != mean_closed_form(n) || second != second_moment_closed_form(n)) return detail::fail_at("moments", n);
        }
        return {};
    }));
    out.push_back(detail::check("moments", "variance increases and exceeds n/10", [&]() -> std::string {
        for (std::size_t n = 2; n <= n_max; ++n) {
            if (n >= 3 && !(variance_closed_form(n) > variance_closed_form(n - 1))) return detail::fail_at("monotonicity", n);
            if (n >= 10 && !(variance_closed_form(n) > make_rational(static_cast<long>(n), 10))) {
                return detail::fail_at("growth", n);
            }
        }
        return {};
    }));
    return out;
}

inline std::vector<CheckResult> identities_suite(bool quick) {
    const std::size_t pair_max = quick ? 5 : 6;
    const std::size_t sum_max = quick ? 100 : 500;
    std::vector<CheckResult> out;
    out.push_back(detail::check("identities", "plateau indicator step identities", [&]() -> std::string {
        for (std::size_t n = 1; n <= pair_max; ++n) {
            const auto r = indicator_pair_step_checks(n);
            if (!r.ok()) return detail::fail_at(r.failure, n);
        }
        return {};
    }));
    out.push_back(detail::check("identities", "product formula matches enumeration", [&]() -> std::string {
        for (std::size_t n = 1; n <= pair_max; ++n) {
            const auto counts = indicator_counts(n);
            for (std::size_t i = 1; i <= n; ++i) {
                if (counts.expect(i) != plateau_probability(n, i)) return detail::fail_at("E(Y_{n,i})", n);
            }
        }
        return {};
    }));
    out.push_back(detail::check("identities", "sum of products equals (2n+1)/3", [&]() -> std::string {
        for (std::size_t n = 1; n <= sum_max; ++n) {
            if (!sum_identity_check(n)) return detail::fail_at("sum identity", n);
        }
        return {};
    }));
    return out;
}

inline std::vector<CheckResult> sampler_suite(bool quick) {
    const std::size_t samples = quick ? 30000 : 150000;
    std::vector<CheckResult> out;
    for (std::uint64_t seed : kSamplerSeeds) {
        out.push_back(detail::check("sampler", "chi-square uniformity on Q_3, seed " + std::to_string(seed),
                                    [&]() -> std::string {
                                        auto all = enumerate(3);
                                        std::sort(all.begin(), all.end());
                                        std::vector<std::uint64_t> counts(all.size(), 0);
                                        SplitMix64 rng(seed);
                                        for (std::size_t s = 0; s < samples; ++s) {
                                            const auto q = sample_uniform(3, rng);
                                            auto it = std::lower_bound(all.begin(), all.end(), q);
                                            if (it == all.end() || *it != q) return "sample outside Q_3";
                                            ++counts[static_cast<std::size_t>(it - all.begin())];
                                        }
                                        const auto chi = chi_square_uniform(counts);
                                        if (chi.p_value <= 0.001) {
                                            return "p = " + std::to_string(chi.p_value) + " <= 0.001";
                                        }
                                        return {};
                                    }));
    }
    return out;
}

inline std::vector<CheckResult> clt_suite(bool quick) {
    std::vector<CheckResult> out;
    out.push_back(detail::check("clt", "exact KS distance decreases in n", [&]() -> std::string {
        const std::vector<std::size_t> ns = quick ? std::vector<std::size_t>{10, 20, 50}
                                                  : std::vector<std::size_t>{10, 20, 50, 100, 200};
        double prev = 1.0;
        for (std::size_t n : ns) {
            const double d = ks_distance_exact(n);
            if (!(d < prev)) return detail::fail_at("strict decrease", n);
            prev = d;
        }
        return {};
    }));
    out.push_back(detail::check("clt", "variance diverges", [&]() -> std::string {
        for (std::size_t n = 3; n <= (quick ? 200 : 1000); ++n) {
            if (!(variance_closed_form(n) > variance_closed_form(n - 1))) return detail::fail_at("monotonicity", n);
        }
        return {};
    }));
    return out;
}

/// Runs one suite by name, or all of them for "all". Unknown names throw.
inline std::vector<CheckResult> run_suite(const std::string& name, bool quick) {
    if (name == "all") {
        std::vector<CheckResult> out;
        for (const auto& s : suite_names()) {
            auto part = run_suite(s, quick);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    if (name == "triangle") return triangle_suite(quick);
    if (name == "realroots") return realroots_suite(quick);
    if (name == "interlace") return interlace_suite(quick);
    if (name == "moments") return moments_suite(quick);
    if (name == "identities") return identities_suite(quick);
    if (name == "sampler") return sampler_suite(quick);
    if (name == "clt") return clt_suite(quick);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace stirling::verify
