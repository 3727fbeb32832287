#pragma once

// Exact certification that C_n(x) has n distinct real non-positive roots,
// isolating intervals for them, and strict interlacing of the reduced
// polynomials B_{n-1} = C_{n-1}/x and B_n = C_n/x.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stirling/numerics.hpp"
#include "stirling/sturm.hpp"
#include "stirling/triangle.hpp"

namespace stirling {

/// Half-open rational interval (lo, hi].
struct RootInterval {
    Rational lo;
    Rational hi;
    friend bool operator==(const RootInterval&, const RootInterval&) = default;
};

/// Smallest power of two >= 1 + max_{i<d} |a_i| / |a_d| (Cauchy's bound).
inline Rational cauchy_root_bound(const IntPolynomial& p) {
    if (p.is_zero()) throw DomainError("root bound of the zero polynomial");
    Rational best = 0;
    const Integer lead = abs(p.leading());
    auto cs = p.coeffs();
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
        Rational r = make_rational(abs(cs[i]), lead);
        if (r > best) best = r;
    }
    Rational bound = best + 1;
    Integer pow2 = 1;
    while (Rational(pow2) < bound) pow2 *= 2;
    return Rational(pow2);
}

/// Splits (lo, hi] until every piece holds exactly one root of the chain's
/// polynomial. Output is sorted left to right.
inline std::vector<RootInterval> isolate_roots(const SturmChain& chain, const Rational& lo, const Rational& hi) {
    struct Piece {
        Rational lo, hi;
        std::size_t vlo, vhi;
    };
    std::vector<RootInterval> out;
    std::vector<Piece> stack{{lo, hi, chain.variations(lo), chain.variations(hi)}};
    while (!stack.empty()) {
        Piece piece = std::move(stack.back());
        stack.pop_back();
        const std::size_t roots = piece.vlo - piece.vhi;
        if (roots == 0) continue;
        if (roots == 1) {
            out.push_back({piece.lo, piece.hi});
            continue;
        }
        Rational mid = (piece.lo + piece.hi) / 2;
        std::size_t vmid = chain.variations(mid);
        // Right half first so the left half is processed next (sorted output).
        stack.push_back({mid, piece.hi, vmid, piece.vhi});
        stack.push_back({piece.lo, mid, piece.vlo, vmid});
    }
    return out;
}

/// Bisects an isolating interval until its width is at most `width`,
/// keeping the half that holds the root.
inline RootInterval refine_interval(const SturmChain& chain, RootInterval iv, const Rational& width) {
    if (width <= 0) throw DomainError("refinement width must be positive");
    while (iv.hi - iv.lo > width) {
        Rational mid = (iv.lo + iv.hi) / 2;
        if (chain.count_roots(iv.lo, mid) == 1) {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    return iv;
}

struct RealRootCertificate {
    std::size_t n = 0;
    std::size_t distinct_real_root_count = 0;
    std::size_t positive_root_count = 0;
    bool squarefree = false;
    bool all_nonpositive = false;
    Rational root_bound;
    std::vector<RootInterval> isolating_intervals;
    bool verified = false;
    /// Empty when verified; otherwise names the failed condition.
    std::string failure;
};

/// Certificate for an arbitrary polynomial expected to have `expected_roots`
/// distinct real roots, all <= 0.
inline RealRootCertificate certify_nonpositive_real_roots(const IntPolynomial& p, std::size_t expected_roots,
                                                          std::size_t label_n) {
    RealRootCertificate cert;
    cert.n = label_n;
    const SturmChain chain(p);
    cert.squarefree = chain.squarefree();
    cert.distinct_real_root_count = chain.count_roots(Bound::neg_inf(), Bound::pos_inf());
    cert.positive_root_count = chain.count_roots(Bound(0), Bound::pos_inf());
    cert.all_nonpositive = cert.positive_root_count == 0;
    cert.root_bound = cauchy_root_bound(p);

    auto fail = [&](std::string why) {
        cert.verified = false;
        cert.failure = std::move(why);
        return cert;
    };
    if (!cert.squarefree) return fail("polynomial has a repeated root");
    if (cert.distinct_real_root_count != expected_roots) {
        return fail("expected " + std::to_string(expected_roots) + " distinct real roots, Sturm count is " +
                    std::to_string(cert.distinct_real_root_count));
    }
    if (!cert.all_nonpositive) return fail(std::to_string(cert.positive_root_count) + " positive root(s)");
    const Rational lo = -cert.root_bound;
    if (chain.count_roots(Bound::neg_inf(), Bound(lo)) != 0) return fail("root bound does not bracket all roots");

    cert.isolating_intervals = isolate_roots(chain, lo, Rational(0));
    if (cert.isolating_intervals.size() != expected_roots) {
        return fail("isolation produced " + std::to_string(cert.isolating_intervals.size()) + " intervals");
    }
    cert.verified = true;
    return cert;
}

/// Certifies that C_n(x) has n distinct, real, non-positive roots.
inline RealRootCertificate certify_real_roots(std::size_t n) {
    if (n < 1) throw DomainError("certify_real_roots requires n >= 1");
    return certify_nonpositive_real_roots(polynomial_from_row(TriangleMemo::instance().row(n)), n, n);
}

struct InterlaceWitness {
    /// Isolating interval of one root r of B_{n-1}, free of roots of B_n.
    RootInterval interval;
    /// Sign of B_n at r (constant on the interval).
    int sign = 0;
};

struct InterlaceCertificate {
    std::size_t n = 0;
    bool verified = false;
    std::vector<InterlaceWitness> witnesses;
    std::string failure;
};

/// Strict interlacing of the roots of B_{n-1} = C_{n-1}/x and B_n = C_n/x.
///
/// B_n must have n-1 distinct real roots. Each root r_j of B_{n-1} is isolated
/// in an interval free of roots of B_n, giving the exact sign of B_n(r_j).
/// If the signs at -inf, r_1, ..., r_{n-2}, +inf alternate, B_n has a root in
/// each of the n-1 gaps, hence exactly one, which is strict interlacing.
inline InterlaceCertificate interlace_certificate(std::size_t n, std::size_t max_refinements = 4096) {
    if (n < 2) throw DomainError("interlace_certificate requires n >= 2");
    InterlaceCertificate cert;
    cert.n = n;
    auto fail = [&](std::string why) {
        cert.verified = false;
        cert.failure = std::move(why);
        return cert;
    };

    const IntPolynomial prev = polynomial_from_row(TriangleMemo::instance().row(n - 1)).divide_by_x();
    const IntPolynomial cur = polynomial_from_row(TriangleMemo::instance().row(n)).divide_by_x();
    const SturmChain prev_chain(prev);
    const SturmChain cur_chain(cur);
    if (!cur_chain.squarefree() || cur_chain.count_roots(Bound::neg_inf(), Bound::pos_inf()) != n - 1) {
        return fail("B_" + std::to_string(n) + " does not have " + std::to_string(n - 1) + " distinct real roots");
    }

    std::vector<RootInterval> prev_roots;
    if (n >= 3) {
        const Rational bound = cauchy_root_bound(prev);
        if (!prev_chain.squarefree() ||
            prev_chain.count_roots(Bound(-bound), Bound(bound)) != n - 2 ||
            prev_chain.count_roots(Bound::neg_inf(), Bound::pos_inf()) != n - 2) {
            return fail("B_" + std::to_string(n - 1) + " does not have " + std::to_string(n - 2) +
                        " distinct real roots");
        }
        prev_roots = isolate_roots(prev_chain, -bound, bound);
    }

    int expected = cur.sign_at_infinity(false);
    for (std::size_t j = 0; j < prev_roots.size(); ++j) {
        RootInterval iv = prev_roots[j];
        std::size_t steps = 0;
        while (cur_chain.count_roots(iv.lo, iv.hi) != 0) {
            if (++steps > max_refinements) {
                return fail("root " + std::to_string(j + 1) + " of B_" + std::to_string(n - 1) +
                            " could not be separated from the roots of B_" + std::to_string(n));
            }
            Rational mid = (iv.lo + iv.hi) / 2;
            if (prev_chain.count_roots(iv.lo, mid) == 1) {
                iv.hi = mid;
            } else {
                iv.lo = mid;
            }
        }
        const int s = cur.sign_at(iv.hi);
        cert.witnesses.push_back({iv, s});
        expected = -expected;
        if (s != expected) {
            return fail("no sign change of B_" + std::to_string(n) + " in gap " + std::to_string(j + 1) +
                        " (before root " + std::to_string(j + 1) + " of B_" + std::to_string(n - 1) + ")");
        }
    }
    if (cur.sign_at_infinity(true) != -expected) {
        return fail("no sign change of B_" + std::to_string(n) + " in gap " + std::to_string(prev_roots.size() + 1) +
                    " (right of the last root of B_" + std::to_string(n - 1) + ")");
    }
    cert.verified = true;
    return cert;
}

}  // namespace stirling
