#pragma once

// Sturm chains and exact real-root counting over rational intervals.

#include <cstddef>
#include <vector>

#include "stirling/numerics.hpp"

namespace stirling {

/// A finite rational point or one of the two infinities.
class Bound {
public:
    enum class Kind { negative_infinity, finite, positive_infinity };

    Bound(const Rational& v) : kind_(Kind::finite), value_(v) {}  // NOLINT: implicit on purpose
    Bound(long v) : Bound(Rational(v)) {}                          // NOLINT
    static Bound neg_inf() { return Bound(Kind::negative_infinity); }
    static Bound pos_inf() { return Bound(Kind::positive_infinity); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    const Rational& value() const { return value_; }

    friend bool operator<(const Bound& a, const Bound& b) {
        if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
        return a.is_finite() && a.value_ < b.value_;
    }

private:
    explicit Bound(Kind k) : kind_(k) {}

    Kind kind_;
    Rational value_;
};

inline int sign_at(const IntPolynomial& p, const Bound& x) {
    switch (x.kind()) {
        case Bound::Kind::negative_infinity: return p.sign_at_infinity(false);
        case Bound::Kind::positive_infinity: return p.sign_at_infinity(true);
        case Bound::Kind::finite: break;
    }
    return p.sign_at(x.value());
}

/// p_0 = p, p_1 = p', p_{k+1} = -rem(p_{k-1}, p_k), each element divided by
/// its (positive) content. Remainders are computed as pseudo-remainders and
/// multiplied by a positive factor only, so signs match the classical chain.
class SturmChain {
public:
    explicit SturmChain(const IntPolynomial& p) {
        if (p.is_zero()) throw DomainError("Sturm chain of the zero polynomial");
        chain_.push_back(p.primitive_part());
        IntPolynomial d = p.derivative().primitive_part();
        if (d.is_zero()) return;
        chain_.push_back(std::move(d));
        while (true) {
            const IntPolynomial& a = chain_[chain_.size() - 2];
            const IntPolynomial& b = chain_.back();
            IntPolynomial r = pseudo_remainder(a, b);
            if (r.is_zero()) break;
            // pseudo_remainder scales by lc(b)^k with k = deg a - deg b + 1.
            const std::size_t k = *a.degree() - *b.degree() + 1;
            const bool scale_negative = b.leading() < 0 && k % 2 == 1;
            if (!scale_negative) r = -r;
            chain_.push_back(r.primitive_part());
        }
    }

    const std::vector<IntPolynomial>& polynomials() const { return chain_; }
    std::size_t size() const { return chain_.size(); }

    /// Last element has degree 0, i.e. gcd(p, p') is constant.
    bool squarefree() const { return chain_.back().degree() == std::size_t{0}; }

    /// Sign changes in the chain evaluated at x, zeros skipped.
    std::size_t variations(const Bound& x) const {
        std::size_t changes = 0;
        int last = 0;
        for (const auto& q : chain_) {
            int s = sign_at(q, x);
            if (s == 0) continue;
            if (last != 0 && s != last) ++changes;
            last = s;
        }
        return changes;
    }

    /// Number of distinct real roots in (lo, hi].
    std::size_t count_roots(const Bound& lo, const Bound& hi) const {
        if (!(lo < hi)) throw DomainError("count_roots requires lo < hi");
        const std::size_t vlo = variations(lo);
        const std::size_t vhi = variations(hi);
        if (vhi > vlo) throw std::logic_error("Sturm variation count increased across an interval");
        return vlo - vhi;
    }

private:
    std::vector<IntPolynomial> chain_;
};

inline SturmChain sturm_chain(const IntPolynomial& p) { return SturmChain(p); }

/// Distinct real roots of p in (lo, hi].
inline std::size_t count_real_roots(const IntPolynomial& p, const Bound& lo, const Bound& hi) {
    return SturmChain(p).count_roots(lo, hi);
}

}  // namespace stirling
