#pragma once

// Exact integer, rational and dense integer-polynomial arithmetic.
//
// Integers and rationals are GMP values (mpz_class / mpq_class). Rationals
// produced by arithmetic are always canonical; values built from a raw
// numerator/denominator pair must go through make_rational().

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stirling {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when an operation is called outside its mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Compares 2r with d: -1, 0 or 1.
inline int cmp_half(const Integer& r, const Integer& d) {
    Integer twice = r;
    twice *= 2;
    return twice < d ? -1 : (twice == d ? 0 : 1);
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

/// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

/// 1 * 3 * ... * (2n-1).
inline Integer double_factorial(long n) {
    if (n < 1) throw DomainError("double_factorial requires n >= 1");
    Integer out = 1;
    for (long k = 3; k <= 2 * n - 1; k += 2) out *= k;
    return out;
}

/// Nearest double to v (ties to even). mpq_get_d truncates, which shows up
/// in printed decimals such as 5/3 -> 1.6666666666666665.
inline double to_double(const Rational& v) {
    const int s = sgn(v);
    if (s == 0) return 0.0;
    const Integer num = abs(v.get_num());
    const Integer& den = v.get_den();
    long shift = 53 - static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) +
                 static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    Integer q, r;
    const Integer limit = Integer(1) << 53;
    while (true) {
        Integer scaled_num = num;
        Integer scaled_den = den;
        if (shift >= 0) {
            mpz_mul_2exp(scaled_num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
        } else {
            mpz_mul_2exp(scaled_den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
        }
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
        if (q >= limit) {
            --shift;
            continue;
        }
        if (q < limit / 2) {
            ++shift;
            continue;
        }
        const int cmp = cmp_half(r, scaled_den);
        if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
        break;
    }
    return s * std::ldexp(q.get_d(), static_cast<int>(-shift));
}

inline int sign(const Integer& v) { return sgn(v); }
inline int sign(const Rational& v) { return sgn(v); }

/// Dense polynomial with Integer coefficients; coeffs()[i] multiplies x^i.
///
/// Canonical form has no trailing zero coefficients, so the zero polynomial
/// is the empty sequence and degree() returns std::nullopt for it (the
/// "negative infinity" degree).
class IntPolynomial {
public:
    IntPolynomial() = default;
    IntPolynomial(std::initializer_list<long> coeffs) {
        coeffs_.reserve(coeffs.size());
        for (long c : coeffs) coeffs_.emplace_back(c);
        trim();
    }
    explicit IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static IntPolynomial constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }
    static IntPolynomial monomial(const Integer& c, std::size_t degree) {
        std::vector<Integer> v(degree + 1);
        v[degree] = c;
        return IntPolynomial(std::move(v));
    }
    static IntPolynomial x() { return monomial(1, 1); }

    bool is_zero() const { return coeffs_.empty(); }
    std::optional<std::size_t> degree() const {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.size() - 1;
    }
    /// Coefficient of x^i; zero beyond the degree.
    Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
    const Integer& leading() const {
        if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
        return coeffs_.back();
    }
    std::span<const Integer> coeffs() const { return coeffs_; }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    IntPolynomial& operator+=(const IntPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    IntPolynomial& operator-=(const IntPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    IntPolynomial& operator*=(const Integer& s) {
        if (s == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator-(IntPolynomial a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }
    friend IntPolynomial operator*(IntPolynomial a, const Integer& s) { return a *= s; }
    friend IntPolynomial operator*(const Integer& s, IntPolynomial a) { return a *= s; }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
            }
        }
        return IntPolynomial(std::move(out));
    }
    IntPolynomial& operator*=(const IntPolynomial& o) { return *this = *this * o; }

    /// p(x) / x; requires a zero constant term.
    IntPolynomial divide_by_x() const {
        if (is_zero()) return {};
        if (coeffs_.front() != 0) throw DomainError("divide_by_x: constant term is nonzero");
        return IntPolynomial(std::vector<Integer>(coeffs_.begin() + 1, coeffs_.end()));
    }

    /// x^k * p(x).
    IntPolynomial shift_up(std::size_t k) const {
        if (is_zero()) return {};
        std::vector<Integer> out(k);
        out.insert(out.end(), coeffs_.begin(), coeffs_.end());
        return IntPolynomial(std::move(out));
    }

    IntPolynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Integer> out(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
        return IntPolynomial(std::move(out));
    }

    IntPolynomial pow(unsigned e) const {
        IntPolynomial result = constant(1);
        IntPolynomial base = *this;
        while (e > 0) {
            if (e & 1U) result *= base;
            e >>= 1U;
            if (e > 0) base *= base;
        }
        return result;
    }

    /// gcd of the coefficients (non-negative; zero for the zero polynomial).
    Integer content() const {
        Integer g = 0;
        for (const auto& c : coeffs_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    /// Divides out the content, keeping the sign of every coefficient.
    IntPolynomial primitive_part() const {
        Integer g = content();
        if (g <= 1) return *this;
        IntPolynomial out = *this;
        for (auto& c : out.coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        return out;
    }

    /// Exact value at a rational point (Horner).
    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    /// q^d * p(num/q) for d = degree, computed in integers (homogeneous Horner).
    /// Has the sign of p(num/q) because q > 0.
    Integer eval_scaled(const Integer& num, const Integer& den) const {
        if (coeffs_.empty()) return 0;
        Integer acc = coeffs_.back();
        Integer den_pow = 1;
        for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
            den_pow *= den;
            acc *= num;
            mpz_addmul(acc.get_mpz_t(), coeffs_[i].get_mpz_t(), den_pow.get_mpz_t());
        }
        return acc;
    }

    /// Sign of p(x); exact.
    int sign_at(const Rational& x) const { return sgn(eval_scaled(x.get_num(), x.get_den())); }

    /// Sign of p(x) as x -> +infinity (or -infinity).
    int sign_at_infinity(bool positive) const {
        if (coeffs_.empty()) return 0;
        int s = sgn(coeffs_.back());
        if (!positive && (coeffs_.size() - 1) % 2 == 1) s = -s;
        return s;
    }

    /// Pseudo-remainder: lc(d)^(deg a - deg d + 1) * a  mod  d.
    friend IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& d) {
        if (d.is_zero()) throw DomainError("pseudo_remainder by the zero polynomial");
        if (a.is_zero() || a.coeffs_.size() < d.coeffs_.size()) return a;
        std::vector<Integer> r = a.coeffs_;
        const std::size_t dd = d.coeffs_.size() - 1;
        const Integer& lc = d.coeffs_.back();
        std::size_t steps = a.coeffs_.size() - d.coeffs_.size() + 1;
        // Each step clears the top coefficient: r <- lc*r - r_top * x^k * d.
        for (std::size_t top = r.size() - 1; steps > 0; --top, --steps) {
            Integer t = r[top];
            for (auto& c : r) c *= lc;
            if (t != 0) {
                std::size_t k = top - dd;
                for (std::size_t j = 0; j <= dd; ++j) {
                    mpz_submul(r[k + j].get_mpz_t(), t.get_mpz_t(), d.coeffs_[j].get_mpz_t());
                }
            }
            r[top] = 0;
        }
        return IntPolynomial(std::move(r));
    }

    /// Human-readable form, e.g. "2x^2 + x".
    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const Integer& c = coeffs_[i];
            if (c == 0) continue;
            Integer mag = abs(c);
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            if (mag != 1 || i == 0) out += mag.get_str();
            if (i >= 1) out += "x";
            if (i >= 2) out += "^" + std::to_string(i);
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Integer> coeffs_;
};

inline IntPolynomial derivative(const IntPolynomial& p) { return p.derivative(); }
inline Rational eval(const IntPolynomial& p, const Rational& x) { return p.eval(x); }

}  // namespace stirling
