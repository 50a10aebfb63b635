#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "polyenum/errors.hpp"

namespace polyenum {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

/**
 * Scalar backends for the enumeration engines.
 *
 *  - Fixed64Checked: numerator and denominator held in int64_t, every
 *    intermediate computed in 128 bits, OverflowError thrown exactly when
 *    the canonical result of an operation does not fit.
 *  - ArbitraryPrecision: GMP rationals, never overflows.
 *  - Hybrid: run Fixed64Checked and restart the whole computation with
 *    ArbitraryPrecision on the first OverflowError.
 */
enum class ArithmeticMode { Fixed64Checked, ArbitraryPrecision, Hybrid };

/**
 * Exact rational with 64-bit numerator and denominator.
 *
 * Canonical form invariant: den > 0, gcd(|num|, den) = 1, and zero is 0/1.
 * Operations reduce through 128-bit intermediates; for two canonical
 * operands every intermediate below fits in 128 bits, so overflow can only
 * appear in the reduced result, where it is detected by a range check.
 */
class Rat64 {
public:
    Rat64() = default;
    Rat64(long long v) : num_(v) {}

    /** Canonicalize num/den.  Throws std::invalid_argument if den == 0. */
    static Rat64 normalized(long long num, long long den) {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        return reduce(I128(num), I128(den));
    }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    int sign() const noexcept { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }
    bool is_zero() const noexcept { return num_ == 0; }

    friend Rat64 operator+(const Rat64& a, const Rat64& b) {
        return reduce(I128(a.num_) * b.den_ + I128(b.num_) * a.den_,
                      I128(a.den_) * b.den_);
    }
    friend Rat64 operator-(const Rat64& a, const Rat64& b) {
        return reduce(I128(a.num_) * b.den_ - I128(b.num_) * a.den_,
                      I128(a.den_) * b.den_);
    }
    friend Rat64 operator*(const Rat64& a, const Rat64& b) {
        return reduce(I128(a.num_) * b.num_, I128(a.den_) * b.den_);
    }
    friend Rat64 operator/(const Rat64& a, const Rat64& b) {
        if (b.num_ == 0) throw std::invalid_argument("rational division by zero");
        return reduce(I128(a.num_) * b.den_, I128(a.den_) * b.num_);
    }
    Rat64 operator-() const {
        Rat64 r;
        r.num_ = -num_; // |num_| <= 2^63 - 1 in canonical form, negation safe
        r.den_ = den_;
        return r;
    }

    Rat64& operator+=(const Rat64& b) { return *this = *this + b; }
    Rat64& operator-=(const Rat64& b) { return *this = *this - b; }
    Rat64& operator*=(const Rat64& b) { return *this = *this * b; }
    Rat64& operator/=(const Rat64& b) { return *this = *this / b; }

    friend bool operator==(const Rat64& a, const Rat64& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rat64& a, const Rat64& b) noexcept {
        return I128(a.num_) * b.den_ <=> I128(b.num_) * a.den_;
    }

private:
    using I128 = __int128;

    static I128 abs128(I128 v) noexcept { return v < 0 ? -v : v; }

    static I128 gcd128(I128 a, I128 b) noexcept {
        a = abs128(a);
        b = abs128(b);
        while (b != 0) {
            I128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rat64 reduce(I128 n, I128 d) {
        if (n == 0) return Rat64();
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const I128 g = gcd128(n, d);
        n /= g;
        d /= g;
        constexpr I128 lo = std::numeric_limits<std::int64_t>::min();
        constexpr I128 hi = std::numeric_limits<std::int64_t>::max();
        if (n < lo || n > hi || d > hi)
            throw OverflowError("64-bit rational overflow");
        Rat64 r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/**
 * Canonicalize a big-integer fraction.  mpq_rational's two-argument
 * constructor mishandles negative denominators, so the sign is fixed
 * here and the canonical gcd reduction is delegated to mpq division.
 */
inline BigRat big_normalized(BigInt num, BigInt den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return BigRat(num) / BigRat(den);
}

inline int sign_of(const Rat64& r) noexcept { return r.sign(); }
inline int sign_of(const BigRat& r) { return r.sign(); }

inline BigRat to_big(const Rat64& r) {
    return BigRat(r.num()) / BigRat(r.den());
}
inline const BigRat& to_big(const BigRat& r) { return r; }

/** Convert to the 64-bit representation; throws OverflowError if it does not fit. */
inline Rat64 to_fixed64(const BigRat& r) {
    const BigInt n = boost::multiprecision::numerator(r);
    const BigInt d = boost::multiprecision::denominator(r);
    constexpr std::int64_t lo = std::numeric_limits<std::int64_t>::min();
    constexpr std::int64_t hi = std::numeric_limits<std::int64_t>::max();
    if (n < lo || n > hi || d > hi)
        throw OverflowError("64-bit rational overflow");
    Rat64 v = Rat64::normalized(static_cast<long long>(n), static_cast<long long>(d));
    return v;
}

template <class R>
R from_big(const BigRat& r);

template <>
inline BigRat from_big<BigRat>(const BigRat& r) { return r; }

template <>
inline Rat64 from_big<Rat64>(const BigRat& r) { return to_fixed64(r); }

inline std::string rat_token(const BigRat& r) {
    const BigInt n = boost::multiprecision::numerator(r);
    const BigInt d = boost::multiprecision::denominator(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

inline std::string rat_token(const Rat64& r) {
    if (r.den() == 1) return std::to_string(r.num());
    return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

/**
 * Parse "num" or "num/den" with an optional leading minus on the
 * numerator.  Throws std::invalid_argument on any other shape, including
 * a zero denominator.
 */
inline BigRat big_from_token(std::string_view tok) {
    const std::string text(tok);
    auto fail = [&]() -> BigRat {
        throw std::invalid_argument("malformed rational token '" + text + "'");
    };
    if (tok.empty()) return fail();
    std::size_t pos = 0;
    bool neg = false;
    if (tok[pos] == '-') {
        neg = true;
        ++pos;
    }
    std::size_t digits = 0;
    std::string numTxt;
    while (pos < tok.size() && tok[pos] >= '0' && tok[pos] <= '9') {
        numTxt += tok[pos];
        ++pos;
        ++digits;
    }
    if (digits == 0) return fail();
    BigInt num(numTxt);
    if (neg) num = -num;
    if (pos == tok.size()) return BigRat(num);
    if (tok[pos] != '/') return fail();
    ++pos;
    std::string denTxt;
    digits = 0;
    while (pos < tok.size() && tok[pos] >= '0' && tok[pos] <= '9') {
        denTxt += tok[pos];
        ++pos;
        ++digits;
    }
    if (digits == 0 || pos != tok.size()) return fail();
    BigInt den(denTxt);
    if (den == 0) return fail();
    return big_normalized(num, den);
}

inline double to_double(const BigRat& r) { return r.convert_to<double>(); }
inline double to_double(const Rat64& r) {
    return static_cast<double>(r.num()) / static_cast<double>(r.den());
}

} // namespace polyenum
