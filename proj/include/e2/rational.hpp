#pragma once

// Exact rationals backed by GMP. Values are always stored reduced with a
// positive denominator, so equality is structural.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace e2 {

using Integer = mpz_class;

class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}
    Rational(const Integer& n) : v_(n) {}
    Rational(const Integer& num, const Integer& den);

    Integer numerator() const { return v_.get_num(); }
    Integer denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Integer floor() const;
    /// Nearest integer; exact halves go toward zero.
    Integer round_half_toward_zero() const;
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    double to_double() const { return v_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Text form `p/q` (or `p` when q = 1), e.g. `-3`, `5/2`.
    std::string str() const;
    /// Inverse of str(). Only the canonical spelling is accepted, so
    /// parse(s).str() == s for every accepted s.
    static Rational parse(std::string_view text);

private:
    explicit Rational(mpq_class q) : v_(std::move(q)) {}
    mpq_class v_;
};

/// Parses a canonical decimal integer (`-12`, `0`; no `+`, no leading zeros).
Integer parse_integer(std::string_view text);

}  // namespace e2
