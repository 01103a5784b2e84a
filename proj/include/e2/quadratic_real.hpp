#pragma once

#include "e2/rational.hpp"

#include <compare>
#include <string>

namespace e2 {

/// The real number p + q*sqrt(m), m squarefree >= 2, taken under the
/// embedding sqrt(m) -> +sqrt(m). Since sqrt(m) is irrational, two values are
/// equal exactly when their (p, q) coordinates agree.
class QuadraticReal {
public:
    QuadraticReal(Rational p, Rational q, long m);
    static QuadraticReal rational(Rational p, long m) { return QuadraticReal(std::move(p), Rational(0), m); }

    const Rational& p() const { return p_; }
    const Rational& q() const { return q_; }
    long radicand() const { return m_; }

    /// Exact sign, decided with integer arithmetic only.
    int sign() const;
    QuadraticReal abs() const { return sign() < 0 ? -*this : *this; }
    double approx() const;

    QuadraticReal operator-() const { return {-p_, -q_, m_, unchecked}; }
    friend QuadraticReal operator+(const QuadraticReal& a, const QuadraticReal& b);
    friend QuadraticReal operator-(const QuadraticReal& a, const QuadraticReal& b);
    friend QuadraticReal operator*(const QuadraticReal& a, const QuadraticReal& b);
    friend QuadraticReal operator+(const QuadraticReal& a, const Rational& r) { return {a.p_ + r, a.q_, a.m_, unchecked}; }
    friend QuadraticReal operator-(const QuadraticReal& a, const Rational& r) { return {a.p_ - r, a.q_, a.m_, unchecked}; }
    friend QuadraticReal operator*(const QuadraticReal& a, const Rational& r) { return {a.p_ * r, a.q_ * r, a.m_, unchecked}; }
    friend QuadraticReal operator/(const QuadraticReal& a, const Rational& r) { return {a.p_ / r, a.q_ / r, a.m_, unchecked}; }

    friend bool operator==(const QuadraticReal& a, const QuadraticReal& b);
    /// Total order of the real embedding. Throws on mismatched radicands.
    friend std::strong_ordering operator<=>(const QuadraticReal& a, const QuadraticReal& b);

    std::string str() const;

private:
    struct Unchecked {};
    static constexpr Unchecked unchecked{};
    QuadraticReal(Rational p, Rational q, long m, Unchecked) : p_(std::move(p)), q_(std::move(q)), m_(m) {}

    Rational p_;
    Rational q_;
    long m_;
};

enum class Ordering { LT, EQ, GT };

inline int qr_sign(const QuadraticReal& a) { return a.sign(); }
Ordering qr_cmp(const QuadraticReal& a, const QuadraticReal& b);

bool is_squarefree(long n);

}  // namespace e2
