#include "e2/quadratic_real.hpp"

#include <cmath>
#include <stdexcept>

namespace e2 {

namespace {

void require_same(const QuadraticReal& a, const QuadraticReal& b) {
    if (a.radicand() != b.radicand())
        throw std::invalid_argument("mismatched radicands " + std::to_string(a.radicand()) + " and " +
                                    std::to_string(b.radicand()));
}

}  // namespace

bool is_squarefree(long n) {
    if (n < 1) return false;
    for (long d = 2; d * d <= n; ++d) {
        if (n % (d * d) == 0) return false;
    }
    return true;
}

QuadraticReal::QuadraticReal(Rational p, Rational q, long m) : p_(std::move(p)), q_(std::move(q)), m_(m) {
    if (m < 2 || !is_squarefree(m)) throw std::invalid_argument("radicand must be squarefree and >= 2");
}

int QuadraticReal::sign() const {
    int sp = p_.sign();
    int sq = q_.sign();
    if (sp >= 0 && sq >= 0) return (sp | sq) ? 1 : 0;
    if (sp <= 0 && sq <= 0) return -1;
    // Mixed signs: the larger of p^2 and m*q^2 wins. They cannot tie.
    Rational lhs = p_ * p_;
    Rational rhs = q_ * q_ * Rational(m_);
    return lhs > rhs ? sp : sq;
}

double QuadraticReal::approx() const {
    return p_.to_double() + q_.to_double() * std::sqrt(static_cast<double>(m_));
}

QuadraticReal operator+(const QuadraticReal& a, const QuadraticReal& b) {
    require_same(a, b);
    return {a.p_ + b.p_, a.q_ + b.q_, a.m_, QuadraticReal::unchecked};
}

QuadraticReal operator-(const QuadraticReal& a, const QuadraticReal& b) {
    require_same(a, b);
    return {a.p_ - b.p_, a.q_ - b.q_, a.m_, QuadraticReal::unchecked};
}

QuadraticReal operator*(const QuadraticReal& a, const QuadraticReal& b) {
    require_same(a, b);
    Rational p = a.p_ * b.p_ + a.q_ * b.q_ * Rational(a.m_);
    Rational q = a.p_ * b.q_ + a.q_ * b.p_;
    return {std::move(p), std::move(q), a.m_, QuadraticReal::unchecked};
}

bool operator==(const QuadraticReal& a, const QuadraticReal& b) {
    return a.m_ == b.m_ && a.p_ == b.p_ && a.q_ == b.q_;
}

std::strong_ordering operator<=>(const QuadraticReal& a, const QuadraticReal& b) {
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Ordering qr_cmp(const QuadraticReal& a, const QuadraticReal& b) {
    auto c = a <=> b;
    if (c < 0) return Ordering::LT;
    if (c > 0) return Ordering::GT;
    return Ordering::EQ;
}

std::string QuadraticReal::str() const {
    return p_.str() + (q_.sign() < 0 ? "-" : "+") + q_.abs().str() + "*sqrt(" + std::to_string(m_) + ")";
}

}  // namespace e2
