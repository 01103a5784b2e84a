#include "e2/field.hpp"

#include <stdexcept>

namespace e2 {

namespace {

void require_same(const FieldElement& x, const FieldElement& y) {
    if (x.radicand() != y.radicand())
        throw std::invalid_argument("field elements from different fields (m = " + std::to_string(x.radicand()) +
                                    ", " + std::to_string(y.radicand()) + ")");
}

}  // namespace

FieldElement::FieldElement(Rational a, Rational b, long m) : a_(std::move(a)), b_(std::move(b)), m_(m) {
    if (m < 2) throw std::invalid_argument("radicand must be >= 2");
}

FieldElement FieldElement::conj() const {
    if (omega_kind() == OmegaKind::half) return {a_ + b_, -b_, m_, unchecked};
    return {a_, -b_, m_, unchecked};
}

Rational FieldElement::norm() const {
    if (omega_kind() == OmegaKind::half) return a_ * a_ + a_ * b_ + b_ * b_ * Rational(Integer(1 - m_), Integer(4));
    return a_ * a_ - b_ * b_ * Rational(m_);
}

Rational FieldElement::trace() const {
    if (omega_kind() == OmegaKind::half) return a_ + a_ + b_;
    return a_ + a_;
}

FieldElement FieldElement::inverse() const {
    Rational n = norm();
    if (n.is_zero()) throw std::domain_error("inverse of zero field element");
    FieldElement c = conj();
    return {c.a_ / n, c.b_ / n, m_, unchecked};
}

QuadraticReal FieldElement::embed(Embedding which) const {
    // half: a + b(1 +- sqrt m)/2 ; plain: a +- b sqrt m
    Rational p = a_;
    Rational q = b_;
    if (omega_kind() == OmegaKind::half) {
        Rational h = b_ * Rational(1, 2);
        p = a_ + h;
        q = h;
    }
    if (which == Embedding::v2) q = -q;
    return QuadraticReal(std::move(p), std::move(q), m_);
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    require_same(x, y);
    return {x.a_ + y.a_, x.b_ + y.b_, x.m_, FieldElement::unchecked};
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    require_same(x, y);
    return {x.a_ - y.a_, x.b_ - y.b_, x.m_, FieldElement::unchecked};
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    require_same(x, y);
    Rational bd = x.b_ * y.b_;
    Rational a = x.a_ * y.a_;
    Rational b = x.a_ * y.b_ + x.b_ * y.a_;
    if (x.omega_kind() == OmegaKind::half) {
        a += bd * Rational((x.m_ - 1) / 4);
        b += bd;
    } else {
        a += bd * Rational(x.m_);
    }
    return {std::move(a), std::move(b), x.m_, FieldElement::unchecked};
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    require_same(x, y);
    return x * y.inverse();
}

std::optional<FieldElement> exact_divide(const FieldElement& x, const FieldElement& y) {
    if (y.is_zero()) throw std::domain_error("exact_divide by zero");
    FieldElement q = x / y;
    if (!q.is_integral()) return std::nullopt;
    return q;
}

FieldElement FieldElement::parse(std::string_view text, long m) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
        throw std::invalid_argument("field element literal must look like 'a/b,c/d': '" + std::string(text) + "'");
    return {Rational::parse(text.substr(0, comma)), Rational::parse(text.substr(comma + 1)), m};
}

}  // namespace e2
