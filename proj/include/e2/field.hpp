#pragma once

#include "e2/quadratic_real.hpp"
#include "e2/rational.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace e2 {

enum class OmegaKind {
    half,   ///< m = 1 mod 4, omega = (1 + sqrt(m)) / 2
    plain,  ///< m = 2, 3 mod 4, omega = sqrt(m)
};

enum class Embedding { v1, v2 };

inline OmegaKind omega_kind_of(long m) { return m % 4 == 1 ? OmegaKind::half : OmegaKind::plain; }

/// a + b*omega in Q(sqrt(m)), stored in the basis {1, omega} of the ring of
/// integers, so integrality means both coordinates are integers.
class FieldElement {
public:
    FieldElement(Rational a, Rational b, long m);
    static FieldElement from_integer(const Integer& a, long m) { return {Rational(a), Rational(0), m}; }
    static FieldElement omega(long m) { return {Rational(0), Rational(1), m}; }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long radicand() const { return m_; }
    OmegaKind omega_kind() const { return omega_kind_of(m_); }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_integral() const { return a_.is_integer() && b_.is_integer(); }

    FieldElement conj() const;
    Rational norm() const;
    Rational trace() const;
    FieldElement inverse() const;
    QuadraticReal embed(Embedding which) const;

    FieldElement operator-() const { return {-a_, -b_, m_, unchecked}; }
    friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator*(const FieldElement& x, const Rational& r) { return {x.a_ * r, x.b_ * r, x.m_, unchecked}; }

    friend bool operator==(const FieldElement& x, const FieldElement& y) {
        return x.m_ == y.m_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    /// Text form `a/b,c/d` meaning (a/b) + (c/d)*omega.
    std::string str() const { return a_.str() + "," + b_.str(); }
    static FieldElement parse(std::string_view text, long m);

private:
    struct Unchecked {};
    static constexpr Unchecked unchecked{};
    FieldElement(Rational a, Rational b, long m, Unchecked) : a_(std::move(a)), b_(std::move(b)), m_(m) {}

    Rational a_;
    Rational b_;
    long m_;
};

enum class FeOp { add, sub, mul, conj, norm, trace };

/// x / y when the quotient is integral, std::nullopt otherwise.
/// Throws std::domain_error when y = 0.
std::optional<FieldElement> exact_divide(const FieldElement& x, const FieldElement& y);

/// The real quadratic field Q(sqrt(m)) with the data the prover needs.
struct QuadField {
    long m = 0;
    long disc = 0;
    OmegaKind omega_kind = OmegaKind::plain;
    FieldElement fundamental_unit{Rational(1), Rational(0), 2};
    int unit_norm = 1;

    FieldElement element(const Rational& a, const Rational& b) const { return {a, b, m}; }
    FieldElement integer(long a) const { return {Rational(a), Rational(0), m}; }
    FieldElement omega() const { return FieldElement::omega(m); }
    /// omega^2 = w0 + w1*omega.
    long omega_sq_constant() const { return omega_kind == OmegaKind::half ? (m - 1) / 4 : m; }
    long omega_sq_linear() const { return omega_kind == OmegaKind::half ? 1 : 0; }
};

inline long discriminant_of(long m) { return m % 4 == 1 ? m : 4 * m; }

}  // namespace e2
