#include "e2/rational.hpp"

#include <stdexcept>

namespace e2 {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

Integer Rational::floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Integer Rational::round_half_toward_zero() const {
    Integer f = floor();
    Rational frac = *this - Rational(f);
    auto c = frac <=> Rational(1, 2);
    if (c > 0) return f + 1;
    if (c < 0) return f;
    return sign() > 0 ? f : f + 1;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

namespace {

bool is_canonical_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return s.size() == 1 || s[0] != '0';
}

}  // namespace

Integer parse_integer(std::string_view text) {
    std::string_view digits = text;
    bool negative = false;
    if (!digits.empty() && digits[0] == '-') {
        negative = true;
        digits.remove_prefix(1);
    }
    if (!is_canonical_digits(digits) || (negative && digits == "0"))
        throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
    return Integer(std::string(text));
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!is_canonical_digits(den_text))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer den(std::string{den_text});
    Rational r(num, den);
    if (r.str() != text)
        throw std::invalid_argument("rational '" + std::string(text) + "' is not in lowest terms");
    return r;
}

}  // namespace e2
