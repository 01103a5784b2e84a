#include "e2/ring.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace e2 {

namespace {

long isqrt(long n) {
    long s = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// (P + sqrt(D)) / Q as an element of the field.
FieldElement cf_element(const QuadField& F, long P, long Q) {
    if (F.omega_kind == OmegaKind::half) return F.element(Rational(Integer(P - 1), Integer(Q)), Rational(Integer(2), Integer(Q)));
    return F.element(Rational(Integer(P), Integer(Q)), Rational(Integer(2), Integer(Q)));
}

/// One step of the regular continued fraction of (P + sqrt(D)) / Q.
std::pair<long, long> cf_step(long D, long sqrt_floor, long P, long Q) {
    long q = Q > 0 ? floor_div(P + sqrt_floor, Q) : -(floor_div(P + sqrt_floor, -Q) + 1);
    long next_p = q * Q - P;
    long num = D - next_p * next_p;
    if (num % Q != 0) throw std::logic_error("continued fraction invariant Q | D - P^2 violated");
    return {next_p, num / Q};
}

double log_abs(const Rational& r) {
    if (r.is_zero()) return -INFINITY;
    long en = 0;
    long ed = 0;
    double mn = mpz_get_d_2exp(&en, r.raw().get_num_mpz_t());
    double md = mpz_get_d_2exp(&ed, r.raw().get_den_mpz_t());
    return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

double log_add(double x, double y) {
    if (std::isinf(x)) return y;
    if (std::isinf(y)) return x;
    double hi = std::max(x, y);
    double lo = std::min(x, y);
    return hi + std::log1p(std::exp(lo - hi));
}

/// log |v1(x)| without cancellation, via v1 * v2 = Nm(x) when needed.
double log_abs_v1(const FieldElement& x) {
    QuadraticReal v = x.embed(Embedding::v1);
    double lp = log_abs(v.p());
    double lq = log_abs(v.q()) + 0.5 * std::log(static_cast<double>(x.radicand()));
    double lsum = log_add(lp, lq);
    if (v.p().sign() * v.q().sign() >= 0) return lsum;
    return log_abs(x.norm()) - lsum;
}

FieldElement power(const FieldElement& base, long e) {
    FieldElement result = FieldElement::from_integer(1, base.radicand());
    FieldElement b = base;
    while (e > 0) {
        if (e & 1) result = result * b;
        b = b * b;
        e >>= 1;
    }
    return result;
}

bool v1_square_below(const FieldElement& y, const Rational& n) {
    QuadraticReal v = y.embed(Embedding::v1);
    return (v * v - n).sign() < 0;
}

}  // namespace

FieldElement fundamental_unit(long m) {
    if (m < 2 || !is_squarefree(m)) throw std::invalid_argument("m must be squarefree and >= 2");
    QuadField F;
    F.m = m;
    F.disc = discriminant_of(m);
    F.omega_kind = omega_kind_of(m);
    long D = F.disc;
    long s = isqrt(D);
    long P = ((s - D) % 2 == 0) ? s : s - 1;
    long Q = 2;
    FieldElement product = F.integer(1);
    // The expansion of (P0 + sqrt D)/2 is purely periodic; the product of the
    // complete quotients over one period is the fundamental unit.
    do {
        std::tie(P, Q) = cf_step(D, s, P, Q);
        product = product * cf_element(F, P, Q);
    } while (Q != 2);
    return product;
}

QuadField make_field(long m) {
    if (m < 2 || !is_squarefree(m)) throw std::invalid_argument("m = " + std::to_string(m) + " is not a squarefree integer >= 2");
    QuadField F;
    F.m = m;
    F.disc = discriminant_of(m);
    F.omega_kind = omega_kind_of(m);
    F.fundamental_unit = fundamental_unit(m);
    F.unit_norm = F.fundamental_unit.norm().sign();
    return F;
}

FieldElement canonical_associate(const QuadField& F, const FieldElement& x) {
    if (x.is_zero()) throw std::domain_error("canonical_associate of zero");
    if (!x.is_integral()) throw std::invalid_argument("canonical_associate needs an integral element");
    const FieldElement& eps = F.fundamental_unit;
    FieldElement eps_inv = eps.conj() * Rational(F.unit_norm);
    Rational n = x.norm().abs();

    FieldElement y = x.embed(Embedding::v1).sign() < 0 ? -x : x;
    double log_eps = log_abs_v1(eps);
    double shift = (log_abs_v1(y) - 0.5 * log_abs(n)) / log_eps;
    long k = -static_cast<long>(std::floor(shift));
    if (k > 0) y = y * power(eps, k);
    if (k < 0) y = y * power(eps_inv, -k);
    while (v1_square_below(y, n)) y = y * eps;
    while (!v1_square_below(y * eps_inv, n)) y = y * eps_inv;
    return y;
}

std::optional<FieldElement> principal_generator(const QuadField& F, long a, long b) {
    long D = F.disc;
    if (a <= 0 || (b * b - D) % (4 * a) != 0) throw std::invalid_argument("not a primitive ideal [a, (b+sqrt D)/2]");
    if (a == 1) return F.integer(1);
    long s = isqrt(D);
    long P = b;
    long Q = 2 * a;
    FieldElement product = F.integer(1);
    std::set<std::pair<long, long>> seen;
    for (;;) {
        std::tie(P, Q) = cf_step(D, s, P, Q);
        product = product * cf_element(F, P, Q);
        if (Q == 2 || Q == -2) {
            FieldElement g = F.integer(2 * a) / (product * Rational(Q));
            if (!g.is_integral() || g.norm().abs() != Rational(a))
                throw std::logic_error("reduced-ideal cycle produced a bad generator");
            return g;
        }
        if (!seen.emplace(P, Q).second) return std::nullopt;
    }
}

std::vector<IdealGen> ideals_of_norm(const QuadField& F, long n) {
    std::vector<IdealGen> out;
    long D = F.disc;
    for (long g = 1; g * g <= n; ++g) {
        if (n % (g * g) != 0) continue;
        long a = n / (g * g);
        for (long b = D & 1; b < 2 * a; b += 2) {
            if ((b * b - D) % (4 * a) != 0) continue;
            auto gen = principal_generator(F, a, b);
            if (!gen)
                throw ClassNumberError("ideal [" + std::to_string(a) + ", (" + std::to_string(b) +
                                       "+sqrt(" + std::to_string(D) + "))/2] is not principal");
            out.push_back({canonical_associate(F, *gen * Rational(g)), n});
        }
    }
    std::sort(out.begin(), out.end(), [](const IdealGen& x, const IdealGen& y) {
        if (x.generator.a() != y.generator.a()) return x.generator.a() < y.generator.a();
        return x.generator.b() < y.generator.b();
    });
    return out;
}

std::vector<IdealGen> ideals_up_to(const QuadField& F, long N) {
    std::vector<IdealGen> out;
    for (long n = 1; n <= N; ++n) {
        auto level = ideals_of_norm(F, n);
        out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
    }
    return out;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Splitting splitting_type(const QuadField& F, long p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    long D = F.disc;
    if (D % p == 0) return Splitting::ramified;
    if (p == 2) return (D % 8 == 1) ? Splitting::split : Splitting::inert;
    // Euler's criterion
    long base = ((D % p) + p) % p;
    long e = (p - 1) / 2;
    long r = 1;
    while (e > 0) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r == 1 ? Splitting::split : Splitting::inert;
}

bool class_number_is_one(const QuadField& F) {
    long D = F.disc;
    // Minkowski bound sqrt(D)/2: primes with 4p^2 <= D.
    for (long p = 2; 4 * p * p <= D; ++p) {
        if (!is_prime(p) || splitting_type(F, p) == Splitting::inert) continue;
        for (long b = D & 1; b < 2 * p; b += 2) {
            if ((b * b - D) % (4 * p) != 0) continue;
            if (!principal_generator(F, p, b)) return false;
        }
    }
    return true;
}

}  // namespace e2
