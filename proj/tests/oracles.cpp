#include "oracles.hpp"

#include <cmath>
#include <map>

namespace e2::oracle {

FieldElement brute_unit(long m) {
    bool half = m % 4 == 1;
    long c = half ? 4 : 1;
    for (Integer y = 1;; ++y) {
        for (long s : {-1, 1}) {
            Integer x2 = m * y * y + s * c;
            if (x2 <= 0 || !mpz_perfect_square_p(x2.get_mpz_t())) continue;
            Integer x = sqrt(x2);
            if (half) {
                // (x + y sqrt m)/2 = (x - y)/2 + y omega
                if ((x - y) % 2 != 0) continue;
                return FieldElement(Rational(Integer((x - y) / 2)), Rational(y), m);
            }
            return FieldElement(Rational(x), Rational(y), m);
        }
    }
}

long narrow_class_number(long D) {
    long s = static_cast<long>(std::sqrt(static_cast<double>(D)));
    while (s * s > D) --s;
    while ((s + 1) * (s + 1) <= D) ++s;
    // For non-square D, "b < sqrt D" is "b <= s".
    auto reduced = [&](long a, long b) {
        long two_a = 2 * std::labs(a);
        // sqrt D - b < 2|a| < sqrt D + b  <=>  two_a > sqrt D - b and two_a < sqrt D + b
        bool lower = (two_a + b > s);   // 2|a| + b > sqrt D, since sqrt D is irrational
        bool upper = (two_a - b <= s);  // 2|a| - b < sqrt D
        return b > 0 && b <= s && lower && upper;
    };
    std::set<std::tuple<long, long, long>> forms;
    for (long b = 1; b <= s; ++b) {
        if ((b - D) % 2 != 0) continue;
        long ac = (b * b - D) / 4;  // negative
        for (long a = 1; a <= s; ++a) {
            if (ac % a != 0) continue;
            long c = ac / a;
            for (long sa : {1, -1}) {
                if (reduced(sa * a, b)) forms.emplace(sa * a, b, c * sa);
            }
        }
    }
    auto rho = [&](const std::tuple<long, long, long>& f) {
        auto [a, b, c] = f;
        long two_c = 2 * std::labs(c);
        // r = -b mod 2|c| with sqrt D - 2|c| < r < sqrt D
        long r = ((-b) % two_c + two_c) % two_c;
        while (r <= s - two_c) r += two_c;  // r > sqrt D - 2|c|
        while (r > s) r -= two_c;
        return std::tuple<long, long, long>(c, r, (r * r - D) / (4 * c));
    };
    long cycles = 0;
    std::set<std::tuple<long, long, long>> seen;
    for (const auto& f : forms) {
        if (seen.count(f)) continue;
        ++cycles;
        auto g = f;
        do {
            seen.insert(g);
            g = rho(g);
        } while (g != f);
    }
    return cycles;
}

long class_number(long m) {
    long D = discriminant_of(m);
    long hp = narrow_class_number(D);
    return brute_unit(m).norm().sign() < 0 ? hp : hp / 2;
}

std::vector<FieldElement> canonical_elements(const QuadField& F, long n) {
    std::vector<FieldElement> out;
    FieldElement eps = brute_unit(F.m);
    double sn = std::sqrt(static_cast<double>(n));
    double e1 = eps.embed(Embedding::v1).approx();
    double r = std::sqrt(static_cast<double>(F.m));
    double w1 = F.omega_kind == OmegaKind::half ? (1 + r) / 2 : r;
    double w2 = F.omega_kind == OmegaKind::half ? (1 - r) / 2 : -r;
    // v1 - v2 = b (w1 - w2)
    long bmax = static_cast<long>(std::ceil((sn * e1 + sn) / (w1 - w2))) + 1;
    QuadraticReal e1sq = eps.embed(Embedding::v1) * eps.embed(Embedding::v1);
    Rational rn(n);
    for (long b = -bmax; b <= bmax; ++b) {
        long alo = static_cast<long>(std::floor(-sn - b * w2)) - 1;
        long ahi = static_cast<long>(std::ceil(sn - b * w2)) + 1;
        for (long a = alo; a <= ahi; ++a) {
            FieldElement x = F.element(Rational(a), Rational(b));
            if (x.norm().abs() != rn) continue;
            QuadraticReal v1 = x.embed(Embedding::v1);
            QuadraticReal v2 = x.embed(Embedding::v2);
            if (v1.sign() <= 0) continue;
            QuadraticReal v1sq = v1 * v1;
            if ((v1sq - rn).sign() < 0) continue;
            if (!(v1sq < e1sq * rn)) continue;
            if (((v2 * v2) - rn).sign() > 0) continue;
            out.push_back(x);
        }
    }
    return out;
}

namespace {

ClassKey key_of(long n, const FieldElement& x) {
    return {n, x.a() - Rational(x.a().floor()), x.b() - Rational(x.b().floor())};
}

std::set<ClassKey> orbit_classes(const QuadField& F, long N, bool full) {
    std::set<ClassKey> out;
    FieldElement eps = brute_unit(F.m);
    FieldElement eps_inv = eps.inverse();
    for (long n = 1; n <= N; ++n) {
        for (const FieldElement& beta : canonical_elements(F, n)) {
            FieldElement inv = beta.inverse();
            if (full) {
                FieldElement x = inv;
                for (long k = 0; k < n * n + 1; ++k) {
                    out.insert(key_of(n, x));
                    out.insert(key_of(n, -x));
                    x = x * eps_inv;
                }
            } else {
                for (long k = -2; k <= 2; ++k) {
                    FieldElement u = F.integer(1);
                    for (long i = 0; i < std::labs(k); ++i) u = u * (k > 0 ? eps_inv : eps);
                    out.insert(key_of(n, inv * u));
                    out.insert(key_of(n, -(inv * u)));
                }
            }
        }
    }
    return out;
}

}  // namespace

std::set<ClassKey> brute_QN(const QuadField& F, long N) { return orbit_classes(F, N, true); }
std::set<ClassKey> box_QN(const QuadField& F, long N) { return orbit_classes(F, N, false); }

}  // namespace e2::oracle
