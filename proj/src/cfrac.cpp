#include "e2/cfrac.hpp"

#include <algorithm>

namespace e2 {

ZeroTailError::ZeroTailError(std::size_t index_)
    : std::domain_error("continued fraction tail starting at index " + std::to_string(index_) + " is zero"),
      index(index_) {}

std::pair<FieldElement, FieldElement> reduce_mod_OF(const FieldElement& x) {
    long m = x.radicand();
    FieldElement gamma(Rational(x.a().floor()), Rational(x.b().floor()), m);
    return {x - gamma, gamma};
}

// ---------------------------------------------------------------- index

CertificateIndex::CertificateIndex(const Certificate& cert) : F_([&] {
    if (cert.m < 2 || !is_squarefree(cert.m)) throw CertificateError("certificate m is not squarefree");
    return make_field(cert.m);
}()) {
    for (std::size_t i = 0; i < cert.regions.size(); ++i) {
        const CertRegion& r = cert.regions[i];
        FieldElement q2 = F_.element(r.q2_a, r.q2_b);
        if (q2.is_zero() || !q2.is_integral())
            throw CertificateError("regions[" + std::to_string(i) + "] has a bad denominator");
        FieldElement center = F_.element(r.center_a, r.center_b);
        FieldElement base = center - q2.inverse();
        if (!base.is_integral()) throw CertificateError("regions[" + std::to_string(i) + "] has no integral q1");
        regions_.push_back({center, base, q2, Rational(Integer(1), q2.norm().abs().numerator())});
    }
    scan_order_.resize(regions_.size());
    for (std::size_t i = 0; i < regions_.size(); ++i) scan_order_[i] = i;
    std::stable_sort(scan_order_.begin(), scan_order_.end(),
                     [&](std::size_t a, std::size_t b) { return regions_[a].radius > regions_[b].radius; });
    for (const CertLeaf& l : cert.leaves) {
        if (l.region < 0 || static_cast<std::size_t>(l.region) >= regions_.size()) continue;
        leaves_.emplace(l.path, static_cast<std::size_t>(l.region));
        max_depth_ = std::max(max_depth_, l.path.size());
    }
}

bool CertificateIndex::inside(std::size_t i, const FieldElement& x) const {
    return (x - regions_[i].center).norm().abs() < regions_[i].radius;
}

std::optional<std::size_t> CertificateIndex::descend(const FieldElement& x) const {
    Point2 p = embed(x);
    Box box = fundamental_box(F_);
    if (!box.contains(p)) return std::nullopt;
    std::string path;
    const Rational half(Integer(1), Integer(2));
    for (;;) {
        auto it = leaves_.find(path);
        if (it != leaves_.end()) {
            if (inside(it->second, x)) return it->second;
            return std::nullopt;
        }
        if (path.size() >= max_depth_) return std::nullopt;
        QuadraticReal xm = (box.x0 + box.x1) * half;
        QuadraticReal ym = (box.y0 + box.y1) * half;
        if (p.x == xm || p.y == ym) return std::nullopt;  // on a subdivision line
        int q = (p.x > xm ? 1 : 0) + (p.y > ym ? 2 : 0);
        path.push_back(static_cast<char>('0' + q));
        box = subdivide(box)[q];
    }
}

CertificateIndex::Hit CertificateIndex::locate(const FieldElement& xbar) const {
    FieldElement zero = F_.integer(0);
    if (auto r = descend(xbar)) return {*r, zero};
    for (std::size_t i : scan_order_)
        if (inside(i, xbar)) return {i, zero};
    for (long a : {0, 1, -1}) {
        for (long b : {0, 1, -1}) {
            if (a == 0 && b == 0) continue;
            FieldElement g = F_.element(Rational(a), Rational(b));
            FieldElement y = xbar + g;
            for (std::size_t i : scan_order_)
                if (inside(i, y)) return {i, g};
        }
    }
    throw CertificateError("no certificate region contains " + xbar.str());
}

// ---------------------------------------------------------------- chains

StepResult two_stage_step(const FieldElement& alpha, const FieldElement& beta, const CertificateIndex& index) {
    if (beta.is_zero()) throw std::domain_error("division by zero");
    const QuadField& F = index.field();
    FieldElement x = alpha / beta;
    Rational nb = beta.norm().abs();

    FieldElement q_round = F.element(Rational(x.a().round_half_toward_zero()), Rational(x.b().round_half_toward_zero()));
    FieldElement r_round = alpha - q_round * beta;
    if (r_round.norm().abs() < nb) return {q_round, r_round, std::nullopt};

    auto [xbar, gamma] = reduce_mod_OF(x);
    CertificateIndex::Hit hit = index.locate(xbar);
    const CertificateIndex::Entry& reg = index.region(hit.region);
    FieldElement q1 = reg.q1_base + gamma - hit.shift;
    FieldElement r1 = alpha - q1 * beta;
    FieldElement r2 = beta - reg.q2 * r1;
    return {q1, r1, DivisionStage{reg.q2, r2}};
}

DivisionChain division_chain(const FieldElement& alpha, const FieldElement& beta, const CertificateIndex& index) {
    if (beta.is_zero()) throw std::domain_error("division by zero");
    if (!alpha.is_integral() || !beta.is_integral()) throw std::invalid_argument("cfrac needs integral alpha and beta");
    DivisionChain chain;
    FieldElement a = alpha;
    FieldElement b = beta;
    for (;;) {
        StepResult s = two_stage_step(a, b, index);
        chain.push_back({s.q1, s.r1});
        if (s.r1.is_zero()) return chain;
        if (!s.second) {
            a = b;
            b = s.r1;
            continue;
        }
        chain.push_back(*s.second);
        if (s.second->r.is_zero()) return chain;
        a = s.r1;
        b = s.second->r;
    }
}

ContinuedFraction quotients_of(const DivisionChain& chain) {
    ContinuedFraction cf;
    for (const DivisionStage& s : chain) cf.quotients.push_back(s.q);
    return cf;
}

ContinuedFraction cfrac(const FieldElement& alpha, const FieldElement& beta, const CertificateIndex& index) {
    return quotients_of(division_chain(alpha, beta, index));
}

FieldElement eval_cf(const ContinuedFraction& cf) {
    if (cf.quotients.empty()) throw std::invalid_argument("empty continued fraction");
    std::size_t i = cf.quotients.size() - 1;
    FieldElement t = cf.quotients[i];
    while (i > 0) {
        if (t.is_zero()) throw ZeroTailError(i);
        --i;
        t = cf.quotients[i] + t.inverse();
    }
    return t;
}

bool verify_chain(const FieldElement& alpha, const FieldElement& beta, const DivisionChain& chain) {
    if (chain.empty() || beta.is_zero()) return false;
    std::vector<FieldElement> r{alpha, beta};  // r[i + 1] is r_i
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const DivisionStage& s = chain[i];
        if (s.q.radicand() != beta.radicand() || s.r.radicand() != beta.radicand()) return false;
        if (!s.q.is_integral() || !s.r.is_integral()) return false;
        if (!(r[i] == s.q * r[i + 1] + s.r)) return false;
        bool last = i + 1 == chain.size();
        if (s.r.is_zero() != last) return false;
        r.push_back(s.r);
    }

    // ok[s]: stages s.. (0-based) split into decreasing blocks.
    const std::size_t n = chain.size();
    std::vector<Rational> norm(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) norm[i] = r[i].norm().abs();
    std::vector<char> ok(n + 2, 0);
    ok[n] = 1;
    for (std::size_t s = n; s-- > 0;) {
        // stage s divides by r_{s-1} = r[s]; its remainder is r[s + 2]
        bool one = norm[s + 2] < norm[s + 1] && ok[s + 1];
        bool two = s + 1 < n && norm[s + 3] < norm[s + 1] && ok[s + 2];
        ok[s] = one || two;
    }
    if (!ok[0]) return false;

    try {
        return eval_cf(quotients_of(chain)) == alpha / beta;
    } catch (const ZeroTailError&) {
        return false;
    }
}

std::string format_cf(const ContinuedFraction& cf) {
    std::string out = "[";
    for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
        if (i) out += "; ";
        out += cf.quotients[i].str();
    }
    return out + "]";
}

ContinuedFraction parse_cf(std::string_view text, long m) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        throw std::invalid_argument("continued fraction must look like '[e1; e2; ...]'");
    std::string_view body = text.substr(1, text.size() - 2);
    ContinuedFraction cf;
    for (;;) {
        auto sep = body.find("; ");
        cf.quotients.push_back(FieldElement::parse(body.substr(0, sep), m));
        if (sep == std::string_view::npos) break;
        body.remove_prefix(sep + 2);
    }
    return cf;
}

}  // namespace e2
