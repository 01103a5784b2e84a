#include "e2/certificate.hpp"

#include "e2/geometry.hpp"
#include "e2/ring.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

namespace e2 {

using ojson = nlohmann::ordered_json;

CertificateParseError::CertificateParseError(const std::string& what, std::size_t line_, std::size_t column_)
    : std::runtime_error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + what),
      line(line_),
      column(column_) {}

namespace {

ojson pair_json(const Rational& a, const Rational& b) { return ojson::array({a.str(), b.str()}); }

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

std::string serialize(const Certificate& cert) {
    ojson j;
    j["m"] = cert.m;
    j["disc"] = cert.disc;
    j["T"] = cert.T;
    j["N"] = cert.N;
    ojson regions = ojson::array();
    for (const CertRegion& r : cert.regions) {
        ojson o;
        o["center"] = pair_json(r.center_a, r.center_b);
        o["q2"] = pair_json(r.q2_a, r.q2_b);
        regions.push_back(std::move(o));
    }
    j["regions"] = std::move(regions);
    ojson leaves = ojson::array();
    for (const CertLeaf& l : cert.leaves) {
        ojson o;
        o["path"] = l.path;
        o["region"] = l.region;
        leaves.push_back(std::move(o));
    }
    j["leaves"] = std::move(leaves);
    return j.dump() + "\n";
}

Certificate deserialize(std::string_view text) {
    ojson j;
    try {
        j = ojson::parse(text.begin(), text.end());
    } catch (const ojson::parse_error& e) {
        auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw CertificateParseError("malformed JSON", line, col);
    }
    // Structure errors have no precise position in the DOM; report the start.
    auto fail = [](const std::string& what) -> CertificateParseError { return CertificateParseError(what, 1, 1); };
    auto integer_field = [&](const ojson& o, const char* key) -> long {
        if (!o.is_object() || !o.contains(key)) throw fail(std::string("missing key '") + key + "'");
        const ojson& v = o.at(key);
        if (!v.is_number_integer()) throw fail(std::string("key '") + key + "' must be an integer");
        return v.get<long>();
    };
    auto rational_pair = [&](const ojson& o, const char* key, const std::string& where) {
        if (!o.contains(key) || !o.at(key).is_array() || o.at(key).size() != 2)
            throw fail(where + "." + key + " must be an array of two rational strings");
        std::pair<Rational, Rational> out;
        for (int i = 0; i < 2; ++i) {
            const ojson& v = o.at(key)[i];
            if (!v.is_string()) throw fail(where + "." + key + " entries must be strings");
            try {
                (i == 0 ? out.first : out.second) = Rational::parse(v.get<std::string>());
            } catch (const std::exception& e) {
                throw fail(where + "." + key + ": " + e.what());
            }
        }
        return out;
    };

    if (!j.is_object()) throw fail("certificate must be a JSON object");
    Certificate cert;
    cert.m = integer_field(j, "m");
    cert.disc = integer_field(j, "disc");
    cert.T = integer_field(j, "T");
    cert.N = integer_field(j, "N");
    if (!j.contains("regions") || !j["regions"].is_array()) throw fail("missing array 'regions'");
    if (!j.contains("leaves") || !j["leaves"].is_array()) throw fail("missing array 'leaves'");
    std::size_t i = 0;
    for (const ojson& r : j["regions"]) {
        std::string where = "regions[" + std::to_string(i++) + "]";
        if (!r.is_object()) throw fail(where + " must be an object");
        auto [ca, cb] = rational_pair(r, "center", where);
        auto [qa, qb] = rational_pair(r, "q2", where);
        cert.regions.push_back({ca, cb, qa, qb});
    }
    i = 0;
    for (const ojson& l : j["leaves"]) {
        std::string where = "leaves[" + std::to_string(i++) + "]";
        if (!l.is_object() || !l.contains("path") || !l["path"].is_string()) throw fail(where + ".path must be a string");
        cert.leaves.push_back({l["path"].get<std::string>(), integer_field(l, "region")});
    }
    return cert;
}

// ---------------------------------------------------------------- verifier

namespace {

VerificationReport reject(int check, std::string reason, std::string locus) {
    return {false, check, std::move(reason), std::move(locus)};
}

std::string leaf_locus(const std::string& path) { return "leaf " + (path.empty() ? std::string("(root)") : path); }

/// Check (3) on the sorted leaves [lo, hi) sharing prefix `prefix`.
std::optional<VerificationReport> check_partition(const std::vector<const CertLeaf*>& s, std::size_t lo,
                                                  std::size_t hi, std::string& prefix) {
    if (lo == hi) return reject(3, "partition is incomplete: no leaf covers this box", leaf_locus(prefix));
    if (s[lo]->path.size() == prefix.size()) {
        if (hi - lo > 1)
            return reject(3, "leaf path is a prefix of another leaf (overlap)", leaf_locus(s[lo]->path));
        return std::nullopt;
    }
    std::size_t cur = lo;
    for (char q = '0'; q <= '3'; ++q) {
        std::size_t end = cur;
        while (end < hi && s[end]->path[prefix.size()] == q) ++end;
        prefix.push_back(q);
        auto r = check_partition(s, cur, end, prefix);
        prefix.pop_back();
        if (r) return r;
        cur = end;
    }
    return std::nullopt;
}

struct VRegion {
    Point2 center;
    Rational radius;
};

std::optional<VerificationReport> check_leaves(const std::vector<const CertLeaf*>& s, std::size_t lo,
                                               std::size_t hi, std::size_t depth, const Box& box,
                                               const std::vector<VRegion>& regions) {
    if (hi - lo == 1 && s[lo]->path.size() == depth) {
        const VRegion& r = regions[s[lo]->region];
        if (!hyperbola_contains_box(r.center, r.radius, box))
            return reject(4, "leaf box is not inside region " + std::to_string(s[lo]->region), leaf_locus(s[lo]->path));
        return std::nullopt;
    }
    auto kids = subdivide(box);
    std::size_t cur = lo;
    for (int q = 0; q < 4; ++q) {
        std::size_t end = cur;
        while (end < hi && s[end]->path[depth] == '0' + q) ++end;
        auto r = check_leaves(s, cur, end, depth + 1, kids[q], regions);
        if (r) return r;
        cur = end;
    }
    return std::nullopt;
}

}  // namespace

VerificationReport verify_certificate(const Certificate& cert) {
    // (1)
    if (cert.m < 2 || !is_squarefree(cert.m)) return reject(1, "m is not a squarefree integer >= 2", "m");
    QuadField F = make_field(cert.m);
    if (cert.disc != F.disc)
        return reject(1, "disc " + std::to_string(cert.disc) + " does not match m (expected " + std::to_string(F.disc) + ")",
                      "disc");

    // (2)
    std::vector<VRegion> regions;
    regions.reserve(cert.regions.size());
    for (std::size_t i = 0; i < cert.regions.size(); ++i) {
        const CertRegion& r = cert.regions[i];
        std::string locus = "regions[" + std::to_string(i) + "]";
        FieldElement q2 = F.element(r.q2_a, r.q2_b);
        FieldElement center = F.element(r.center_a, r.center_b);
        if (q2.is_zero()) return reject(2, "q2 is zero", locus);
        if (!q2.is_integral()) return reject(2, "q2 is not integral", locus);
        if (!(center - q2.inverse()).is_integral()) return reject(2, "center - 1/q2 is not integral", locus);
        regions.push_back({embed(center), Rational(Integer(1), q2.norm().abs().numerator())});
    }

    // (3)
    std::vector<const CertLeaf*> sorted;
    sorted.reserve(cert.leaves.size());
    for (const CertLeaf& l : cert.leaves) {
        if (l.path.find_first_not_of("0123") != std::string::npos)
            return reject(3, "leaf path has a digit outside 0-3", leaf_locus(l.path));
        if (l.region < 0 || static_cast<std::size_t>(l.region) >= regions.size())
            return reject(3, "region index " + std::to_string(l.region) + " out of range", leaf_locus(l.path));
        sorted.push_back(&l);
    }
    std::sort(sorted.begin(), sorted.end(), [](const CertLeaf* a, const CertLeaf* b) { return a->path < b->path; });
    std::string prefix;
    if (auto r = check_partition(sorted, 0, sorted.size(), prefix)) return *r;

    // (4)
    if (auto r = check_leaves(sorted, 0, sorted.size(), 0, fundamental_box(F), regions)) return *r;
    return {true, 0, "accepted", ""};
}

// ---------------------------------------------------------------- reports

std::string SmoothnessReport::csv_row() const {
    return std::to_string(m) + "," + std::to_string(disc) + "," + max_denominator_norm.get_str() + "," +
           std::to_string(region_count) + "," + std::to_string(max_depth) + "," + std::to_string(ennola_floor);
}

SmoothnessReport smoothness_report(const Certificate& cert) {
    SmoothnessReport rep;
    rep.m = cert.m;
    rep.disc = cert.disc;
    rep.max_denominator_norm = 0;
    for (const CertRegion& r : cert.regions) {
        FieldElement q2(r.q2_a, r.q2_b, cert.m);
        Integer n = q2.norm().abs().numerator();
        if (n > rep.max_denominator_norm) rep.max_denominator_norm = n;
    }
    std::set<long> used;
    for (const CertLeaf& l : cert.leaves) {
        used.insert(l.region);
        rep.max_depth = std::max(rep.max_depth, static_cast<long>(l.path.size()));
    }
    rep.region_count = static_cast<long>(used.size());
    rep.ennola_floor = ennola_floor(Integer(cert.disc));
    return rep;
}

long ennola_floor(const Integer& disc) {
    if (disc < 5) throw std::invalid_argument("ennola_floor needs disc >= 5");
    Integer t = 1;
    for (long n = 1;; ++n) {
        t = lcm(t, Integer(n));
        Integer t4 = t * t * t * t;
        // (472 + 192 sqrt 6) t^4 - disc >= 0
        QuadraticReal bound(Rational(Integer(472 * t4 - disc)), Rational(Integer(192 * t4)), 6);
        if (bound.sign() >= 0) return n;
    }
}

}  // namespace e2
