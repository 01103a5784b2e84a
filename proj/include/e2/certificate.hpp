#pragma once

// Covering certificates: the region list Z plus a quadtree leaf assignment
// over R0. The verifier here only uses exact arithmetic, the ring and the
// geometry; it never calls into the covering search.

#include "e2/rational.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace e2 {

struct CertRegion {
    Rational center_a;
    Rational center_b;
    Rational q2_a;
    Rational q2_b;

    friend bool operator==(const CertRegion&, const CertRegion&) = default;
};

struct CertLeaf {
    std::string path;  ///< quadrant digits from R0
    long region = 0;   ///< index into Certificate::regions

    friend bool operator==(const CertLeaf&, const CertLeaf&) = default;
};

struct Certificate {
    long m = 0;
    long disc = 0;
    long T = 0;
    long N = 0;
    std::vector<CertRegion> regions;
    std::vector<CertLeaf> leaves;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Syntax or structure errors in certificate text. line/column are 1-based.
struct CertificateParseError : std::runtime_error {
    CertificateParseError(const std::string& what, std::size_t line, std::size_t column);
    std::size_t line;
    std::size_t column;
};

inline constexpr const char* certificate_extension = ".e2cert.json";

/// Canonical compact JSON; byte equality of outputs is equality of certificates.
std::string serialize(const Certificate& cert);
Certificate deserialize(std::string_view text);

struct VerificationReport {
    bool accepted = false;
    int check = 0;       ///< 1-4, the check that failed; 0 when accepted
    std::string reason;
    std::string locus;   ///< e.g. "regions[3]" or "leaf 0213"
};

/// Runs the four checks in order and stops at the first failure:
/// (1) m squarefree (and disc consistent), (2) regions well formed,
/// (3) leaves are a complete prefix-free partition with indices in range,
/// (4) every leaf box lies inside its region.
VerificationReport verify_certificate(const Certificate& cert);

struct SmoothnessReport {
    long m = 0;
    long disc = 0;
    Integer max_denominator_norm;
    long region_count = 0;
    long max_depth = 0;
    long ennola_floor = 0;

    static constexpr const char* csv_header = "m,disc,max_denominator_norm,region_count,max_depth,ennola_floor";
    std::string csv_row() const;
};

SmoothnessReport smoothness_report(const Certificate& cert);

/// Least n with disc <= (16 + 6 sqrt 6)^2 lcm(1..n)^4, compared exactly in
/// Q(sqrt 6). Throws std::invalid_argument for disc < 5.
long ennola_floor(const Integer& disc);

}  // namespace e2
