#pragma once

// Continued fractions over O_F from a covering certificate: each step is a
// division of length one or two whose last remainder beats the divisor's norm.

#include "e2/certificate.hpp"
#include "e2/geometry.hpp"
#include "e2/ring.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace e2 {

struct DivisionStage {
    FieldElement q;
    FieldElement r;
};

/// q1, r1, q2, r2, ... with r_{i-2} = q_i r_{i-1} + r_i, r_{-1} = alpha, r_0 = beta.
using DivisionChain = std::vector<DivisionStage>;

struct ContinuedFraction {
    std::vector<FieldElement> quotients;

    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

/// The certificate cannot answer a lookup; only happens for certificates the
/// verifier would reject.
struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// eval_cf hit a tail equal to zero. `index` is the position of that tail.
struct ZeroTailError : std::domain_error {
    ZeroTailError(std::size_t index);
    std::size_t index;
};

/// (xbar, gamma) with gamma integral, xbar = x - gamma, coordinates of xbar in [0, 1).
std::pair<FieldElement, FieldElement> reduce_mod_OF(const FieldElement& x);

/// Region lookup over a certificate. Regions are scanned largest first, and
/// a quadtree descent through the leaves finds the region directly unless
/// the point sits on a subdivision line.
class CertificateIndex {
public:
    /// Throws CertificateError when a region is malformed or m is invalid.
    explicit CertificateIndex(const Certificate& cert);

    const QuadField& field() const { return F_; }

    struct Entry {
        FieldElement center;
        FieldElement q1_base;
        FieldElement q2;
        Rational radius;  ///< 1 / |Nm(q2)|
    };
    const Entry& region(std::size_t i) const { return regions_[i]; }
    std::size_t region_count() const { return regions_.size(); }

    struct Hit {
        std::size_t region;
        FieldElement shift;  ///< integral; xbar + shift lies in the region
    };
    /// Throws CertificateError when no region contains xbar or a translate
    /// of it by coordinates in {0, +-1}.
    Hit locate(const FieldElement& xbar) const;

private:
    bool inside(std::size_t i, const FieldElement& x) const;
    std::optional<std::size_t> descend(const FieldElement& x) const;

    QuadField F_;
    std::vector<Entry> regions_;
    std::vector<std::size_t> scan_order_;
    std::unordered_map<std::string, std::size_t> leaves_;
    std::size_t max_depth_ = 0;
};

struct StepResult {
    FieldElement q1;
    FieldElement r1;
    std::optional<DivisionStage> second;
};

/// One decreasing step for alpha / beta: the rounded quotient when it already
/// reduces the norm (halves rounded toward 0), else the two quotients read
/// off the certificate. Throws std::domain_error for beta = 0.
StepResult two_stage_step(const FieldElement& alpha, const FieldElement& beta, const CertificateIndex& index);

/// alpha, beta integral with beta != 0.
DivisionChain division_chain(const FieldElement& alpha, const FieldElement& beta, const CertificateIndex& index);
ContinuedFraction cfrac(const FieldElement& alpha, const FieldElement& beta, const CertificateIndex& index);
ContinuedFraction quotients_of(const DivisionChain& chain);

FieldElement eval_cf(const ContinuedFraction& cf);

/// Stage identities, integrality, final zero remainder, eval_cf = alpha/beta,
/// and norm descent: the stages split into consecutive blocks of one or two
/// whose last remainder is smaller in norm than the divisor the block began with.
bool verify_chain(const FieldElement& alpha, const FieldElement& beta, const DivisionChain& chain);

/// `[e1; e2; ...]` with each e as `a/b,c/d`.
std::string format_cf(const ContinuedFraction& cf);
ContinuedFraction parse_cf(std::string_view text, long m);

}  // namespace e2
