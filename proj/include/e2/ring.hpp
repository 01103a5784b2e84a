#pragma once

// Arithmetic of the ring of integers Z + Z*omega: units, ideal generators,
// splitting of primes and the class-number-one test.

#include "e2/field.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace e2 {

struct ClassNumberError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Builds Q(sqrt(m)); throws std::invalid_argument unless m >= 2 is squarefree.
QuadField make_field(long m);

/// Smallest unit eps with v1(eps) > 1.
FieldElement fundamental_unit(long m);

/// The unique associate y = +-eps^k x with sqrt(n) <= v1(y) < sqrt(n) v1(eps),
/// n = |Nm(x)|. Throws std::domain_error for x = 0 and std::invalid_argument
/// for non-integral x.
FieldElement canonical_associate(const QuadField& F, const FieldElement& x);

struct IdealGen {
    FieldElement generator;  ///< canonical associate
    long norm = 0;
};

/// Generator of the primitive ideal [a, (b + sqrt(disc))/2], found by walking
/// the reduced-ideal cycle. std::nullopt when the ideal is not principal.
std::optional<FieldElement> principal_generator(const QuadField& F, long a, long b);

/// Every ideal of norm exactly n, one canonical generator each, sorted by (a, b).
/// Throws ClassNumberError if one of them is not principal.
std::vector<IdealGen> ideals_of_norm(const QuadField& F, long n);

/// Every nonzero ideal of norm <= N, sorted by (norm, a, b).
std::vector<IdealGen> ideals_up_to(const QuadField& F, long N);

enum class Splitting { inert, split, ramified };

Splitting splitting_type(const QuadField& F, long p);
bool is_prime(long n);
bool class_number_is_one(const QuadField& F);

}  // namespace e2
