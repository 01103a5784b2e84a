#pragma once

// Single-field corruptions of a genuine certificate, each with the check
// number and locus the verifier has to report.

#include "e2/certificate.hpp"

#include <string>
#include <vector>

namespace e2::testing {

struct Mutation {
    std::string name;
    Certificate cert;
    int check;
    std::string locus;
};

/// Needs a certificate with at least two regions and at least four leaves.
std::vector<Mutation> mutations_of(const Certificate& genuine);

/// Locus of the first leaf (in path order) whose box is not inside its
/// region, computed directly with the geometry predicates.
std::string first_uncovered_leaf(const Certificate& cert);

}  // namespace e2::testing
