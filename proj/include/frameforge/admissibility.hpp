#pragma once

#include <optional>
#include <vector>

#include "frameforge/core.hpp"

namespace frameforge {

// d x n Parseval frames with ||f_i||^2 = r_i exist precisely when
// sum r_i = d and the top-k partial sums of r stay <= k for k < d
// (Schur-Horn). Everything here is exact rational arithmetic; floating
// point never participates in these verdicts.
struct AdmissibilityVerdict {
    bool admissible = false;
    Rational sum_r;
    /// Smallest k in [1, d-1] with sum of the k largest r_i > k, if any.
    std::optional<int> first_violated_k;
    /// Partial sum at the first violation (exact), if any.
    std::optional<Rational> violated_partial_sum;
    /// Permutation of 0..n-1 sorting r into non-increasing order; ties keep
    /// original index order (stable sort).
    std::vector<int> sorted_order;
};

/// Integer weights s with s_i/s_j = r_i/r_j, built by clearing denominators:
/// s_i = r_i * lcm{denominators} / gcd{numerators}. S is the product of all s_i.
struct SVector {
    std::vector<mpz_class> s;
    mpz_class S;
};

AdmissibilityVerdict check_admissible(const NormSpec& spec);

SVector build_s_vector(const NormSpec& spec);

}  // namespace frameforge
