#pragma once

#include <string>
#include <vector>

#include "frameforge/core.hpp"

namespace frameforge {

/// Per-level table and best uniform constant for the bound
/// k_ell(r) >= c * n * ell / d over ell = 1..d-1. c_best is the largest
/// valid c (exact minimum of k_ell * d / (n * ell)); c_floor is the
/// universal fallback d^2 / (n (d-1)), valid for any admissible r with d > 1.
struct AnsatzConstant {
    Rational c_best;
    Rational c_floor;
    struct Level {
        int ell = 0;
        int k_ell = 0;
        Rational ratio;  // k_ell * d / (n * ell)
    };
    std::vector<Level> per_ell;
};

struct ConnectivityCertificate {
    Field field = Field::Real;
    int q = 0;
    Rational c_used;
    Rational condition_c;  // required lower bound on c
    Rational condition_d;  // required lower bound on d
    bool certified = false;
    std::string reason;
};

/// min{ k : sum of the k largest r_i > ell }, exact rationals, strict
/// inequality. Requires 0 <= ell <= d-1 and an admissible spec.
int k_ell(const NormSpec& spec, int ell);

/// Requires d >= 2 and an admissible spec.
AnsatzConstant best_ansatz_constant(const NormSpec& spec);

/// Complex dimension ell*(d-ell) + k*ell + (n-k)*d of the stratum of frames
/// whose k chosen columns lie in an ell-dimensional subspace.
long stratum_dimension(int d, int n, int ell, int k);

/// Lower bound on the codimension of the unstable locus, with c = c_best:
/// min{d, (c n - d)(d-1)/d} over the reals for real frames, and twice that
/// for complex frames viewed as real. Requires d >= 2 and an admissible spec.
Rational codimension_bound(const NormSpec& spec, Field field);

/// Sufficient-condition certificate for q-connectedness of the space of
/// Parseval frames with norms r. Real: c >= (d/n)(q+d+1)/(d-1) and
/// d >= q+2. Complex: c >= (d/2n)(q+d)/(d-1) and d >= (q+2)/2, evaluated at
/// c = c_best. "Not certified" never asserts disconnectedness; the
/// conditions are sufficient only.
ConnectivityCertificate certify_connectivity(const NormSpec& spec, Field field, int q);

struct NeighborhoodCertificate {
    bool certified = false;
    Rational c_used;
    Rational condition_c;  // (d/n)(2d/(d-1))
    std::string reason;
};

/// Certifies that every admissible spec in some epsilon-neighborhood of r
/// yields a path-connected real frame space (epsilon exists but is not
/// computed). Equal-norm specs are certified against the classical constant
/// c = 1; other specs against c_best. Requires d >= 2 and an admissible spec.
NeighborhoodCertificate certify_neighborhood_connectivity(const NormSpec& spec);

/// Smallest n such that the equal-norm spec (d/n,...,d/n) earns a
/// q-connectedness certificate, scanning n upward from d. Requires the
/// field-dependent dimension threshold (d >= q+2 real, 2d >= q+2 complex).
int min_n_for_q_connected(int d, Field field, int q);

}  // namespace frameforge
