#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "frameforge/core.hpp"

namespace frameforge {

struct CombinatorialBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenDecompositionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SparkVerdict {
    bool full_spark = false;
    /// Column indices of the worst-conditioned d x d minor.
    std::set<int> worst_minor;
    /// Smallest sigma_min / sigma_max over all d x d minors (0 for a
    /// singular or zero minor). full_spark iff this exceeds spark_tol.
    double worst_sigma_min = 0.0;
};

/// A subset of columns whose prescribed weight exceeds the dimension of its
/// span. Existence of such a witness is exactly failure of semistability.
struct StabilityWitness {
    std::set<int> indices;
    int witness_rank = 0;      // numerical rank of the indexed columns
    Rational weight_sum;       // sum of r_i over the subset, exact
    /// True when some singular value of the witness submatrix falls within a
    /// factor of 10 of the rank cutoff, i.e. the rank decision is borderline.
    bool fragile = false;
};

struct StabilityVerdict {
    bool semistable = true;
    std::optional<StabilityWitness> witness;
};

enum class CriticalPointKind { GlobalMinimumPF, BlockwiseTight, WithZeroColumns, NotCritical };

std::string critical_point_kind_name(CriticalPointKind k);

struct CriticalBlock {
    std::set<int> columns;   // indices sharing one frame-operator eigenvalue
    double eigenvalue = 0.0;
    int subspace_dim = 0;    // dimension of the span of the block's columns
};

struct CriticalPointClass {
    CriticalPointKind kind = CriticalPointKind::NotCritical;
    std::vector<CriticalBlock> blocks;  // eigenvalues strictly decreasing
    std::set<int> zero_columns;         // ||f_i||^2 below residual_tol^2
    double grad_norm = 0.0;
};

/// Checks every d x d column minor. Enumeration is guarded: C(n,d) must not
/// exceed 10^6.
SparkVerdict is_full_spark(const FrameMatrix& F, const Tolerances& tol);

/// Semistability oracle: F is unstable iff some column subset I has
/// sum_{i in I} r_i > rank(span{f_i : i in I}). Subsets are enumerated in
/// lexicographic order of their characteristic vectors (b_1,...,b_n), so the
/// reported witness is the first one in that order; subsets provably unable
/// to witness (weight below a cached rank lower bound of a sub-subset) are
/// skipped without a rank computation. Ranks come from singular values
/// thresholded at rank_tol relative to the largest; the weight-vs-rank
/// comparison is exact rational-vs-integer. Guard: n <= 24.
StabilityVerdict check_property_S(const FrameMatrix& F, const NormSpec& spec, const Tolerances& tol);

/// Classifies a candidate critical point of the total frame energy. A point
/// with gradient norm below grad_tol is either a global minimum (Parseval
/// with the prescribed norms), or a blockwise tight frame whose blocks are
/// the eigenspaces of FF* (eigenvalues clustered at relative gap
/// cluster_gap), possibly together with zero columns. Each nonzero column's
/// block eigenvalue must match (1/4)(4 + 1/r_i - ||f_i||^2/r_i^2) within
/// residual_tol.
CriticalPointClass classify_critical_point(const FrameMatrix& F, const NormSpec& spec, const Tolerances& tol,
                                           double cluster_gap = 1e-6);

}  // namespace frameforge
