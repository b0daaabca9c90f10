#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "frameforge/core.hpp"

namespace frameforge {

struct InadmissibleSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteEncountered : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FlowConfig {
    long max_iters = 200000;
    double initial_step = 0.05;
    double armijo_c = 1e-4;          // required decrease fraction, in (0,1)
    double backtrack_factor = 0.5;   // step shrink per rejection, in (0,1)
    Tolerances tolerances;
    long record_every = 100;         // telemetry stride
    /// Called on every recorded iterate (including iterate 0 and the terminal
    /// one) with the iteration number and current matrix. Test hook; unset by
    /// default.
    std::function<void(long, const FrameMatrix&)> observer;

    void validate() const;
};

enum class FlowOutcome { ConvergedToPF, ConvergedToCriticalPoint, IterationBudgetExhausted };

std::string flow_outcome_name(FlowOutcome o);

struct TraceSample {
    long iteration = 0;
    double energy = 0.0;
    double grad_norm = 0.0;
};

struct FlowReport {
    FrameMatrix terminal;
    long iterations = 0;
    double terminal_energy = 0.0;
    double terminal_grad_norm = 0.0;
    double parseval_residual = 0.0;  // ||FF* - I||_Fr
    double norm_residual = 0.0;      // max_i | ||f_i||^2 - r_i |
    FlowOutcome outcome = FlowOutcome::IterationBudgetExhausted;
    std::vector<TraceSample> trace;
    std::set<int> zero_column_indices;  // columns exactly zero at start and end
};

/// Gradient descent on the total frame energy with Armijo backtracking:
/// F <- F - t * grad, t accepted once the energy drops by at least
/// armijo_c * t * ||grad||^2. Terminates when the gradient norm falls below
/// grad_tol (outcome classified by the terminal residuals) or the iteration
/// budget runs out. Requires an admissible spec. Columns of F0 that are
/// exactly zero stay exactly zero in every iterate.
FlowReport descend(const FrameMatrix& F0, const NormSpec& spec, const FlowConfig& cfg);

/// d x n matrix with i.i.d. standard Gaussian entries (real and imaginary
/// parts separately for Field::Complex), deterministic per seed. Such a
/// matrix has full spark off a null set; callers wanting a certificate can
/// run it through is_full_spark and redraw on the measure-zero failure.
FrameMatrix random_full_spark_init(int d, int n, Field field, std::uint64_t seed);

}  // namespace frameforge
