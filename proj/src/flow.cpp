#include "frameforge/flow.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "frameforge/admissibility.hpp"
#include "frameforge/energy.hpp"

namespace frameforge {

void FlowConfig::validate() const {
    if (max_iters <= 0 || initial_step <= 0 || record_every <= 0)
        throw std::invalid_argument("FlowConfig: max_iters, initial_step, record_every must be positive");
    if (armijo_c <= 0 || armijo_c >= 1 || backtrack_factor <= 0 || backtrack_factor >= 1)
        throw std::invalid_argument("FlowConfig: armijo_c and backtrack_factor must lie in (0,1)");
    tolerances.validate();
}

std::string flow_outcome_name(FlowOutcome o) {
    switch (o) {
        case FlowOutcome::ConvergedToPF: return "ConvergedToPF";
        case FlowOutcome::ConvergedToCriticalPoint: return "ConvergedToCriticalPoint";
        case FlowOutcome::IterationBudgetExhausted: return "IterationBudgetExhausted";
    }
    return "?";
}

namespace {

bool column_exactly_zero(const Eigen::MatrixXcd& m, Eigen::Index j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        if (m(i, j).real() != 0.0 || m(i, j).imag() != 0.0) return false;
    return true;
}

void require_finite(const FrameMatrix& F, long iter) {
    if (F.entries.allFinite()) return;
    std::ostringstream msg;
    msg << "non-finite entry in iterate " << iter << " (" << F.d() << "x" << F.n()
        << " " << field_name(F.field) << " matrix)";
    throw NonFiniteEncountered(msg.str());
}

}  // namespace

FlowReport descend(const FrameMatrix& F0, const NormSpec& spec, const FlowConfig& cfg) {
    cfg.validate();
    if (F0.n() != spec.n() || F0.d() != spec.d)
        throw std::invalid_argument("descend: frame/spec dimension mismatch");
    if (!F0.entries.allFinite()) throw NonFiniteEncountered("descend: initial matrix has non-finite entries");

    const AdmissibilityVerdict adm = check_admissible(spec);
    if (!adm.admissible) {
        std::ostringstream msg;
        msg << "spec is not admissible: sum of r is " << adm.sum_r << " (d = " << spec.d << ")";
        if (adm.first_violated_k)
            msg << "; top-" << *adm.first_violated_k << " partial sum " << *adm.violated_partial_sum << " exceeds "
                << *adm.first_violated_k;
        throw InadmissibleSpec(msg.str());
    }

    FlowReport report;
    for (Eigen::Index j = 0; j < F0.n(); ++j)
        if (column_exactly_zero(F0.entries, j)) report.zero_column_indices.insert(static_cast<int>(j));

    FrameMatrix F = F0;
    double E = energy(F, spec).total;
    FrameMatrix G = gradient(F, spec);
    double grad_norm = G.entries.norm();
    if (!std::isfinite(E) || !std::isfinite(grad_norm))
        throw NonFiniteEncountered("descend: energy or gradient overflows at the initial matrix");

    long iter = 0;
    long last_recorded = -1;
    const auto record = [&](long k) {
        if (k == last_recorded) return;
        report.trace.push_back({k, E, grad_norm});
        last_recorded = k;
        if (cfg.observer) cfg.observer(k, F);
    };
    record(0);

    bool stalled = false;
    while (grad_norm >= cfg.tolerances.grad_tol && iter < cfg.max_iters) {
        const double slope = grad_norm * grad_norm;
        double t = cfg.initial_step;
        FrameMatrix trial(F.field, Eigen::MatrixXcd{});
        double trial_energy = 0.0;
        bool accepted = false;
        while (t > cfg.initial_step * 1e-20) {
            trial.entries = F.entries - t * G.entries;
            trial_energy = energy(trial, spec).total;
            if (std::isfinite(trial_energy)) {
                const double required = cfg.armijo_c * t * slope;
                const double resolution = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(E);
                // Near a positive-energy critical point the true per-step
                // decrease drops below one ulp of E and the measured energy
                // carries no descent information; there the comparison only
                // needs to rule out genuine ascent. The exact descent is
                // guaranteed by the direction as long as the step is not
                // rejected for leaving the noise band.
                if (trial_energy <= E - required || (required <= resolution && trial_energy <= E + resolution)) {
                    accepted = true;
                    break;
                }
            }
            t *= cfg.backtrack_factor;
        }
        if (!accepted) {
            // No representable step decreases the energy; treat as terminal.
            stalled = true;
            break;
        }
        F.entries.swap(trial.entries);
        E = std::min(E, trial_energy);  // monotone estimate of the true energy
        G = gradient(F, spec);
        grad_norm = G.entries.norm();
        require_finite(F, iter + 1);
        if (!std::isfinite(grad_norm)) {
            std::ostringstream msg;
            msg << "non-finite gradient at iteration " << iter + 1;
            throw NonFiniteEncountered(msg.str());
        }
        ++iter;
        if (iter % cfg.record_every == 0) record(iter);
    }
    record(iter);
    (void)stalled;

    report.terminal = std::move(F);
    report.iterations = iter;
    report.terminal_energy = E;
    report.terminal_grad_norm = grad_norm;
    report.parseval_residual = parseval_residual(report.terminal);
    report.norm_residual = norm_residual(report.terminal, spec);

    if (iter >= cfg.max_iters && grad_norm >= cfg.tolerances.grad_tol) {
        report.outcome = FlowOutcome::IterationBudgetExhausted;
    } else if (report.parseval_residual < cfg.tolerances.residual_tol &&
               report.norm_residual < cfg.tolerances.residual_tol) {
        report.outcome = FlowOutcome::ConvergedToPF;
    } else {
        report.outcome = FlowOutcome::ConvergedToCriticalPoint;
    }
    return report;
}

FrameMatrix random_full_spark_init(int d, int n, Field field, std::uint64_t seed) {
    if (d < 1 || n < d) throw std::invalid_argument("random_full_spark_init: need 1 <= d <= n");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd m(d, n);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double re = gauss(rng);
            const double im = field == Field::Complex ? gauss(rng) : 0.0;
            m(i, j) = {re, im};
        }
    return FrameMatrix(field, std::move(m));
}

}  // namespace frameforge
