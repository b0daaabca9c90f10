#include "frameforge/energy.hpp"

#include <stdexcept>

namespace frameforge {

namespace {

void require_matching_sizes(const FrameMatrix& F, const NormSpec& spec, const char* who) {
    if (F.n() != spec.n() || F.d() != spec.d)
        throw std::invalid_argument(std::string(who) + ": frame is " + std::to_string(F.d()) + "x" +
                                    std::to_string(F.n()) + " but spec prescribes d=" + std::to_string(spec.d) +
                                    ", n=" + std::to_string(spec.n()));
}

}  // namespace

EnergyBreakdown energy(const FrameMatrix& F, const NormSpec& spec) {
    require_matching_sizes(F, spec, "energy");
    EnergyBreakdown out;
    out.parseval_term = frobenius_distance_to_identity(F);
    for (Eigen::Index j = 0; j < F.n(); ++j) {
        const double m = F.entries.col(j).squaredNorm();
        const double dev = m / spec.r[static_cast<size_t>(j)].to_double() - 1.0;
        out.norm_term += 0.25 * dev * dev;
    }
    out.total = out.parseval_term + out.norm_term;
    return out;
}

FrameMatrix gradient(const FrameMatrix& F, const NormSpec& spec) {
    require_matching_sizes(F, spec, "gradient");
    Eigen::MatrixXcd bracket = 4.0 * (F.entries.adjoint() * F.entries);
    for (Eigen::Index j = 0; j < F.n(); ++j) {
        const double rj = spec.r[static_cast<size_t>(j)].to_double();
        const double m = F.entries.col(j).squaredNorm();
        bracket(j, j) += m / (rj * rj) - 1.0 / rj - 4.0;
    }
    return FrameMatrix(F.field, F.entries * bracket);
}

double frame_potential(const FrameMatrix& F) {
    return (F.entries.adjoint() * F.entries).squaredNorm();
}

double frame_energy_bc(const FrameMatrix& F) {
    const std::vector<double> m = column_norms_sq(F);
    double total = 0.0;
    for (double mj : m)
        for (double mk : m) total += (mj - mk) * (mj - mk);
    return total;
}

}  // namespace frameforge
