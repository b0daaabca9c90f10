#pragma once

#include "frameforge/core.hpp"

namespace frameforge {

/// E_r(F) = ||FF* - I||^2_Fr + (1/4) sum_i (||f_i||^2 / r_i - 1)^2.
/// Zero exactly on the Parseval frames with squared column norms r.
struct EnergyBreakdown {
    double parseval_term = 0.0;
    double norm_term = 0.0;
    double total = 0.0;
};

EnergyBreakdown energy(const FrameMatrix& F, const NormSpec& spec);

/// grad E_r(F) = F [ 4 F*F + diag(||f_i||^2/r_i^2 - 1/r_i - 4) ], with respect
/// to the real Frobenius inner product Re tr(A*B). Same shape and field as F;
/// a real input yields an exactly real output, and an exactly-zero column of F
/// yields an exactly-zero gradient column.
FrameMatrix gradient(const FrameMatrix& F, const NormSpec& spec);

/// ||F*F||^2_Fr, the classical frame potential.
double frame_potential(const FrameMatrix& F);

/// sum_{j,k} (||f_j||^2 - ||f_k||^2)^2.
double frame_energy_bc(const FrameMatrix& F);

}  // namespace frameforge
