#include "frameforge/core.hpp"

#include <cmath>
#include <stdexcept>

namespace frameforge {

std::string field_name(Field f) { return f == Field::Real ? "real" : "complex"; }

Field field_from_name(const std::string& name) {
    if (name == "real") return Field::Real;
    if (name == "complex") return Field::Complex;
    throw std::invalid_argument("unknown field '" + name + "' (expected real|complex)");
}

bool FrameMatrix::satisfies_invariants() const {
    for (Eigen::Index j = 0; j < n(); ++j)
        for (Eigen::Index i = 0; i < d(); ++i) {
            const std::complex<double> z = entries(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
            if (field == Field::Real && z.imag() != 0.0) return false;
        }
    return true;
}

FrameMatrix FrameMatrix::zero(Field f, Eigen::Index d, Eigen::Index n) {
    return FrameMatrix(f, Eigen::MatrixXcd::Zero(d, n));
}

FrameMatrix FrameMatrix::identity(Field f, Eigen::Index d) {
    return FrameMatrix(f, Eigen::MatrixXcd::Identity(d, d));
}

FrameMatrix FrameMatrix::from_real(const Eigen::MatrixXd& m) {
    return FrameMatrix(Field::Real, m.cast<std::complex<double>>());
}

NormSpec::NormSpec(int dim, std::vector<Rational> norms) : d(dim), r(std::move(norms)) {
    if (d <= 0) throw std::invalid_argument("NormSpec: d must be positive");
    if (r.empty()) throw std::invalid_argument("NormSpec: empty norm vector");
    for (const auto& ri : r)
        if (!ri.is_positive()) throw std::invalid_argument("NormSpec: every r_i must be positive");
}

NormSpec NormSpec::equal_norm(int d, int n) {
    return NormSpec(d, std::vector<Rational>(static_cast<size_t>(n), Rational(d, n)));
}

bool NormSpec::is_equal_norm() const {
    for (const auto& ri : r)
        if (ri != r.front()) return false;
    return true;
}

void Tolerances::validate() const {
    if (grad_tol <= 0 || residual_tol <= 0 || rank_tol <= 0 || spark_tol <= 0)
        throw std::invalid_argument("Tolerances must all be strictly positive");
}

double frobenius_distance_to_identity(const FrameMatrix& F) {
    Eigen::MatrixXcd P = F.entries * F.entries.adjoint();
    P -= Eigen::MatrixXcd::Identity(F.d(), F.d());
    return P.squaredNorm();
}

std::vector<double> column_norms_sq(const FrameMatrix& F) {
    std::vector<double> out(static_cast<size_t>(F.n()));
    for (Eigen::Index j = 0; j < F.n(); ++j) out[static_cast<size_t>(j)] = F.entries.col(j).squaredNorm();
    return out;
}

double parseval_residual(const FrameMatrix& F) {
    return std::sqrt(frobenius_distance_to_identity(F));
}

double norm_residual(const FrameMatrix& F, const NormSpec& spec) {
    if (F.n() != spec.n())
        throw std::invalid_argument("norm_residual: frame has " + std::to_string(F.n()) +
                                    " columns but spec prescribes " + std::to_string(spec.n()));
    double worst = 0.0;
    for (Eigen::Index j = 0; j < F.n(); ++j) {
        const double m = F.entries.col(j).squaredNorm();
        worst = std::max(worst, std::abs(m - spec.r[static_cast<size_t>(j)].to_double()));
    }
    return worst;
}

bool is_parseval_with_norms(const FrameMatrix& F, const NormSpec& spec, const Tolerances& tol) {
    return parseval_residual(F) < tol.residual_tol && norm_residual(F, spec) < tol.residual_tol;
}

}  // namespace frameforge
