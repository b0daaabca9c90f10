#pragma once

#include <Eigen/Eigenvalues>

#include <complex>
#include <filesystem>
#include <random>
#include <vector>

#include "frameforge/core.hpp"
#include "frameforge/energy.hpp"
#include "frameforge/flow.hpp"

namespace testutil {

using namespace frameforge;

inline FrameMatrix real_frame(const std::vector<std::vector<double>>& rows) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows.front().size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return FrameMatrix::from_real(m);
}

inline NormSpec spec_of(int d, std::vector<Rational> r) { return NormSpec(d, std::move(r)); }

/// Central finite differences of the total energy over the real coordinates
/// (re and im of every entry), step h. Independent oracle for the analytic
/// gradient; the gradient convention is the real Frobenius inner product
/// Re tr(A*B), so entry (i,j) of the oracle is dE/d re + i * dE/d im.
inline Eigen::MatrixXcd finite_difference_gradient(const FrameMatrix& F, const NormSpec& spec,
                                                   double h = 1e-5) {
    Eigen::MatrixXcd out(F.d(), F.n());
    FrameMatrix probe = F;
    for (Eigen::Index i = 0; i < F.d(); ++i)
        for (Eigen::Index j = 0; j < F.n(); ++j) {
            const std::complex<double> orig = F.entries(i, j);
            probe.entries(i, j) = orig + h;
            const double e_re_plus = energy(probe, spec).total;
            probe.entries(i, j) = orig - h;
            const double e_re_minus = energy(probe, spec).total;
            double d_im = 0.0;
            if (F.field == Field::Complex) {
                probe.entries(i, j) = orig + std::complex<double>(0.0, h);
                const double e_im_plus = energy(probe, spec).total;
                probe.entries(i, j) = orig - std::complex<double>(0.0, h);
                const double e_im_minus = energy(probe, spec).total;
                d_im = (e_im_plus - e_im_minus) / (2.0 * h);
            }
            probe.entries(i, j) = orig;
            out(i, j) = {(e_re_plus - e_re_minus) / (2.0 * h), d_im};
        }
    return out;
}

/// max_{ij} |a_ij - b_ij| / max(1, |a_ij|, |b_ij|).
inline double max_relative_entry_error(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const double denom = std::max({1.0, std::abs(a(i, j)), std::abs(b(i, j))});
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / denom);
        }
    return worst;
}

/// Exact (machine precision) Parseval frame: (FF*)^{-1/2} F from a Gaussian
/// draw. Built without the flow so identity tests do not inherit the flow's
/// looser residuals.
inline FrameMatrix random_parseval(int d, int n, Field field, std::uint64_t seed) {
    FrameMatrix F = random_full_spark_init(d, n, field, seed);
    if (field == Field::Real) {
        const Eigen::MatrixXd real = F.entries.real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(real * real.transpose());
        return FrameMatrix::from_real(eig.operatorInverseSqrt() * real);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(F.entries * F.entries.adjoint());
    return FrameMatrix(field, eig.operatorInverseSqrt() * F.entries);
}

/// Rescales every column to squared norm exactly norm_sq (same value for all).
inline FrameMatrix with_equal_column_norms(FrameMatrix F, double norm_sq) {
    for (Eigen::Index j = 0; j < F.n(); ++j) {
        const double m = F.entries.col(j).norm();
        F.entries.col(j) *= std::sqrt(norm_sq) / m;
    }
    return F;
}

inline Rational random_positive_rational(std::mt19937_64& rng, long max_num = 8, long max_den = 8) {
    std::uniform_int_distribution<long> num(1, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline NormSpec random_positive_spec(int d, int n, std::mt19937_64& rng) {
    std::vector<Rational> r;
    r.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) r.push_back(random_positive_rational(rng));
    return NormSpec(d, std::move(r));
}

/// Gaussian perturbation of every entry (real and imaginary for complex).
inline FrameMatrix perturbed(const FrameMatrix& F, double scale, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, scale);
    FrameMatrix out = F;
    for (Eigen::Index i = 0; i < F.d(); ++i)
        for (Eigen::Index j = 0; j < F.n(); ++j) {
            const double re = gauss(rng);
            const double im = F.field == Field::Complex ? gauss(rng) : 0.0;
            out.entries(i, j) += std::complex<double>(re, im);
        }
    return out;
}

/// The worked d=2, n=3, r=(2/3,2/3,2/3) blockwise-tight critical point:
/// two collinear columns of squared norm 22/41 on e1 and one of squared norm
/// 22/25 on e2. Frame-operator eigenvalues 44/41 and 22/25, energy 66/1025.
inline FrameMatrix blockwise_critical_example() {
    const double a = std::sqrt(22.0 / 41.0);
    const double b = std::sqrt(22.0 / 25.0);
    return real_frame({{a, a, 0.0}, {0.0, 0.0, b}});
}

/// Critical point with a zero column for r=(2/3,2/3,2/3): two orthogonal
/// columns of squared norm 22/25 plus a zero third column.
inline FrameMatrix zero_column_critical_example() {
    const double c = std::sqrt(22.0 / 25.0);
    return real_frame({{c, 0.0, 0.0}, {0.0, c, 0.0}});
}

/// Scratch directory removed on destruction.
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("frameforge_" + tag + "_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::filesystem::path file(const std::string& name) const { return path / name; }
};

}  // namespace testutil
