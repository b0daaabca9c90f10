#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "frameforge/rational.hpp"

namespace frameforge {

enum class Field { Real, Complex };

std::string field_name(Field f);
Field field_from_name(const std::string& name);

// A frame is a d x n matrix whose columns are the frame vectors. Storage is
// complex for both fields; Field::Real constrains every imaginary part to
// zero, so all numerics below are written once. Real-valued inputs stay
// exactly real under products and sums, which the flow module relies on.
struct FrameMatrix {
    Field field = Field::Real;
    Eigen::MatrixXcd entries;

    FrameMatrix() = default;
    FrameMatrix(Field f, Eigen::MatrixXcd m) : field(f), entries(std::move(m)) {}

    Eigen::Index d() const { return entries.rows(); }
    Eigen::Index n() const { return entries.cols(); }

    /// All entries finite, and imaginary parts exactly zero for Field::Real.
    bool satisfies_invariants() const;

    static FrameMatrix zero(Field f, Eigen::Index d, Eigen::Index n);
    static FrameMatrix identity(Field f, Eigen::Index d);
    /// Real matrix lifted into the shared complex storage.
    static FrameMatrix from_real(const Eigen::MatrixXd& m);
};

/// Prescribed squared column norms r (exact rationals) and the target
/// ambient dimension d. Every r_i must be positive.
struct NormSpec {
    int d = 0;
    std::vector<Rational> r;

    NormSpec() = default;
    NormSpec(int dim, std::vector<Rational> norms);

    int n() const { return static_cast<int>(r.size()); }
    /// Equal-norm spec (d/n, ..., d/n).
    static NormSpec equal_norm(int d, int n);

    bool is_equal_norm() const;
};

struct Tolerances {
    double grad_tol = 1e-10;      // flow termination on gradient norm
    double residual_tol = 1e-8;   // Parseval / norm residual acceptance
    double rank_tol = 1e-10;      // relative singular-value cutoff for rank
    double spark_tol = 1e-10;     // relative sigma_min cutoff per d x d minor

    void validate() const;
};

/// ||FF* - I_d||^2_Fr.
double frobenius_distance_to_identity(const FrameMatrix& F);

/// Entry i is ||f_i||^2.
std::vector<double> column_norms_sq(const FrameMatrix& F);

/// ||FF* - I_d||_Fr (not squared).
double parseval_residual(const FrameMatrix& F);

/// max_i | ||f_i||^2 - r_i |.
double norm_residual(const FrameMatrix& F, const NormSpec& spec);

/// Both residuals below tol.residual_tol.
bool is_parseval_with_norms(const FrameMatrix& F, const NormSpec& spec, const Tolerances& tol);

}  // namespace frameforge
