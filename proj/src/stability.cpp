#include "frameforge/stability.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "frameforge/energy.hpp"

namespace frameforge {

std::string critical_point_kind_name(CriticalPointKind k) {
    switch (k) {
        case CriticalPointKind::GlobalMinimumPF: return "GlobalMinimumPF";
        case CriticalPointKind::BlockwiseTight: return "BlockwiseTight";
        case CriticalPointKind::WithZeroColumns: return "WithZeroColumns";
        case CriticalPointKind::NotCritical: return "NotCritical";
    }
    return "?";
}

namespace {

Eigen::MatrixXcd columns_submatrix(const FrameMatrix& F, const std::vector<int>& idx) {
    Eigen::MatrixXcd sub(F.d(), static_cast<Eigen::Index>(idx.size()));
    for (size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = F.entries.col(idx[k]);
    return sub;
}

struct RankResult {
    int rank = 0;
    bool fragile = false;  // some singular value within 10x of the cutoff
};

RankResult numerical_rank(const Eigen::MatrixXcd& m, double rank_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sigma = svd.singularValues();
    RankResult out;
    if (sigma.size() == 0) return out;
    const double largest = sigma(0);
    if (largest == 0.0) return out;
    const double cutoff = rank_tol * largest;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        if (sigma(k) > cutoff) ++out.rank;
        if (sigma(k) > cutoff * 0.1 && sigma(k) < cutoff * 10.0) out.fragile = true;
    }
    return out;
}

uint64_t binomial_guarded(int n, int d, uint64_t cap) {
    uint64_t c = 1;
    for (int i = 1; i <= d; ++i) {
        c = c * static_cast<uint64_t>(n - d + i) / static_cast<uint64_t>(i);
        if (c > cap) return cap + 1;
    }
    return c;
}

}  // namespace

SparkVerdict is_full_spark(const FrameMatrix& F, const Tolerances& tol) {
    tol.validate();
    if (!F.entries.allFinite()) throw std::invalid_argument("is_full_spark: non-finite entries");
    const int d = static_cast<int>(F.d());
    const int n = static_cast<int>(F.n());
    if (n < d) throw std::invalid_argument("is_full_spark: need n >= d");
    constexpr uint64_t kMinorCap = 1000000;
    if (binomial_guarded(n, d, kMinorCap) > kMinorCap)
        throw CombinatorialBudgetExceeded("is_full_spark: C(n,d) exceeds 10^6 minors");

    SparkVerdict verdict;
    verdict.worst_sigma_min = std::numeric_limits<double>::infinity();

    std::vector<int> combo(static_cast<size_t>(d));
    std::iota(combo.begin(), combo.end(), 0);
    while (true) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(columns_submatrix(F, combo));
        const auto& sigma = svd.singularValues();
        const double largest = sigma(0);
        const double ratio = largest == 0.0 ? 0.0 : sigma(sigma.size() - 1) / largest;
        if (ratio < verdict.worst_sigma_min) {
            verdict.worst_sigma_min = ratio;
            verdict.worst_minor = std::set<int>(combo.begin(), combo.end());
        }
        // next d-combination of {0..n-1}
        int pos = d - 1;
        while (pos >= 0 && combo[static_cast<size_t>(pos)] == n - d + pos) --pos;
        if (pos < 0) break;
        ++combo[static_cast<size_t>(pos)];
        for (int q = pos + 1; q < d; ++q) combo[static_cast<size_t>(q)] = combo[static_cast<size_t>(q - 1)] + 1;
    }

    verdict.full_spark = verdict.worst_sigma_min > tol.spark_tol;
    return verdict;
}

StabilityVerdict check_property_S(const FrameMatrix& F, const NormSpec& spec, const Tolerances& tol) {
    tol.validate();
    if (!F.entries.allFinite()) throw std::invalid_argument("check_property_S: non-finite entries");
    if (F.n() != spec.n() || F.d() != spec.d)
        throw std::invalid_argument("check_property_S: frame/spec dimension mismatch");
    const int n = static_cast<int>(F.n());
    if (n > 24) throw CombinatorialBudgetExceeded("check_property_S: 2^n subsets with n > 24");

    // Masks are read with bit (n-1-j) standing for column j, so ascending
    // mask order is lexicographic order of characteristic vectors and every
    // sub-subset precedes its supersets. rank_lb[m] is a valid lower bound on
    // the rank of subset m (exact when a SVD actually ran for m).
    const uint32_t total = 1u << n;
    std::vector<uint8_t> rank_lb(total, 0);

    StabilityVerdict verdict;
    std::vector<int> idx;
    for (uint32_t mask = 1; mask < total; ++mask) {
        const uint32_t parent = mask & (mask - 1);  // drops the largest column index
        Rational weight;
        idx.clear();
        for (int j = 0; j < n; ++j)
            if (mask & (1u << (n - 1 - j))) {
                idx.push_back(j);
                weight += spec.r[static_cast<size_t>(j)];
            }
        if (weight <= Rational(static_cast<long>(rank_lb[parent]))) {
            rank_lb[mask] = rank_lb[parent];
            continue;
        }
        const RankResult rr = numerical_rank(columns_submatrix(F, idx), tol.rank_tol);
        rank_lb[mask] = static_cast<uint8_t>(rr.rank);
        if (weight > Rational(rr.rank)) {
            StabilityWitness w;
            w.indices = std::set<int>(idx.begin(), idx.end());
            w.witness_rank = rr.rank;
            w.weight_sum = weight;
            w.fragile = rr.fragile;
            verdict.semistable = false;
            verdict.witness = std::move(w);
            return verdict;
        }
    }
    return verdict;
}

CriticalPointClass classify_critical_point(const FrameMatrix& F, const NormSpec& spec, const Tolerances& tol,
                                           double cluster_gap) {
    tol.validate();
    if (!F.entries.allFinite()) throw std::invalid_argument("classify_critical_point: non-finite entries");
    CriticalPointClass out;
    out.grad_norm = gradient(F, spec).entries.norm();
    if (out.grad_norm >= tol.grad_tol) return out;  // NotCritical

    const double zero_cut = tol.residual_tol * tol.residual_tol;
    std::vector<int> nonzero;
    for (Eigen::Index j = 0; j < F.n(); ++j) {
        if (F.entries.col(j).squaredNorm() < zero_cut)
            out.zero_columns.insert(static_cast<int>(j));
        else
            nonzero.push_back(static_cast<int>(j));
    }

    const Eigen::MatrixXcd frame_op = F.entries * F.entries.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(frame_op);
    if (eig.info() != Eigen::Success)
        throw EigenDecompositionFailure("classify_critical_point: frame operator eigendecomposition failed");

    // Cluster the spectrum (descending) at relative gap cluster_gap.
    std::vector<double> lambdas(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    std::vector<double> cluster_values;
    const double scale = std::max(std::abs(lambdas.front()), 1e-300);
    for (double lam : lambdas) {
        if (cluster_values.empty() || std::abs(cluster_values.back() - lam) > cluster_gap * scale)
            cluster_values.push_back(lam);
    }

    std::vector<std::set<int>> cluster_columns(cluster_values.size());
    for (int j : nonzero) {
        const auto col = F.entries.col(j);
        const double m = col.squaredNorm();
        const double rayleigh = (col.adjoint() * frame_op * col)(0, 0).real() / m;
        size_t best = 0;
        for (size_t c = 1; c < cluster_values.size(); ++c)
            if (std::abs(cluster_values[c] - rayleigh) < std::abs(cluster_values[best] - rayleigh)) best = c;

        const double rj = spec.r[static_cast<size_t>(j)].to_double();
        const double predicted = 0.25 * (4.0 + 1.0 / rj - m / (rj * rj));
        if (std::abs(cluster_values[best] - predicted) > tol.residual_tol) {
            // Eigenvalue relation violated: not a critical point to our standard.
            out.kind = CriticalPointKind::NotCritical;
            out.blocks.clear();
            out.zero_columns.clear();
            return out;
        }
        cluster_columns[best].insert(j);
    }

    for (size_t c = 0; c < cluster_values.size(); ++c) {
        if (cluster_columns[c].empty()) continue;
        CriticalBlock block;
        block.columns = cluster_columns[c];
        block.eigenvalue = cluster_values[c];
        std::vector<int> idx(block.columns.begin(), block.columns.end());
        block.subspace_dim = numerical_rank(columns_submatrix(F, idx), tol.rank_tol).rank;
        out.blocks.push_back(std::move(block));
    }

    if (is_parseval_with_norms(F, spec, tol))
        out.kind = CriticalPointKind::GlobalMinimumPF;
    else if (!out.zero_columns.empty())
        out.kind = CriticalPointKind::WithZeroColumns;
    else
        out.kind = CriticalPointKind::BlockwiseTight;
    return out;
}

}  // namespace frameforge
