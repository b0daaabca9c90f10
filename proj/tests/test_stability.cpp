#include <doctest.h>

#include <random>

#include "frameforge/energy.hpp"
#include "frameforge/flow.hpp"
#include "frameforge/stability.hpp"
#include "test_helpers.hpp"

using namespace frameforge;
using namespace testutil;

namespace {

// Left-multiplies by a random invertible matrix scaled to determinant
// modulus one, then rescales every column by a unit-modulus scalar. Both
// operations preserve subset ranks and weights, hence the oracle verdict.
FrameMatrix random_orbit_transform(const FrameMatrix& F, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Eigen::Index d = F.d();
    Eigen::MatrixXcd A(d, d);
    while (true) {
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                A(i, j) = F.field == Field::Complex ? std::complex<double>(gauss(rng), gauss(rng))
                                                    : std::complex<double>(gauss(rng), 0.0);
        const double mod = std::abs(A.determinant());
        if (mod > 1e-6) {
            A /= std::pow(mod, 1.0 / static_cast<double>(d));
            break;
        }
    }
    FrameMatrix out(F.field, A * F.entries);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (Eigen::Index j = 0; j < out.n(); ++j) {
        if (F.field == Field::Complex)
            out.entries.col(j) *= std::exp(std::complex<double>(0.0, angle(rng)));
        else if (rng() % 2)
            out.entries.col(j) *= -1.0;
    }
    return out;
}

}  // namespace

TEST_CASE("full spark verdicts") {
    const Tolerances tol;
    SUBCASE("identity") { CHECK(is_full_spark(FrameMatrix::identity(Field::Real, 2), tol).full_spark); }
    SUBCASE("zero column kills every containing minor") {
        FrameMatrix F = random_full_spark_init(2, 4, Field::Real, 3);
        F.entries.col(1).setZero();
        const auto v = is_full_spark(F, tol);
        CHECK_FALSE(v.full_spark);
        CHECK(v.worst_sigma_min == doctest::Approx(0.0));
        CHECK(v.worst_minor.count(1) == 1);
    }
    SUBCASE("repeated columns") {
        const auto v = is_full_spark(real_frame({{1, 1, 0, 0}, {0, 0, 1, 1}}), tol);
        CHECK_FALSE(v.full_spark);
        CHECK(v.worst_minor == std::set<int>{0, 1});
    }
    SUBCASE("rejects n < d and oversized enumerations") {
        CHECK_THROWS_AS(is_full_spark(FrameMatrix::zero(Field::Real, 3, 2), tol), std::invalid_argument);
        CHECK_THROWS_AS(is_full_spark(FrameMatrix::zero(Field::Real, 6, 40), tol), CombinatorialBudgetExceeded);
    }
}

TEST_CASE("semistability oracle on hand frames") {
    const Tolerances tol;
    SUBCASE("zero column is an immediate witness") {
        FrameMatrix F = random_full_spark_init(2, 3, Field::Real, 11);
        F.entries.col(2).setZero();
        const auto v = check_property_S(F, NormSpec::equal_norm(2, 3), tol);
        CHECK_FALSE(v.semistable);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->indices == std::set<int>{2});
        CHECK(v.witness->witness_rank == 0);
        CHECK(v.witness->weight_sum == Rational(2, 3));
    }
    SUBCASE("full spark implies semistable") {
        const auto v = check_property_S(random_full_spark_init(2, 3, Field::Real, 4), NormSpec::equal_norm(2, 3),
                                        tol);
        CHECK(v.semistable);
        CHECK_FALSE(v.witness.has_value());
    }
    SUBCASE("spark-deficient but semistable: two repeated pairs at weight 1/2") {
        const auto v = check_property_S(real_frame({{1, 1, 0, 0}, {0, 0, 1, 1}}),
                                        NormSpec(2, std::vector<Rational>(4, Rational(1, 2))), tol);
        CHECK(v.semistable);
    }
    SUBCASE("overweighted collinear pair") {
        const auto v =
            check_property_S(real_frame({{0.7, 0.7, 0}, {0, 0, 1.3}}), NormSpec::equal_norm(2, 3), tol);
        CHECK_FALSE(v.semistable);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->indices == std::set<int>{0, 1});
        CHECK(v.witness->witness_rank == 1);
        CHECK(v.witness->weight_sum == Rational(4, 3));
    }
    SUBCASE("guard on subset count") {
        CHECK_THROWS_AS(check_property_S(FrameMatrix::zero(Field::Real, 2, 25),
                                         NormSpec::equal_norm(2, 25), tol),
                        CombinatorialBudgetExceeded);
    }
}

TEST_CASE("borderline rank decisions are flagged fragile") {
    const Tolerances tol;
    const NormSpec spec = NormSpec::equal_norm(2, 3);
    SUBCASE("nearly collinear pair at the rank cutoff") {
        const auto v = check_property_S(real_frame({{1.0, 1.0, 0.0}, {0.0, 1e-10, 1.0}}), spec, tol);
        CHECK_FALSE(v.semistable);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->fragile);
    }
    SUBCASE("robustly collinear pair") {
        const auto v = check_property_S(real_frame({{1.0, 1.0, 0.0}, {0.0, 1e-14, 1.0}}), spec, tol);
        CHECK_FALSE(v.semistable);
        REQUIRE(v.witness.has_value());
        CHECK_FALSE(v.witness->fragile);
    }
}

TEST_CASE("soundness chain on random batteries") {
    const Tolerances tol;
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 2);
        const int n = d + 1 + static_cast<int>(rng() % (6 - d));
        const Field field = rng() % 2 ? Field::Real : Field::Complex;
        const NormSpec spec = NormSpec::equal_norm(d, n);

        FrameMatrix F = random_full_spark_init(d, n, field, rng());
        if (is_full_spark(F, tol).full_spark) CHECK(check_property_S(F, spec, tol).semistable);

        F.entries.col(rng() % n).setZero();
        CHECK_FALSE(check_property_S(F, spec, tol).semistable);
    }
}

TEST_CASE("oracle verdict is invariant over the group orbit") {
    const Tolerances tol;
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        const Field field = trial % 2 ? Field::Real : Field::Complex;
        FrameMatrix F = random_full_spark_init(2, 4, field, rng());
        NormSpec spec = NormSpec::equal_norm(2, 4);
        if (trial % 3 == 0) F.entries.col(1) = F.entries.col(0) * 1.7;  // plant a collinear pair
        const bool verdict = check_property_S(F, spec, tol).semistable;
        for (std::uint64_t k = 0; k < 5; ++k) {
            const FrameMatrix G = random_orbit_transform(F, rng());
            CHECK(check_property_S(G, spec, tol).semistable == verdict);
        }
    }
}

TEST_CASE("flow preserves semistability end to end") {
    const Tolerances tol;
    const NormSpec spec = NormSpec::equal_norm(2, 4);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const FrameMatrix F0 = random_full_spark_init(2, 4, seed % 2 ? Field::Real : Field::Complex, seed);
        REQUIRE(check_property_S(F0, spec, tol).semistable);
        const auto report = descend(F0, spec, FlowConfig{});
        CHECK(check_property_S(report.terminal, spec, tol).semistable);
    }
}

TEST_CASE("critical point classification") {
    const Tolerances tol;
    SUBCASE("Parseval frames with matching norms are global minima") {
        const auto report =
            descend(random_full_spark_init(2, 3, Field::Real, 6), NormSpec::equal_norm(2, 3), FlowConfig{});
        REQUIRE(report.outcome == FlowOutcome::ConvergedToPF);
        const auto c = classify_critical_point(report.terminal, NormSpec::equal_norm(2, 3), tol);
        CHECK(c.kind == CriticalPointKind::GlobalMinimumPF);
        REQUIRE(c.blocks.size() == 1);
        CHECK(c.blocks[0].eigenvalue == doctest::Approx(1.0));
        CHECK(c.blocks[0].columns == std::set<int>{0, 1, 2});
        CHECK(c.zero_columns.empty());
    }
    SUBCASE("the worked blockwise example") {
        const NormSpec spec = NormSpec::equal_norm(2, 3);
        const FrameMatrix F = blockwise_critical_example();
        CHECK(energy(F, spec).total == doctest::Approx(66.0 / 1025.0).epsilon(1e-12));
        const auto c = classify_critical_point(F, spec, tol);
        CHECK(c.kind == CriticalPointKind::BlockwiseTight);
        REQUIRE(c.blocks.size() == 2);
        CHECK(c.blocks[0].columns == std::set<int>{0, 1});
        CHECK(std::abs(c.blocks[0].eigenvalue - 44.0 / 41.0) < 1e-10);
        CHECK(c.blocks[0].subspace_dim == 1);
        CHECK(c.blocks[1].columns == std::set<int>{2});
        CHECK(std::abs(c.blocks[1].eigenvalue - 22.0 / 25.0) < 1e-10);
        CHECK(c.blocks[1].subspace_dim == 1);
        CHECK(c.grad_norm < 1e-10);
    }
    SUBCASE("zero columns are recorded") {
        // [e1, e2, 0] is critical when r_1 = r_2 = 1 (any r_3 > 0).
        const NormSpec spec = spec_of(2, {Rational(1), Rational(1), Rational(1, 2)});
        const auto c = classify_critical_point(real_frame({{1, 0, 0}, {0, 1, 0}}), spec, tol);
        CHECK(c.kind == CriticalPointKind::WithZeroColumns);
        CHECK(c.zero_columns == std::set<int>{2});
        REQUIRE(c.blocks.size() == 1);
        CHECK(c.blocks[0].eigenvalue == doctest::Approx(1.0));
        CHECK(c.blocks[0].subspace_dim == 2);
    }
    SUBCASE("the zero-column critical example for an equal-norm spec") {
        const NormSpec spec = NormSpec::equal_norm(2, 3);
        const auto c = classify_critical_point(zero_column_critical_example(), spec, tol);
        CHECK(c.kind == CriticalPointKind::WithZeroColumns);
        CHECK(c.zero_columns == std::set<int>{2});
        REQUIRE(c.blocks.size() == 1);
        CHECK(std::abs(c.blocks[0].eigenvalue - 22.0 / 25.0) < 1e-10);
    }
    SUBCASE("generic points are not critical") {
        const auto c = classify_critical_point(random_full_spark_init(2, 4, Field::Complex, 77),
                                               NormSpec::equal_norm(2, 4), tol);
        CHECK(c.kind == CriticalPointKind::NotCritical);
        CHECK(c.grad_norm >= tol.grad_tol);
    }
}

TEST_CASE("stability checks refuse non-finite input") {
    const Tolerances tol;
    FrameMatrix bad = FrameMatrix::identity(Field::Real, 2);
    bad.entries(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(is_full_spark(bad, tol), std::invalid_argument);
    const NormSpec spec = spec_of(2, {Rational(1), Rational(1)});
    CHECK_THROWS_AS(check_property_S(bad, spec, tol), std::invalid_argument);
    CHECK_THROWS_AS(classify_critical_point(bad, spec, tol), std::invalid_argument);
}

TEST_CASE("non-minimizing critical points are unstable") {
    const Tolerances tol;
    const NormSpec spec = NormSpec::equal_norm(2, 3);
    for (const FrameMatrix& F : {blockwise_critical_example(), zero_column_critical_example()}) {
        const auto c = classify_critical_point(F, spec, tol);
        REQUIRE(c.kind != CriticalPointKind::NotCritical);
        REQUIRE(c.kind != CriticalPointKind::GlobalMinimumPF);
        CHECK_FALSE(check_property_S(F, spec, tol).semistable);
    }
}
