#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "ghzt/localizable.hpp"
#include "ghzt/noise.hpp"
#include "oracles.hpp"

using namespace ghzt;

namespace {

constexpr double kPi = std::numbers::pi;

const Gate kCx13{gates::cx(), {Qubit{1}, Qubit{3}}};

}  // namespace

TEST(MeasurementUnitary, IsUnitaryAndMatchesDefinition) {
    const MeasurementUnitaryParams q{1.1, 0.4, 2.3};
    const Matrix u = measurement_unitary(q);
    EXPECT_LE(unitarity_defect(u), 1e-15);
    EXPECT_NEAR(std::abs(u(0, 0) - std::cos(0.55)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(1, 1) - std::polar(std::cos(0.55), 2.7)), 0.0, 1e-15);
    EXPECT_LE(max_abs_diff(measurement_unitary({0, 0, 0}), gates::identity()), 1e-15);
}

TEST(MeasurementUnitary, CanonicalFormGivesSameMeasurement) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 200; ++k) {
        const MeasurementUnitaryParams q{u(rng), u(rng), u(rng)};
        const auto c = canonical(q);
        EXPECT_GE(c.theta, 0.0);
        EXPECT_LE(c.theta, kPi);
        EXPECT_GE(c.phi, 0.0);
        EXPECT_LT(c.phi, 2 * kPi);
        EXPECT_GE(c.lambda, 0.0);
        EXPECT_LT(c.lambda, 2 * kPi);
        // Same projectors: |<t|U|k>| agree, and rows differ by a phase only.
        const Matrix a = measurement_unitary(q), b = measurement_unitary(c);
        for (std::size_t t = 0; t < 2; ++t) {
            const Complex overlap = a(t, 0) * std::conj(b(t, 0)) + a(t, 1) * std::conj(b(t, 1));
            EXPECT_NEAR(std::abs(overlap), 1.0, 1e-12);
        }
    }
}

TEST(LocalizableOptimize, PureGhz) {
    const auto r = localizable_concurrence_optimize(DensityMatrix(ghz_plus()), PureState::bloch(0.9, 0.2));
    EXPECT_NEAR(r.value, 1.0, 1e-9);
    ASSERT_EQ(r.optimal_params.size(), 1u);
    EXPECT_NEAR(r.optimal_params[0].theta, kPi / 2, 1e-3);
    const double lam = std::fmod(r.optimal_params[0].lambda + 1e-6, kPi);
    EXPECT_LT(std::min(lam, kPi - lam), 1e-3);
}

TEST(LocalizableOptimize, BranchesAreConsistent) {
    const auto r = localizable_concurrence_optimize(noisy_ghz(ChannelKind::Depolarizing, 0.15), PureState::bloch(0.4, 1.0));
    ASSERT_EQ(r.branches.size(), 2u);
    double total = 0.0, value = 0.0;
    for (const auto& b : r.branches) {
        total += b.probability;
        value += b.probability * b.concurrence;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(value, r.value, 1e-12);
}

TEST(LocalizableOptimize, MaximallyMixedGivesZero) {
    const auto r = localizable_concurrence_optimize(DensityMatrix::maximally_mixed(3), PureState::basis(1, 0));
    EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(LocalizableOptimize, AgreesWithClosedFormBothWays) {
    const PureState msg = PureState::bloch(1.3, 4.0);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j) {
            const GhzCoords c{-0.5 + i / 6.0, kBottomVertex.y + (kGhzPlusVertex.y - kBottomVertex.y) * j / 6.0};
            if (!is_physical(c)) continue;
            const double v = localizable_concurrence_optimize(ghz_symmetric_state(c), msg).value;
            const double closed = localizable_concurrence_closed_form(c);
            EXPECT_LE(v, closed + 1e-9) << c.x << "," << c.y;
            EXPECT_GE(v, closed - 1e-6) << c.x << "," << c.y;
        }
}

TEST(LocalizableOptimize, MessageIndependence) {
    std::mt19937_64 rng(31);
    const auto channel = ghz_symmetric_state({0.3, 0.25});
    double lo = 1e9, hi = -1e9;
    for (int k = 0; k < 10; ++k) {
        const auto a = oracle::haar_angles(rng);
        const double v = localizable_concurrence_optimize(channel, PureState::bloch(a.theta, a.phi)).value;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    EXPECT_LT(hi - lo, 1e-6);
}

TEST(LocalizableOptimize, RejectsBadInput) {
    EXPECT_THROW(localizable_concurrence_optimize(DensityMatrix::maximally_mixed(2), PureState::basis(1, 0)), ValidationError);
    EXPECT_THROW(localizable_concurrence_optimize(DensityMatrix::maximally_mixed(3), PureState::basis(2, 0)), ValidationError);
}

TEST(LocalizableGeneral, ThreeQubitCaseIsTheSpecialization) {
    const auto channel = noisy_ghz(ChannelKind::Depolarizing, 0.2);
    const auto msg = PureState::bloch(0.5, 0.5);
    const auto a = localizable_concurrence_optimize(channel, msg);
    const auto b = localizable_concurrence_general(channel, msg, Qubit{2}, Qubit{4}, std::span(&kCx13, 1));
    EXPECT_DOUBLE_EQ(a.value, b.value);
}

TEST(LocalizableGeneral, ProductChannelGivesZero) {
    const DensityMatrix product(PureState::basis(3, 5));
    const auto r = localizable_concurrence_general(product, PureState::basis(1, 0), Qubit{2}, Qubit{4}, std::span(&kCx13, 1));
    EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(LocalizableGeneral, FourQubitGhzReachesOne) {
    // Measuring qubits 3 and 4 of a 4-qubit GHZ channel in the X basis
    // leaves a Bell pair between 2 and 5 in every branch.
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<Complex> a(16);
    a[0] = s;
    a[15] = s;
    const DensityMatrix ghz4(PureState(std::move(a)));
    const Gate cx14{gates::cx(), {Qubit{1}, Qubit{4}}};
    const auto r = localizable_concurrence_general(ghz4, PureState::bloch(0.8, 0.1), Qubit{2}, Qubit{5}, std::span(&cx14, 1));
    EXPECT_NEAR(r.value, 1.0, 1e-8);
    EXPECT_EQ(r.optimal_params.size(), 2u);
    EXPECT_EQ(r.branches.size(), 4u);
}

TEST(LocalizableGeneral, RejectsBadRoles) {
    const auto rho = DensityMatrix(ghz_plus());
    const auto msg = PureState::basis(1, 0);
    EXPECT_THROW(localizable_concurrence_general(rho, msg, Qubit{2}, Qubit{2}, {}), ValidationError);
    EXPECT_THROW(localizable_concurrence_general(rho, msg, Qubit{1}, Qubit{4}, {}), ValidationError);
    EXPECT_THROW(localizable_concurrence_general(partial_trace(rho, {Qubit{1}, Qubit{2}}), msg, Qubit{2}, Qubit{3}, {}),
                 ValidationError);
}

TEST(FidelityBounds, Values) {
    auto b = proposition1_bounds(0.0);
    EXPECT_DOUBLE_EQ(b.lower, 0.5);
    EXPECT_DOUBLE_EQ(b.upper, 2.0 / 3.0);
    b = proposition1_bounds(1.0);
    EXPECT_DOUBLE_EQ(b.lower, 1.0);
    EXPECT_DOUBLE_EQ(b.upper, 1.0);
    b = proposition1_bounds(0.5);
    EXPECT_DOUBLE_EQ(b.lower, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(b.upper, 5.0 / 6.0);
    EXPECT_THROW(proposition1_bounds(-0.1), ValidationError);
    EXPECT_THROW(proposition1_bounds(1.1), ValidationError);
}
