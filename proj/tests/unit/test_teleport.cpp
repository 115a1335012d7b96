#include <gtest/gtest.h>

#include <array>
#include <numbers>
#include <random>

#include "ghzt/localizable.hpp"
#include "ghzt/measures.hpp"
#include "ghzt/noise.hpp"
#include "ghzt/teleport.hpp"
#include "oracles.hpp"

using namespace ghzt;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<GhzCoords> triangle_points(int n) {
    std::vector<GhzCoords> out;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const GhzCoords c{-0.5 + static_cast<double>(i) / n,
                              kBottomVertex.y + (kGhzPlusVertex.y - kBottomVertex.y) * j / n};
            if (is_physical(c)) out.push_back(c);
        }
    return out;
}

DensityMatrix bit_flipped_ghz(double q) {
    const std::array<Qubit, 1> second = {Qubit{2}};
    return apply_to_each(DensityMatrix(ghz_plus()), bit_flip(q), second);
}

}  // namespace

TEST(GhzBasis, Landmarks) {
    EXPECT_EQ(ghz_measurement_basis(0, 0, 0).amplitudes()[7], ghz_plus().amplitudes()[7]);
    EXPECT_EQ(ghz_measurement_basis(1, 0, 0).amplitudes()[7], ghz_minus().amplitudes()[7]);
    EXPECT_THROW(ghz_measurement_basis(2, 0, 0), ValidationError);
}

TEST(GhzBasis, Orthonormal) {
    std::vector<PureState> b;
    for (int t = 0; t < 8; ++t) b.push_back(ghz_measurement_basis(t >> 2, (t >> 1) & 1, t & 1));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            EXPECT_NEAR(std::abs(inner(b[i].amplitudes(), b[j].amplitudes())), i == j ? 1.0 : 0.0, 1e-15);
}

TEST(TeleportGhz, IdealChannelFourEqualBranches) {
    const auto r = teleport_ghz({1.0, 2.0}, DensityMatrix(ghz_plus()), true);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
    EXPECT_NEAR(r.acceptance_probability, 1.0, 1e-12);
    int live = 0;
    for (const auto& b : r.branches)
        if (b.probability > 0) {
            ++live;
            EXPECT_NEAR(b.probability, 0.25, 1e-12);
            EXPECT_TRUE(b.accepted);
            EXPECT_EQ(b.outcome[1], b.outcome[2]);
        }
    EXPECT_EQ(live, 4);
}

TEST(TeleportGhz, IdealChannelEveryBranchIsExact) {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 20; ++k) {
        const auto a = oracle::haar_angles(rng);
        const MessageState m{a.theta, a.phi};
        const Matrix target = m.state().projector();
        const auto r = teleport_ghz(m, DensityMatrix(ghz_plus()), false);
        for (const auto& b : r.branches)
            if (b.receiver_state) { EXPECT_LE(max_abs_diff(b.receiver_state->matrix(), target), 1e-12); }
    }
}

TEST(TeleportGhz, BranchProbabilitiesSumToOne) {
    const auto r = teleport_ghz({0.3, 0.3}, noisy_ghz(ChannelKind::Depolarizing, 0.4), false);
    double s = 0.0;
    for (const auto& b : r.branches) s += b.probability;
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_EQ(r.branches.size(), 8u);
}

TEST(TeleportGhz, FidelityMatchesClosedFormOverTriangle) {
    for (const auto& c : triangle_points(10)) {
        const auto channel = ghz_symmetric_state(c);
        for (const double theta : {0.0, 0.7, kPi / 2, 2.5, kPi}) {
            const auto r = teleport_ghz({theta, 1.3}, channel, false);
            EXPECT_NEAR(r.fidelity, fidelity_theta(c, theta), 1e-12) << c.x << "," << c.y << "," << theta;
        }
        EXPECT_NEAR(simulated_average_fidelity(channel), average_fidelity(c), 1e-12);
    }
}

TEST(TeleportGhz, RejectsWrongChannel) {
    EXPECT_THROW(teleport_ghz({0, 0}, DensityMatrix::maximally_mixed(2), false), ValidationError);
    EXPECT_THROW(teleport_ghz({4.0, 0}, DensityMatrix(ghz_plus()), false), ValidationError);
    EXPECT_THROW(teleport_ghz({1.0, 7.0}, DensityMatrix(ghz_plus()), false), ValidationError);
}

TEST(TeleportGhz, PostSelectionNeverHurtsAndRejects) {
    std::mt19937_64 rng(3);
    for (const double q : {0.05, 0.1, 0.3, 0.5, 0.7, 0.95}) {
        const auto channel = bit_flipped_ghz(q);
        for (int k = 0; k < 5; ++k) {
            const auto a = oracle::haar_angles(rng);
            const auto plain = teleport_ghz({a.theta, a.phi}, channel, false);
            const auto kept = teleport_ghz({a.theta, a.phi}, channel, true);
            EXPECT_GE(kept.fidelity, plain.fidelity - 1e-12);
            EXPECT_NEAR(1.0 - kept.acceptance_probability, q, 1e-12);
            EXPECT_NEAR(kept.fidelity, 1.0, 1e-12);  // every surviving run is clean
        }
    }
}

TEST(TeleportGhz, EverythingRejectedIsNumericalFailure) {
    EXPECT_THROW(teleport_ghz({0.5, 0.0}, bit_flipped_ghz(1.0), true), NumericalError);
}

TEST(TeleportBell, Landmarks) {
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(teleport_bell({1.0, 0.5}, DensityMatrix(PureState({s, 0, 0, s}))).fidelity, 1.0, 1e-12);
    // Psi- is fixed by the frame choice.
    EXPECT_NEAR(teleport_bell({1.0, 0.5}, DensityMatrix(PureState({0, s, -s, 0}))).fidelity, 1.0, 1e-12);
    double avg = 0.0;
    for (const auto& m : pauli_eigenstates()) avg += teleport_bell(m, DensityMatrix::maximally_mixed(2)).fidelity;
    EXPECT_NEAR(avg / 6, 0.5, 1e-12);
}

TEST(TeleportBell, WernerBelowUpperBound) {
    const double s = 1.0 / std::sqrt(2.0);
    const Matrix phi = PureState({s, 0, 0, s}).projector();
    for (int i = 0; i <= 10; ++i) {
        const double w = i / 10.0;
        const DensityMatrix rho(phi * Complex{w} + Matrix::identity(4) * Complex{(1 - w) / 4});
        double avg = 0.0;
        for (const auto& m : pauli_eigenstates()) avg += teleport_bell(m, rho).fidelity;
        EXPECT_LE(avg / 6, (2 + concurrence(rho)) / 3 + 1e-12);
    }
}

TEST(TeleportCqt, ControllerMatters) {
    const DensityMatrix ghz(ghz_plus());
    std::mt19937_64 rng(8);
    double abstain = 0.0;
    for (const auto& m : pauli_eigenstates()) {
        EXPECT_NEAR(teleport_cqt(m, ghz, true).fidelity, 1.0, 1e-12);
        abstain += teleport_cqt(m, ghz, false).fidelity;
    }
    EXPECT_LE(abstain / 6, 2.0 / 3.0 + 1e-12);
}

TEST(TeleportCqt, FidelityBoundsHold) {
    for (const auto& c : triangle_points(8)) {
        const auto channel = ghz_symmetric_state(c);
        double avg = 0.0;
        for (const auto& m : pauli_eigenstates()) avg += teleport_cqt(m, channel, true).fidelity;
        avg /= 6;
        const auto b = proposition1_bounds(localizable_concurrence_closed_form(c));
        EXPECT_LE(avg, b.upper + 1e-10);
        // The fixed corrections drop below 1/2 where y < -sqrt3 |x|; the
        // lower bound only holds outside that corner.
        if (c.y >= -kSqrt3 * std::abs(c.x)) {
            EXPECT_GE(avg, b.lower - 1e-10) << c.x << "," << c.y;
        } else {
            EXPECT_LE(avg, 0.5 + 1e-12) << c.x << "," << c.y;
            EXPECT_NEAR(avg, (9 + 12 * std::abs(c.x) + 4 * kSqrt3 * c.y) / 18, 1e-12);
        }
    }
}

TEST(BellPair, FrozenTableMatchesDerivation) { EXPECT_EQ(derive_bell_pair_corrections(), kBellPairCorrections); }

TEST(BellPair, IdealChannelAllIndices) {
    for (int b = 0; b < 4; ++b) {
        const auto r = teleport_bell_pair_via_ghz_protocol(b, DensityMatrix(ghz_plus()));
        EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
        EXPECT_NEAR(concurrence(r.average_output), 1.0, 1e-9);
    }
    EXPECT_THROW(teleport_bell_pair_via_ghz_protocol(4, DensityMatrix(ghz_plus())), ValidationError);
}

TEST(BellPair, FidelityAndConcurrenceOverTriangle) {
    for (const auto& c : triangle_points(10)) {
        const auto channel = ghz_symmetric_state(c);
        for (int b = 0; b < 4; ++b) {
            const auto r = teleport_bell_pair_via_ghz_protocol(b, channel);
            EXPECT_NEAR(r.fidelity, bell_pair_fidelity(c), 1e-12);
            EXPECT_NEAR(concurrence(r.average_output), localizable_concurrence_closed_form(c), 1e-9);
        }
    }
    EXPECT_NEAR(bell_pair_fidelity({0.0, 0.0}), 0.25, 1e-15);
}

TEST(BellPair, FidelityHalfMeansNoConcurrence) {
    // fidelity 1/2 on the C_L = 0 line
    const GhzCoords c{0.1, kSqrt3 * 0.15};
    EXPECT_NEAR(bell_pair_fidelity(c), 0.5, 1e-12);
    EXPECT_NEAR(concurrence(teleport_bell_pair_via_ghz_protocol(0, ghz_symmetric_state(c)).average_output), 0.0, 1e-9);
}

TEST(ClosedForms, Landmarks) {
    EXPECT_NEAR(fidelity_theta(kGhzPlusVertex, 0.3), 1.0, 1e-15);
    EXPECT_NEAR(fidelity_theta({0.0, 0.0}, 0.0), 0.5, 1e-15);
    EXPECT_NEAR(average_fidelity(kGhzPlusVertex), 1.0, 1e-15);
    EXPECT_THROW(average_fidelity({0.0, 1.0}), ValidationError);
    for (int i = 0; i <= 10; ++i) {
        const double p = i / 10.0;
        EXPECT_NEAR(average_fidelity(dephasing_path(p)), (2 + std::pow(1 - p, 1.5)) / 3, 1e-15);
        EXPECT_NEAR(average_fidelity(depolarizing_path(p)), oracle::avg_fidelity_poly(p), 1e-15);
    }
    EXPECT_NEAR(average_fidelity(depolarizing_path(1.0)), 0.5, 1e-15);
}

TEST(ClosedForms, FidelityResourceIdentity) {
    for (const auto& c : triangle_points(30)) {
        const double cl = localizable_concurrence_closed_form(c);
        if (cl > 0) { EXPECT_NEAR(average_fidelity(c), (2 + cl) / 3, 1e-12); }
    }
}
