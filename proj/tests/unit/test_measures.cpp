#include <gtest/gtest.h>

#include <random>

#include "ghzt/measures.hpp"
#include "ghzt/noise.hpp"
#include "oracles.hpp"

using namespace ghzt;

namespace {

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

DensityMatrix werner(double w) {
    const double s = 1.0 / std::sqrt(2.0);
    const Matrix phi = PureState({s, 0, 0, s}).projector();
    return DensityMatrix(phi * Complex{w} + Matrix::identity(4) * Complex{(1 - w) / 4});
}

}  // namespace

TEST(Concurrence, BellAndProduct) {
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(concurrence(DensityMatrix(PureState({s, 0, 0, s}))), 1.0, 1e-12);
    EXPECT_NEAR(concurrence(DensityMatrix(PureState({0, s, -s, 0}))), 1.0, 1e-12);
    EXPECT_NEAR(concurrence(DensityMatrix(PureState::basis(2, 1))), 0.0, 1e-12);
    EXPECT_NEAR(concurrence(DensityMatrix::maximally_mixed(2)), 0.0, 1e-12);
}

TEST(Concurrence, WernerStates) {
    for (int i = 0; i <= 20; ++i) {
        const double w = i / 20.0;
        EXPECT_NEAR(concurrence(werner(w)), std::max(0.0, (3 * w - 1) / 2), 1e-12) << w;
    }
}

TEST(Concurrence, RandomPureStatesMatchOracle) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (int k = 0; k < 50; ++k) {
        std::vector<Complex> a(4);
        for (auto& v : a) v = Complex{g(rng), g(rng)};
        const auto psi = PureState::normalized(a);
        const std::vector<Complex> amps(psi.amplitudes().begin(), psi.amplitudes().end());
        EXPECT_NEAR(concurrence(DensityMatrix(psi)), oracle::pure_concurrence(amps), 1e-10);
    }
}

TEST(Concurrence, LocalUnitaryInvariance) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 30; ++k) {
        const DensityMatrix rho(oracle::random_density(rng, 4) * Complex{0.3} + werner(0.9).matrix() * Complex{0.7});
        const Matrix u = kron(oracle::haar_unitary2(rng), oracle::haar_unitary2(rng));
        EXPECT_NEAR(concurrence(DensityMatrix(conjugate_by(rho.matrix(), u))), concurrence(rho), 1e-10);
    }
}

TEST(Concurrence, RejectsWrongSize) { EXPECT_THROW(concurrence(DensityMatrix::maximally_mixed(3)), ValidationError); }

TEST(Negativity, ClosedFormMatchesPartialTransposeOnTriangle) {
    for (const auto& c : triangle_points(24)) {
        const auto rho = ghz_symmetric_state(c);
        for (const std::size_t q : {1u, 2u, 3u})
            EXPECT_NEAR(negativity_partial_transpose(rho, {Qubit{q}}), negativity_closed_form(c), 1e-10)
                << c.x << "," << c.y;
    }
}

TEST(Negativity, DepolarizedPathMatchesPolynomial) {
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        EXPECT_NEAR(negativity_closed_form(depolarizing_path(p)), oracle::negativity_poly(p), 1e-14);
    }
}

TEST(Negativity, Landmarks) {
    EXPECT_NEAR(negativity_closed_form(kGhzPlusVertex), 0.5, 1e-15);
    EXPECT_NEAR(negativity_closed_form({0.0, 0.0}), 0.0, 1e-15);
    EXPECT_THROW(negativity_closed_form({0.9, 0.0}), ValidationError);
    EXPECT_THROW(negativity_partial_transpose(DensityMatrix::maximally_mixed(3), {}), ValidationError);
}

TEST(Gme, DepolarizedPathMatchesPolynomial) {
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        EXPECT_NEAR(gme_concurrence(depolarizing_path(p)), oracle::gme_poly(p), 1e-14);
    }
    EXPECT_NEAR(gme_concurrence(kGhzPlusVertex), 1.0, 1e-15);
}

TEST(ThreeTangle, Vertices) {
    EXPECT_DOUBLE_EQ(three_tangle(kGhzPlusVertex), 1.0);
    EXPECT_DOUBLE_EQ(three_tangle(kGhzMinusVertex), 1.0);
    EXPECT_DOUBLE_EQ(three_tangle({0.0, 0.0}), 0.0);
    EXPECT_DOUBLE_EQ(three_tangle(ghz_w_line(0.6)), 0.0);
}

TEST(ThreeTangle, DephasedPathIsLinearInX) {
    // The top edge meets the GHZ-W line at x = 0, so tau3 = 2x there.
    for (int i = 0; i <= 10; ++i) {
        const auto c = dephasing_path(i / 10.0);
        EXPECT_NEAR(three_tangle(c), 2 * c.x, 1e-12);
    }
}

TEST(ThreeTangle, MatchesDenseScanOracle) {
    for (const auto& c : triangle_points(16)) EXPECT_NEAR(three_tangle(c), oracle::three_tangle_scan(c.x, c.y), 2e-5);
}

TEST(ThreeTangle, LipschitzOnFineGrid) {
    // Neighbouring grid values never jump by more than a fixed multiple of
    // the spacing.
    const int n = 400;
    const double h = 1.0 / n;
    double worst = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double y = kBottomVertex.y + (kGhzPlusVertex.y - kBottomVertex.y) * j / n;
        double prev = -1.0;
        for (int i = 0; i <= n; ++i) {
            const GhzCoords c{-0.5 + i * h, y};
            if (!is_physical(c)) {
                prev = -1.0;
                continue;
            }
            const double t = three_tangle(c);
            if (prev >= 0.0) worst = std::max(worst, std::abs(t - prev) / h);
            prev = t;
        }
    }
    EXPECT_LT(worst, 20.0);
}

TEST(ThreeTangle, LowerBoundCloseToExactBeforeItsRoot) {
    for (int i = 0; i <= 1442; ++i) {
        const double p = i * 1e-4;
        const double exact = three_tangle(depolarizing_path(p));
        const double lb = three_tangle_lower_bound_depolarized(p);
        EXPECT_LE(std::abs(exact - lb), 2e-3) << p;
    }
    EXPECT_NEAR(three_tangle_lower_bound_depolarized(0.0), 1.0, 1e-15);
    EXPECT_THROW(three_tangle_lower_bound_depolarized(1.5), ValidationError);
}

TEST(LocalizableClosedForm, Landmarks) {
    EXPECT_NEAR(localizable_concurrence_closed_form(kGhzPlusVertex), 1.0, 1e-15);
    EXPECT_NEAR(localizable_concurrence_closed_form({0.0, 0.0}), 0.0, 1e-15);
    // zero along |x| + y/sqrt3 = 1/4
    for (int i = 0; i <= 10; ++i) {
        const double x = 0.025 * i;
        const GhzCoords c{x, kSqrt3 * (0.25 - x)};
        if (is_physical(c)) { EXPECT_NEAR(localizable_concurrence_closed_form(c), 0.0, 1e-15); }
    }
}

TEST(LocalizableClosedForm, DepolarizedPathPolynomial) {
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        EXPECT_NEAR(localizable_concurrence_closed_form(depolarizing_path(p)), oracle::c_l_poly(p), 1e-14);
    }
}
