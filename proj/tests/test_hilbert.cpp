#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <nolabel/hilbert.hpp>
#include <nolabel/random.hpp>

using namespace nolabel;

namespace {

constexpr double tol = 1e-12;

Vector unit(Eigen::Index dim, Eigen::Index i) {
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
}

// Plain sum over components, independent of Eigen's dot.
Complex naive_inner(const Vector &x, const Vector &y) {
    Complex s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += std::conj(x(i)) * y(i);
    return s;
}

} // namespace

TEST(OneParticleBasis, IndexLayoutIsModeMajor) {
    const auto basis = two_well_basis();
    EXPECT_EQ(basis->dimension(), 4u);
    EXPECT_EQ(basis->index("L", spin::up), 0u);
    EXPECT_EQ(basis->index("L", spin::down), 1u);
    EXPECT_EQ(basis->index("R", spin::up), 2u);
    EXPECT_EQ(basis->index("R", spin::down), 3u);
    EXPECT_EQ(basis->label(3), "R:down");
    EXPECT_EQ(basis->mode_of(2), "R");
    EXPECT_EQ(basis->spin_of(1), "down");
}

TEST(OneParticleBasis, IndicesOfMode) {
    const auto basis = make_basis({"L", "C", "D"});
    const std::vector<std::size_t> expected{2, 3};
    EXPECT_EQ(basis->indices_of_mode("C"), expected);
    EXPECT_TRUE(basis->has_mode("D"));
    EXPECT_FALSE(basis->has_mode("R"));
}

TEST(OneParticleBasis, RejectsBadDefinitions) {
    EXPECT_THROW(make_basis({}), BasisError);
    EXPECT_THROW(make_basis({"L", "L"}), BasisError);
    EXPECT_THROW(make_basis({"L"}, {}), BasisError);
}

TEST(BasisState, KnownVectors) {
    const auto basis = two_well_basis();
    EXPECT_LT((basis_state(basis, "L", spin::up).amplitudes() - unit(4, 0)).norm(), tol);
    EXPECT_LT((basis_state(basis, "R", spin::down).amplitudes() - unit(4, 3)).norm(), tol);
}

TEST(BasisState, UnknownModeOrSpinThrows) {
    const auto basis = two_well_basis();
    EXPECT_THROW(basis_state(basis, "X", spin::up), BasisError);
    EXPECT_THROW(basis_state(basis, "L", "sideways"), BasisError);
}

TEST(OverlapMode, Limits) {
    const auto basis = two_well_basis();
    EXPECT_LT((overlap_mode(basis, ModeOverlap(0.0), spin::down).amplitudes() - unit(4, 3)).norm(), tol);
    EXPECT_LT((overlap_mode(basis, ModeOverlap(1.0), spin::down).amplitudes() - unit(4, 1)).norm(), tol);

    const Vector half = overlap_mode(basis, ModeOverlap(0.5), spin::up).amplitudes();
    EXPECT_NEAR(half(0).real(), 1.0 / std::sqrt(2.0), tol);
    EXPECT_NEAR(half(2).real(), 1.0 / std::sqrt(2.0), tol);
    EXPECT_NEAR(std::abs(half(1)) + std::abs(half(3)), 0.0, tol);
}

TEST(OverlapMode, RejectsChiOutsideUnitInterval) {
    EXPECT_THROW(ModeOverlap(-0.1), DomainError);
    EXPECT_THROW(ModeOverlap(1.0001), DomainError);
    EXPECT_THROW(ModeOverlap(std::nan("")), DomainError);
}

TEST(OverlapMode, SquaredOverlapIsChiIncludingComplexPhase) {
    const auto basis = two_well_basis();
    const auto l = basis_state(basis, "L", spin::up);
    for (int i = 0; i <= 20; ++i) {
        const double chi = i / 20.0;
        for (const double phase : {0.0, 0.7, -2.1}) {
            const auto b = overlap_mode(basis, ModeOverlap(chi, phase), spin::up);
            EXPECT_NEAR(std::norm(inner_product(l, b)), chi, tol);
            EXPECT_NEAR(b.norm(), 1.0, tol);
        }
    }
}

TEST(NonlocalMode, KnownVectorsAndOrthogonality) {
    const auto basis = two_well_basis();
    const auto plus = nonlocal_mode(basis, NonlocalSign::plus, spin::up);
    const auto minus = nonlocal_mode(basis, NonlocalSign::minus, spin::down);
    EXPECT_LT((plus.amplitudes() - (unit(4, 0) + unit(4, 2)) / std::sqrt(2.0)).norm(), tol);
    EXPECT_LT((minus.amplitudes() - (unit(4, 1) - unit(4, 3)) / std::sqrt(2.0)).norm(), tol);
    EXPECT_NEAR(std::abs(inner_product(nonlocal_mode(basis, NonlocalSign::plus, spin::up),
                                       nonlocal_mode(basis, NonlocalSign::minus, spin::up))),
                0.0, tol);
}

TEST(SpinState, Poles) {
    const auto basis = two_well_basis();
    const auto north = spin_state(basis, "L", SpinDirection(0.0, 0.0), SpinProjection::up);
    EXPECT_LT((north.amplitudes() - unit(4, 0)).norm(), tol);
    const auto south = spin_state(basis, "L", SpinDirection(std::numbers::pi, 0.0), SpinProjection::up);
    EXPECT_NEAR(std::abs(south.amplitude(1)), 1.0, tol);
    EXPECT_NEAR(std::abs(south.amplitude(0)), 0.0, tol);
}

TEST(SpinState, Equator) {
    const auto basis = two_well_basis();
    const auto s = spin_state(basis, "L", SpinDirection(std::numbers::pi / 2, 0.0), SpinProjection::up);
    EXPECT_LT((s.amplitudes() - (unit(4, 0) + unit(4, 1)) / std::sqrt(2.0)).norm(), tol);
}

TEST(SpinState, OrthonormalPairForRandomDirections) {
    Rng rng(7);
    const auto basis = two_well_basis();
    for (int trial = 0; trial < 100; ++trial) {
        const auto dir = random_direction(rng);
        const auto up = spin_state(basis, "R", dir, SpinProjection::up);
        const auto down = spin_state(basis, "R", dir, SpinProjection::down);
        EXPECT_NEAR(up.norm(), 1.0, tol);
        EXPECT_NEAR(down.norm(), 1.0, tol);
        EXPECT_NEAR(std::abs(inner_product(up, down)), 0.0, tol);
        EXPECT_NEAR(std::abs(up.amplitude(0)) + std::abs(up.amplitude(1)), 0.0, tol);
    }
}

TEST(SpinState, NeedsTwoSpins) {
    const auto basis = make_basis({"L"}, {"a", "b", "c"});
    EXPECT_THROW(spin_state(basis, "L", SpinDirection(0.3, 0.0), SpinProjection::up), BasisError);
}

TEST(SpinDirection, ValidatesAndWraps) {
    EXPECT_THROW(SpinDirection(-0.01, 0.0), DomainError);
    EXPECT_THROW(SpinDirection(3.2, 0.0), DomainError);
    EXPECT_THROW(SpinDirection(1.0, INFINITY), DomainError);
    EXPECT_NEAR(SpinDirection(1.0, -std::numbers::pi / 2).azimuth(), 3 * std::numbers::pi / 2, tol);
    EXPECT_NEAR(SpinDirection(1.0, 5 * std::numbers::pi).azimuth(), std::numbers::pi, 1e-12);
    const auto r = SpinDirection(0.4, 1.0).reflected_xy();
    EXPECT_NEAR(r.polar(), std::numbers::pi - 0.4, tol);
    EXPECT_NEAR(r.azimuth(), 1.0, tol);
}

TEST(InnerProduct, KnownValues) {
    const auto basis = two_well_basis();
    const auto l_up = basis_state(basis, "L", spin::up);
    EXPECT_NEAR(std::abs(inner_product(l_up, l_up) - 1.0), 0.0, tol);
    EXPECT_NEAR(std::abs(inner_product(l_up, overlap_mode(basis, ModeOverlap(0.3), spin::down))), 0.0, tol);
    EXPECT_NEAR(std::abs(inner_product(l_up, overlap_mode(basis, ModeOverlap(0.3), spin::up)) - std::sqrt(0.3)),
                0.0, tol);
}

TEST(InnerProduct, MatchesComponentSumAndIsConjugateSymmetric) {
    Rng rng(11);
    const auto basis = make_basis({"L", "R", "C"});
    for (int trial = 0; trial < 200; ++trial) {
        const auto x = random_single_particle_state(basis, rng);
        const auto y = random_single_particle_state(basis, rng);
        EXPECT_LT(std::abs(inner_product(x, y) - naive_inner(x.amplitudes(), y.amplitudes())), tol);
        EXPECT_LT(std::abs(inner_product(x, y) - std::conj(inner_product(y, x))), tol);
    }
}

TEST(InnerProduct, ConjugateLinearInBra) {
    Rng rng(12);
    const auto basis = two_well_basis();
    const auto x = random_single_particle_state(basis, rng);
    const auto y = random_single_particle_state(basis, rng);
    const Complex c(0.3, -1.7);
    EXPECT_LT(std::abs(inner_product(c * x, y) - std::conj(c) * inner_product(x, y)), tol);
    EXPECT_LT(std::abs(inner_product(x, c * y) - c * inner_product(x, y)), tol);
}

TEST(InnerProduct, DifferentBasesThrow) {
    const auto a = basis_state(two_well_basis(), "L", spin::up);
    const auto b = basis_state(make_basis({"L", "C", "D"}), "L", spin::up);
    EXPECT_THROW(inner_product(a, b), BasisError);
    EXPECT_THROW(a + b, BasisError);
}

TEST(SingleParticleState, NormalizeZeroThrows) {
    const SingleParticleState zero(two_well_basis());
    EXPECT_THROW(zero.normalized(), ZeroNormError);
}
