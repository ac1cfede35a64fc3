#include <cmath>

#include <gtest/gtest.h>

#include <nolabel/oracle.hpp>
#include <nolabel/random.hpp>
#include <nolabel/reduction.hpp>

using namespace nolabel;
using namespace nolabel::oracle;

namespace {

const Statistics both_statistics[] = {Statistics::boson, Statistics::fermion};

SingleParticleState ket(const char *mode, std::string_view spin) { return basis_state(two_well_basis(), mode, spin); }

} // namespace

TEST(Symmetrize, ProductOfBasisStates) {
    const auto v = symmetrize(TwoParticleState(Statistics::boson, ket("L", spin::up), ket("R", spin::down)));
    Vector expected = Vector::Zero(16);
    expected(0 * 4 + 3) = 1.0;
    expected(3 * 4 + 0) = 1.0;
    EXPECT_LT((v.amplitudes() - expected).norm(), 1e-15);

    const auto f = symmetrize(TwoParticleState(Statistics::fermion, ket("L", spin::up), ket("R", spin::down)));
    expected(3 * 4 + 0) = -1.0;
    EXPECT_LT((f.amplitudes() - expected).norm(), 1e-15);
}

TEST(Symmetrize, FermionicDoubleOccupancyVanishes) {
    Rng rng(61);
    const auto phi = random_single_particle_state(two_well_basis(), rng);
    EXPECT_LT(symmetrize(TwoParticleState(Statistics::fermion, phi, phi)).amplitudes().norm(), 1e-14);
}

TEST(Symmetrize, IsLinear) {
    Rng rng(62);
    for (const auto stats : both_statistics) {
        const auto x = random_two_particle_state(two_well_basis(), stats, rng);
        const auto y = random_two_particle_state(two_well_basis(), stats, rng);
        const Complex a(0.4, 1.1);
        const Vector lhs = symmetrize(a * x + y).amplitudes();
        const Vector rhs = a * symmetrize(x).amplitudes() + symmetrize(y).amplitudes();
        EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Symmetrize, ExchangeEigenvector) {
    Rng rng(63);
    for (const auto stats : both_statistics) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto v = symmetrize(random_two_particle_state(two_well_basis(), stats, rng));
            EXPECT_LT(exchange_asymmetry(v, eta(stats)), 1e-12);
        }
    }
}

TEST(Calibration, InnerProductIsTwiceTheAmplitude) {
    Rng rng(64);
    const auto basis = make_basis({"L", "R", "C"});
    for (const auto stats : both_statistics) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto x = normalize(random_two_particle_state(basis, stats, rng));
            const auto y = normalize(random_two_particle_state(basis, stats, rng));
            EXPECT_LT(std::abs(labeled_amplitude(symmetrize(x), symmetrize(y)) - 2.0 * two_particle_amplitude(x, y)),
                      1e-10);
        }
    }
}

TEST(Calibration, OrthonormalPairNormIsTwo) {
    const auto v = symmetrize(TwoParticleState(Statistics::fermion, ket("L", spin::up), ket("R", spin::up)));
    EXPECT_NEAR(labeled_amplitude(v, v).real(), 2.0, 1e-15);
}

TEST(Calibration, WrongEtaIsDetected) {
    const auto b_up = overlap_mode(two_well_basis(), ModeOverlap(0.5), spin::up);
    const TwoParticleState s(Statistics::boson, ket("L", spin::up), b_up);
    const auto wrong = symmetrize(s, -1);
    EXPECT_GT(std::abs(labeled_amplitude(wrong, wrong) - 2.0 * two_particle_amplitude(s, s)), 0.5);
}

TEST(ProjectorExpectation, KnownValues) {
    const auto s = symmetrize(TwoParticleState(Statistics::boson, ket("L", spin::up), ket("R", spin::down))).normalized();
    EXPECT_NEAR(labeled_projector_expectation(ket("L", spin::up), s), 1.0, 1e-14);
    EXPECT_NEAR(labeled_projector_expectation(ket("R", spin::up), s), 0.0, 1e-14);
    double total = 0.0;
    for (Eigen::Index i = 0; i < 4; ++i) total += labeled_projector_expectation(basis_state_at(two_well_basis(), i), s);
    EXPECT_NEAR(total, 2.0, 1e-14);
}

TEST(ProjectorExpectation, HalvedMatchesMeasurement) {
    Rng rng(65);
    for (const auto stats : both_statistics) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto s = normalize(random_two_particle_state(two_well_basis(), stats, rng));
            const auto k = random_single_particle_state(two_well_basis(), rng);
            EXPECT_NEAR(labeled_projector_expectation(k, symmetrize(s).normalized()) / 2.0, measure(k, s).probability,
                        1e-10);
        }
    }
}

TEST(Kron, MatrixAndVectorAgree) {
    Rng rng(66);
    const Matrix a = random_unitary(3, rng);
    const Matrix b = random_unitary(2, rng);
    const auto x = random_single_particle_state(make_basis({"L", "R", "C"}, {"s"}), rng).amplitudes();
    const auto y = random_single_particle_state(make_basis({"L", "R"}, {"s"}), rng).amplitudes();
    EXPECT_LT((kron(a, b) * kron(x, y) - kron(Vector(a * x), Vector(b * y))).norm(), 1e-13);
}

TEST(ExchangeOperator, IsAnInvolution) {
    const Matrix p = exchange_operator(3);
    EXPECT_LT((p * p - Matrix::Identity(9, 9)).norm(), 1e-15);
}

TEST(SeparatedReducedState, Product) {
    const TwoParticleState s(Statistics::boson, ket("L", spin::up), ket("R", spin::down));
    const Matrix kept = separated_reduced_state(s, {"L"}, {"R"}, true);
    Matrix expected = Matrix::Zero(4, 4);
    expected(3, 3) = 1.0;
    EXPECT_LT((kept - expected).norm(), 1e-15);
}

TEST(SeparatedReducedState, RejectsOverlappingSlots) {
    const auto b = overlap_mode(two_well_basis(), ModeOverlap(0.3), spin::down);
    EXPECT_THROW(separated_reduced_state(TwoParticleState(Statistics::boson, ket("L", spin::up), b), {"L"}, {"R"}, true),
                 DomainError);
    EXPECT_THROW(separated_reduced_state(TwoParticleState(Statistics::boson, ket("L", spin::up), ket("L", spin::down)),
                                         {"L"}, {"L"}, true),
                 DomainError);
}

TEST(LabeledState, DimensionChecks) {
    EXPECT_THROW(LabeledTwoParticleState(3, Vector::Zero(8)), BasisError);
    EXPECT_THROW(LabeledTwoParticleState(2, Vector::Zero(4)).normalized(), ZeroNormError);
    EXPECT_THROW(labeled_amplitude(LabeledTwoParticleState(2, Vector::Ones(4)), LabeledTwoParticleState(3, Vector::Ones(9))),
                 BasisError);
}
