#pragma once

// Seeded random states for validation runs and property tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/QR>

#include "symm.hpp"

namespace nolabel {

using Rng = std::mt19937_64;

inline Complex random_complex(Rng &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double re = gauss(rng);
    const double im = gauss(rng);
    return {re, im};
}

/// Gaussian amplitudes, normalized.
inline SingleParticleState random_single_particle_state(const BasisPtr &basis, Rng &rng) {
    Vector v(static_cast<Eigen::Index>(basis->dimension()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = random_complex(rng);
    }
    return SingleParticleState(basis, v).normalized();
}

/// 1..max_terms random terms with random complex coefficients (unnormalized).
inline TwoParticleState random_two_particle_state(const BasisPtr &basis, Statistics statistics, Rng &rng,
                                                  int max_terms = 3) {
    std::uniform_int_distribution<int> count(1, max_terms);
    TwoParticleState out(basis, statistics);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        const Complex c = random_complex(rng);
        auto first = random_single_particle_state(basis, rng);
        auto second = random_single_particle_state(basis, rng);
        out.add_term(c, std::move(first), std::move(second));
    }
    return out;
}

/// Haar-ish random unitary from the QR of a Gaussian matrix.
inline Matrix random_unitary(Eigen::Index dim, Rng &rng) {
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            g(i, j) = random_complex(rng);
        }
    }
    const Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

/// Uniform on the sphere.
inline SpinDirection random_direction(Rng &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double polar = std::acos(std::clamp(1.0 - 2.0 * unit(rng), -1.0, 1.0));
    const double azimuth = 2.0 * std::numbers::pi * unit(rng);
    return {polar, azimuth};
}

} // namespace nolabel
