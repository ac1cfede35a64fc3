#pragma once

/**
 * @file
 * Labeled first-quantization reference. Two-particle states are dense
 * vectors on H (x) H, built by explicitly (anti)symmetrizing tensor
 * products. Everything here is computed with Kronecker products and never
 * calls the no-label amplitude or projection code, so it can serve as an
 * independent check of it.
 *
 * The symmetrizer is left unnormalized: S(x, y) = x(x)y + eta y(x)x, which
 * makes <S(a,b)|S(x,y)> exactly twice the no-label amplitude.
 */

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symm.hpp"

namespace nolabel::oracle {

/// Dense vector over H (x) H; index i * dim + j for |e_i> (x) |e_j>.
class LabeledTwoParticleState {
  public:
    LabeledTwoParticleState(std::size_t one_particle_dim, Vector amplitudes)
        : dim_(one_particle_dim), amplitudes_(std::move(amplitudes)) {
        if (static_cast<std::size_t>(amplitudes_.size()) != dim_ * dim_) {
            throw BasisError("labeled vector does not match (dim x dim)");
        }
    }

    [[nodiscard]] std::size_t one_particle_dimension() const { return dim_; }
    [[nodiscard]] const Vector &amplitudes() const { return amplitudes_; }

    [[nodiscard]] LabeledTwoParticleState normalized() const {
        const double n = amplitudes_.norm();
        if (n <= norm_tolerance) {
            throw ZeroNormError("labeled state has zero norm");
        }
        return {dim_, amplitudes_ / n};
    }

  private:
    std::size_t dim_;
    Vector amplitudes_;
};

inline Vector kron(const Vector &x, const Vector &y) {
    Vector out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out.segment(i * y.size(), y.size()) = x(i) * y;
    }
    return out;
}

inline Matrix kron(const Matrix &x, const Matrix &y) {
    Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return out;
}

/// Factor-swap permutation P(x (x) y) = y (x) x.
inline Matrix exchange_operator(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix p = Matrix::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            p(j * d + i, i * d + j) = 1.0;
        }
    }
    return p;
}

/// sum_terms c (x (x) y + eta y (x) x) with an explicit eta.
inline LabeledTwoParticleState symmetrize(const TwoParticleState &state, int eta_value) {
    const auto dim = state.basis()->dimension();
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim * dim));
    for (const auto &t : state.terms()) {
        v += t.coefficient * (kron(t.first.amplitudes(), t.second.amplitudes()) +
                              static_cast<double>(eta_value) * kron(t.second.amplitudes(), t.first.amplitudes()));
    }
    return {dim, std::move(v)};
}

inline LabeledTwoParticleState symmetrize(const TwoParticleState &state) {
    return symmetrize(state, eta(state.statistics()));
}

inline Complex labeled_amplitude(const LabeledTwoParticleState &x, const LabeledTwoParticleState &y) {
    if (x.one_particle_dimension() != y.one_particle_dimension()) {
        throw BasisError("labeled states have different dimensions");
    }
    return x.amplitudes().dot(y.amplitudes());
}

/// Max deviation of P v from eta v.
inline double exchange_asymmetry(const LabeledTwoParticleState &v, int eta_value) {
    const Matrix p = exchange_operator(v.one_particle_dimension());
    return (p * v.amplitudes() - static_cast<double>(eta_value) * v.amplitudes()).cwiseAbs().maxCoeff();
}

/// (A (x) I + I (x) A) v.
inline LabeledTwoParticleState apply_symmetric_operator(const Matrix &op, const LabeledTwoParticleState &v) {
    const auto d = static_cast<Eigen::Index>(v.one_particle_dimension());
    const Matrix id = Matrix::Identity(d, d);
    return {v.one_particle_dimension(), (kron(op, id) + kron(id, op)) * v.amplitudes()};
}

/// (U (x) U) v.
inline LabeledTwoParticleState apply_product_operator(const Matrix &u, const LabeledTwoParticleState &v) {
    return {v.one_particle_dimension(), kron(u, u) * v.amplitudes()};
}

/// <v| (Pi (x) I + I (x) Pi) |v> with Pi = |psi><psi|, for a normalized v.
inline double labeled_projector_expectation(const SingleParticleState &psi, const LabeledTwoParticleState &v) {
    if (static_cast<std::size_t>(psi.amplitudes().size()) != v.one_particle_dimension()) {
        throw BasisError("projector and labeled state have different dimensions");
    }
    const Matrix pi = psi.amplitudes() * psi.amplitudes().adjoint();
    return v.amplitudes().dot(apply_symmetric_operator(pi, v).amplitudes()).real();
}

/**
 * Reduced state of one particle for a state of distinguishable particles
 * psi = sum c x (x) y, where every `first` lies in `first_modes` and every
 * `second` in `second_modes` (disjoint). `keep_second` selects which factor
 * survives. Only meaningful in this spatially separated regime, where the
 * labels coincide with the regions; throws DomainError otherwise.
 */
inline Matrix separated_reduced_state(const TwoParticleState &state, const std::vector<std::string> &first_modes,
                                      const std::vector<std::string> &second_modes, bool keep_second) {
    const auto &basis = state.basis();
    const auto d = static_cast<Eigen::Index>(basis->dimension());
    std::vector<bool> in_first(static_cast<std::size_t>(d), false);
    std::vector<bool> in_second(static_cast<std::size_t>(d), false);
    for (const auto &m : first_modes) {
        for (const auto i : basis->indices_of_mode(m)) {
            in_first[i] = true;
        }
    }
    for (const auto &m : second_modes) {
        for (const auto i : basis->indices_of_mode(m)) {
            if (in_first[i]) {
                throw DomainError("separated regions overlap");
            }
            in_second[i] = true;
        }
    }

    // coefficient matrix C(i, j) of sum C_ij e_i (x) e_j
    Matrix c = Matrix::Zero(d, d);
    for (const auto &t : state.terms()) {
        for (Eigen::Index i = 0; i < d; ++i) {
            if (std::abs(t.first.amplitudes()(i)) > amplitude_tolerance && !in_first[static_cast<std::size_t>(i)]) {
                throw DomainError("first slot leaves its region");
            }
            if (std::abs(t.second.amplitudes()(i)) > amplitude_tolerance && !in_second[static_cast<std::size_t>(i)]) {
                throw DomainError("second slot leaves its region");
            }
        }
        c += t.coefficient * t.first.amplitudes() * t.second.amplitudes().transpose();
    }
    // rho_2 = C^T conj(C), rho_1 = C C^dagger
    Matrix rho = keep_second ? Matrix(c.transpose() * c.conjugate()) : Matrix(c * c.adjoint());
    const double tr = rho.trace().real();
    if (tr <= norm_tolerance) {
        throw ZeroNormError("separated state has zero norm");
    }
    return rho / tr;
}

} // namespace nolabel::oracle
