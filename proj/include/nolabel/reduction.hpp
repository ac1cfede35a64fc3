#pragma once

/**
 * @file
 * One-particle projective measurements on a two-particle state and the
 * reduced density matrices built from them.
 *
 * Projecting |x, y> on a one-particle state |k> leaves the unnormalized
 * one-particle state <k|x>|y> + eta <k|y>|x>. Averaging the projected
 * states over a set of measurement states gives the reduced density
 * matrix: over a complete basis this is the full partial trace, over the
 * basis states of some modes only it is the localized partial trace.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "symm.hpp"

namespace nolabel {

struct MeasurementOutcome {
    double probability = 0.0;
    /// Normalized post-measurement state of the remaining particle; empty when p == 0.
    std::optional<SingleParticleState> projected;
};

/**
 * Hermitian, positive semidefinite, unit-trace matrix over the full
 * one-particle basis. `normalization` records the constant divided out
 * (2N for the full trace, M for a localized one).
 */
class OneParticleDensityMatrix {
  public:
    static constexpr double hermiticity_tolerance = 1e-12;
    static constexpr double trace_tolerance = 1e-12;
    static constexpr double eigenvalue_floor = -1e-10;

    /// Validates; throws NumericalError on failure.
    OneParticleDensityMatrix(BasisPtr basis, Matrix matrix, double normalization = 1.0)
        : basis_(std::move(basis)), matrix_(std::move(matrix)), normalization_(normalization) {
        const auto dim = static_cast<Eigen::Index>(basis_->dimension());
        if (matrix_.rows() != dim || matrix_.cols() != dim) {
            throw BasisError("density matrix does not match basis dimension");
        }
        if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > hermiticity_tolerance) {
            throw NumericalError("density matrix is not Hermitian");
        }
        matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
        if (std::abs(matrix_.trace().real() - 1.0) > trace_tolerance) {
            throw NumericalError("density matrix does not have unit trace");
        }
        const Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < eigenvalue_floor) {
            throw NumericalError("density matrix has a negative eigenvalue");
        }
    }

    /// Scales an unnormalized ensemble matrix to unit trace.
    static OneParticleDensityMatrix from_unnormalized(BasisPtr basis, const Matrix &ensemble) {
        const double weight = ensemble.trace().real();
        Matrix scaled = ensemble / weight;
        scaled = (0.5 * (scaled + scaled.adjoint())).eval();
        return {std::move(basis), std::move(scaled), weight};
    }

    [[nodiscard]] const BasisPtr &basis() const { return basis_; }
    [[nodiscard]] const Matrix &matrix() const { return matrix_; }
    [[nodiscard]] double normalization() const { return normalization_; }
    [[nodiscard]] Complex operator()(Eigen::Index row, Eigen::Index col) const { return matrix_(row, col); }

  private:
    BasisPtr basis_;
    Matrix matrix_;
    double normalization_;
};

/// All basis states whose mode lies in a given set (every spin included).
class LocalizedSubspace {
  public:
    LocalizedSubspace(BasisPtr basis, std::vector<std::string> modes)
        : basis_(std::move(basis)), modes_(std::move(modes)) {
        if (modes_.empty()) {
            throw DomainError("localized region needs at least one mode");
        }
        for (const auto &m : modes_) {
            for (const auto i : basis_->indices_of_mode(m)) {
                indices_.push_back(i);
            }
        }
        std::sort(indices_.begin(), indices_.end());
        if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
            throw DomainError("localized region lists a mode twice");
        }
    }

    [[nodiscard]] const BasisPtr &basis() const { return basis_; }
    [[nodiscard]] const std::vector<std::string> &modes() const { return modes_; }
    [[nodiscard]] const std::vector<std::size_t> &indices() const { return indices_; }

    [[nodiscard]] std::vector<SingleParticleState> basis_states() const {
        std::vector<SingleParticleState> out;
        out.reserve(indices_.size());
        for (const auto i : indices_) {
            out.push_back(basis_state_at(basis_, static_cast<Eigen::Index>(i)));
        }
        return out;
    }

    /// Orthogonal projector onto the region.
    [[nodiscard]] Matrix projector() const {
        const auto dim = static_cast<Eigen::Index>(basis_->dimension());
        Matrix p = Matrix::Zero(dim, dim);
        for (const auto i : indices_) {
            p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
        }
        return p;
    }

  private:
    BasisPtr basis_;
    std::vector<std::string> modes_;
    std::vector<std::size_t> indices_;
};

/// <k|state>: sum over terms of c (<k|x>|y> + eta <k|y>|x>). Unnormalized.
inline SingleParticleState project(const SingleParticleState &k, const TwoParticleState &state) {
    if (!same_basis(k.basis(), state.basis())) {
        throw BasisError("measurement state and two-particle state live on different bases");
    }
    const double e = eta(state.statistics());
    Vector out = Vector::Zero(static_cast<Eigen::Index>(state.basis()->dimension()));
    for (const auto &t : state.terms()) {
        out += t.coefficient * (inner_product(k, t.first) * t.second.amplitudes() +
                                e * inner_product(k, t.second) * t.first.amplitudes());
    }
    return {state.basis(), std::move(out)};
}

/**
 * Outcome of the projective measurement |k><k| on a normalized state:
 * p = <Pi_k>/2 and the remaining particle in <k|state>/sqrt(<Pi_k>).
 */
inline MeasurementOutcome measure(const SingleParticleState &k, const TwoParticleState &state) {
    if (!is_normalized(state)) {
        throw DomainError("measure() needs a normalized two-particle state");
    }
    if (!k.is_normalized()) {
        throw DomainError("measurement state must be normalized");
    }
    const SingleParticleState reduced = project(k, state);
    // <Pi_k> = <state|k> x <k|state> = ||<k|state>||^2
    const double weight = reduced.amplitudes().squaredNorm();
    MeasurementOutcome outcome;
    outcome.probability = weight / 2.0;
    if (weight > norm_tolerance) {
        outcome.projected = SingleParticleState(state.basis(), reduced.amplitudes() / std::sqrt(weight));
    } else {
        outcome.probability = 0.0;
    }
    return outcome;
}

/// sum_k <k|state><state|k> over the given measurement states, unnormalized.
inline Matrix ensemble_over(const TwoParticleState &state, std::span<const SingleParticleState> states) {
    const auto dim = static_cast<Eigen::Index>(state.basis()->dimension());
    Matrix acc = Matrix::Zero(dim, dim);
    for (const auto &k : states) {
        const Vector v = project(k, state).amplitudes();
        acc += v * v.adjoint();
    }
    return acc;
}

/// Reduced state over an arbitrary orthonormal set; ZeroWeightError if nothing survives.
inline OneParticleDensityMatrix trace_over(const TwoParticleState &state,
                                           std::span<const SingleParticleState> states) {
    const Matrix acc = ensemble_over(state, states);
    if (acc.trace().real() <= norm_tolerance) {
        throw ZeroWeightError("no weight survives the one-particle projections");
    }
    return OneParticleDensityMatrix::from_unnormalized(state.basis(), acc);
}

/// Full partial trace over the standard basis; the divided-out constant is 2N.
inline OneParticleDensityMatrix partial_trace(const TwoParticleState &state) {
    if (norm_constant(state) <= norm_tolerance) {
        throw ZeroNormError("partial trace of a zero-norm state");
    }
    std::vector<SingleParticleState> all;
    const auto dim = static_cast<Eigen::Index>(state.basis()->dimension());
    for (Eigen::Index i = 0; i < dim; ++i) {
        all.push_back(basis_state_at(state.basis(), i));
    }
    return trace_over(state, all);
}

/// Full partial trace summed over a caller-supplied orthonormal basis.
inline OneParticleDensityMatrix partial_trace(const TwoParticleState &state,
                                              std::span<const SingleParticleState> basis) {
    if (norm_constant(state) <= norm_tolerance) {
        throw ZeroNormError("partial trace of a zero-norm state");
    }
    if (basis.size() != state.basis()->dimension()) {
        throw BasisError("partial trace needs a complete one-particle basis");
    }
    return trace_over(state, basis);
}

/// Partial trace restricted to the region's basis states, renormalized by M.
inline OneParticleDensityMatrix localized_partial_trace(const TwoParticleState &state,
                                                        const LocalizedSubspace &region) {
    if (!same_basis(region.basis(), state.basis())) {
        throw BasisError("region and state live on different bases");
    }
    if (norm_constant(state) <= norm_tolerance) {
        throw ZeroNormError("localized partial trace of a zero-norm state");
    }
    const auto states = region.basis_states();
    const Matrix acc = ensemble_over(state, states);
    if (acc.trace().real() <= norm_tolerance * norm_constant(state)) {
        throw ZeroWeightError("particle is never found in the localized region");
    }
    return OneParticleDensityMatrix::from_unnormalized(state.basis(), acc);
}

/// The nonlocal measurement basis {|O+- s>} over modes L and R.
inline std::vector<SingleParticleState> nonlocal_basis(const BasisPtr &basis) {
    std::vector<SingleParticleState> out;
    for (const auto sign : {NonlocalSign::plus, NonlocalSign::minus}) {
        for (const auto &s : basis->spins()) {
            out.push_back(nonlocal_mode(basis, sign, s));
        }
    }
    return out;
}

/// Partial trace with projections on the delocalized modes O+ and O-.
inline OneParticleDensityMatrix measurement_induced_trace(const TwoParticleState &state) {
    if (norm_constant(state) <= norm_tolerance) {
        throw ZeroNormError("measurement-induced trace of a zero-norm state");
    }
    const auto states = nonlocal_basis(state.basis());
    return trace_over(state, states);
}

/// Pi rho Pi / Tr(Pi rho Pi) for the region projector Pi.
inline OneParticleDensityMatrix project_density(const OneParticleDensityMatrix &rho,
                                                const LocalizedSubspace &region) {
    if (!same_basis(region.basis(), rho.basis())) {
        throw BasisError("region and density matrix live on different bases");
    }
    const Matrix p = region.projector();
    const Matrix projected = p * rho.matrix() * p;
    if (projected.trace().real() <= norm_tolerance) {
        throw ZeroWeightError("density matrix has no weight in the region");
    }
    return OneParticleDensityMatrix::from_unnormalized(rho.basis(), projected);
}

} // namespace nolabel
