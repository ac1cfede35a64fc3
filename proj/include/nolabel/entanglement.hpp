#pragma once

/**
 * @file
 * Von Neumann entropy of reduced states and the two-qubit overlap family
 *
 *     |Psi> = a |L up, B down> + b e^{i theta} |L down, B up>,   b = sqrt(1 - a^2),
 *
 * where |B> = <L|B>|L> + sqrt(1 - chi)|R>. Entropies are in bits.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "reduction.hpp"

namespace nolabel {

struct EntropyResult {
    /// Descending, clipped to [0, 1].
    std::vector<double> eigenvalues;
    double entropy = 0.0;
};

/// -sum p log2 p with 0 log 0 = 0.
inline double shannon_bits(std::span<const double> probabilities) {
    double s = 0.0;
    for (const double p : probabilities) {
        if (p > 0.0) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

inline double binary_entropy(double p) {
    const double q[] = {p, 1.0 - p};
    return shannon_bits(q);
}

/// Entropy of an arbitrary Hermitian unit-trace matrix (eigenvalues in [-1e-10, 0) clipped).
inline EntropyResult von_neumann_entropy(const Matrix &rho, double hermiticity_tol = 1e-10) {
    if (rho.rows() != rho.cols()) {
        throw NumericalError("density matrix must be square");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > hermiticity_tol) {
        throw NumericalError("density matrix is not Hermitian");
    }
    const Matrix h = 0.5 * (rho + rho.adjoint());
    const Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    EntropyResult result;
    result.eigenvalues.reserve(static_cast<std::size_t>(h.rows()));
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        double lambda = solver.eigenvalues()(i);
        if (lambda < OneParticleDensityMatrix::eigenvalue_floor) {
            throw NumericalError("density matrix has a negative eigenvalue");
        }
        result.eigenvalues.push_back(std::clamp(lambda, 0.0, 1.0));
    }
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end(), std::greater<>());
    result.entropy = shannon_bits(result.eigenvalues);
    return result;
}

inline EntropyResult von_neumann_entropy(const OneParticleDensityMatrix &rho) {
    return von_neumann_entropy(rho.matrix());
}

/// Parameters of the overlap family; b is always derived from a.
class BellLikeParams {
  public:
    BellLikeParams(double a, double theta, double chi, Statistics statistics, double overlap_phase = 0.0)
        : a_(a), theta_(theta), overlap_(chi, overlap_phase), statistics_(statistics) {
        if (!(a >= 0.0 && a <= 1.0)) {
            throw DomainError("amplitude a must lie in [0, 1]");
        }
        if (!std::isfinite(theta)) {
            throw DomainError("theta must be finite");
        }
    }

    static BellLikeParams from_a_squared(double a_squared, double theta, double chi, Statistics statistics) {
        if (!(a_squared >= 0.0 && a_squared <= 1.0)) {
            throw DomainError("a^2 must lie in [0, 1]");
        }
        return {std::sqrt(a_squared), theta, chi, statistics};
    }

    [[nodiscard]] double a() const { return a_; }
    [[nodiscard]] double b() const { return std::sqrt(std::max(0.0, 1.0 - a_ * a_)); }
    [[nodiscard]] double theta() const { return theta_; }
    [[nodiscard]] double chi() const { return overlap_.chi(); }
    [[nodiscard]] const ModeOverlap &overlap() const { return overlap_; }
    [[nodiscard]] Statistics statistics() const { return statistics_; }

  private:
    double a_;
    double theta_;
    ModeOverlap overlap_;
    Statistics statistics_;
};

inline TwoParticleState bell_like_state(const BellLikeParams &p, const BasisPtr &basis = two_well_basis()) {
    const auto l_up = basis_state(basis, "L", spin::up);
    const auto l_down = basis_state(basis, "L", spin::down);
    const auto b_up = overlap_mode(basis, p.overlap(), spin::up);
    const auto b_down = overlap_mode(basis, p.overlap(), spin::down);
    TwoParticleState psi(basis, p.statistics());
    psi.add_term(p.a(), l_up, b_down);
    psi.add_term(std::polar(p.b(), p.theta()), l_down, b_up);
    return psi;
}

/// Closed-form pair (lambda1, lambda2) of the L-localized reduced state.
inline std::pair<double, double> closed_form_lambda(const BellLikeParams &p) {
    const double e = eta(p.statistics());
    const double ab_cos = p.a() * p.b() * std::cos(p.theta());
    const double denominator = 1.0 + p.chi() * (1.0 + 4.0 * e * ab_cos);
    if (denominator <= norm_tolerance) {
        throw DegenerateError("closed-form eigenvalues: vanishing denominator");
    }
    const double b2 = p.b() * p.b();
    const double lambda1 = (p.a() * p.a() + p.chi() * (b2 + 2.0 * e * ab_cos)) / denominator;
    return {lambda1, 1.0 - lambda1};
}

/// Entropy of a two-qubit state with spectrum (a^2, 1 - a^2).
inline double entanglement_ni(double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw DomainError("amplitude a must lie in [0, 1]");
    }
    return binary_entropy(a * a);
}

/// E_L of the single-term states (a = 0 or 1): log2(1+chi) - chi/(1+chi) log2 chi.
inline double elementary_entanglement(double chi) {
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw DomainError("overlap chi must lie in [0, 1]");
    }
    const double tail = chi > 0.0 ? chi / (1.0 + chi) * std::log2(chi) : 0.0;
    return std::log2(1.0 + chi) - tail;
}

inline LocalizedSubspace region(const BasisPtr &basis, std::string mode) {
    return {basis, {std::move(mode)}};
}

inline OneParticleDensityMatrix reduced_state_L(const BellLikeParams &p) {
    const auto psi = bell_like_state(p);
    return localized_partial_trace(psi, region(psi.basis(), "L"));
}

inline OneParticleDensityMatrix reduced_state_R(const BellLikeParams &p) {
    const auto psi = bell_like_state(p);
    return localized_partial_trace(psi, region(psi.basis(), "R"));
}

inline EntropyResult entanglement_L(const BellLikeParams &p) {
    return von_neumann_entropy(reduced_state_L(p));
}

inline EntropyResult entanglement_R(const BellLikeParams &p) {
    return von_neumann_entropy(reduced_state_R(p));
}

/// Trace on L, then project the remaining particle on R.
inline EntropyResult entanglement_LR(const BellLikeParams &p) {
    const auto rho = reduced_state_L(p);
    return von_neumann_entropy(project_density(rho, region(rho.basis(), "R")));
}

/// Trace on L, then project the remaining particle on L again.
inline EntropyResult entanglement_LL(const BellLikeParams &p) {
    const auto rho = reduced_state_L(p);
    return von_neumann_entropy(project_density(rho, region(rho.basis(), "L")));
}

/// Trace in the nonlocal O+/O- basis.
inline EntropyResult entanglement_mi(const BellLikeParams &p) {
    return von_neumann_entropy(measurement_induced_trace(bell_like_state(p)));
}

inline EntropyResult entanglement_full(const BellLikeParams &p) {
    return von_neumann_entropy(partial_trace(bell_like_state(p)));
}

struct SpinCorrelation {
    /// Remaining particle after projecting one particle of |L up, L down> on up_u.
    SingleParticleState up_outcome;
    /// Same, projecting on down_u.
    SingleParticleState down_outcome;
    /// Mirror image of u through the x-y plane.
    SpinDirection reflected;
    /// Remaining particle after projecting |L up, L up> on up_u; empty for fermions
    /// (the state vanishes) or when the outcome has zero probability.
    std::optional<SingleParticleState> aligned_outcome;
};

inline SpinCorrelation spin_correlation_check(Statistics statistics, const SpinDirection &dir) {
    const auto basis = two_well_basis();
    const auto up = basis_state(basis, "L", spin::up);
    const auto down = basis_state(basis, "L", spin::down);
    const TwoParticleState opposite = normalize(TwoParticleState(statistics, up, down));

    const auto up_u = spin_state(basis, "L", dir, SpinProjection::up);
    const auto down_u = spin_state(basis, "L", dir, SpinProjection::down);

    std::optional<SingleParticleState> aligned;
    const TwoParticleState same(statistics, up, up);
    if (norm_constant(same) > norm_tolerance) {
        aligned = measure(up_u, normalize(same)).projected;
    }
    return {project(up_u, opposite).normalized(), project(down_u, opposite).normalized(),
            dir.reflected_xy(), std::move(aligned)};
}

} // namespace nolabel
