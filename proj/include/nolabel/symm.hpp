#pragma once

/**
 * @file
 * Two identical particles without particle labels.
 *
 * A two-particle state is a formal, unnormalized sum of ordered pairs
 * c |phi, psi>. The only structure placed on these pairs is the
 * symmetrized amplitude
 *
 *     <a, b | x, y> = <a|x><b|y> + eta <a|y><b|x>,       eta = +1 / -1,
 *
 * extended bilinearly over terms. Swap symmetry |x, y> = eta |y, x>,
 * Pauli exclusion and the norm constant 1 + eta |<x|y>|^2 all follow
 * from it; nothing here symmetrizes tensor products explicitly.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilbert.hpp"

namespace nolabel {

/// Exchange statistics; the underlying value is eta.
enum class Statistics : int { boson = 1, fermion = -1 };

constexpr int eta(Statistics s) { return static_cast<int>(s); }

inline const char *to_string(Statistics s) {
    return s == Statistics::boson ? "boson" : "fermion";
}

/// Norms below this are treated as zero.
inline constexpr double norm_tolerance = 1e-12;

struct Term {
    Complex coefficient;
    SingleParticleState first;
    SingleParticleState second;
};

class TwoParticleState {
  public:
    /// The zero state.
    TwoParticleState(BasisPtr basis, Statistics statistics)
        : basis_(std::move(basis)), statistics_(statistics) {
        if (!basis_) {
            throw BasisError("null basis");
        }
    }

    /// coefficient * |first, second>.
    TwoParticleState(Statistics statistics, SingleParticleState first, SingleParticleState second,
                     Complex coefficient = 1.0)
        : TwoParticleState(first.basis(), statistics) {
        add_term(coefficient, std::move(first), std::move(second));
    }

    TwoParticleState &add_term(Complex coefficient, SingleParticleState first,
                               SingleParticleState second) {
        if (!same_basis(basis_, first.basis()) || !same_basis(basis_, second.basis())) {
            throw BasisError("term states do not share the two-particle state's basis");
        }
        terms_.push_back({coefficient, std::move(first), std::move(second)});
        return *this;
    }

    [[nodiscard]] const BasisPtr &basis() const { return basis_; }
    [[nodiscard]] Statistics statistics() const { return statistics_; }
    [[nodiscard]] const std::vector<Term> &terms() const { return terms_; }

    TwoParticleState &operator+=(const TwoParticleState &other) {
        require_compatible(other);
        terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
        return *this;
    }
    TwoParticleState &operator-=(const TwoParticleState &other) {
        require_compatible(other);
        for (const auto &t : other.terms_) {
            terms_.push_back({-t.coefficient, t.first, t.second});
        }
        return *this;
    }
    TwoParticleState &operator*=(Complex c) {
        for (auto &t : terms_) {
            t.coefficient *= c;
        }
        return *this;
    }

    friend TwoParticleState operator+(TwoParticleState x, const TwoParticleState &y) { return x += y; }
    friend TwoParticleState operator-(TwoParticleState x, const TwoParticleState &y) { return x -= y; }
    friend TwoParticleState operator*(Complex c, TwoParticleState x) { return x *= c; }
    friend TwoParticleState operator*(TwoParticleState x, Complex c) { return x *= c; }

    void require_compatible(const TwoParticleState &other) const {
        if (statistics_ != other.statistics_) {
            throw DomainError("two-particle states have different statistics");
        }
        if (!same_basis(basis_, other.basis_)) {
            throw BasisError("two-particle states live on different bases");
        }
    }

  private:
    BasisPtr basis_;
    Statistics statistics_;
    std::vector<Term> terms_;
};

/// <bra | ket>, conjugate-linear in the bra.
inline Complex two_particle_amplitude(const TwoParticleState &bra, const TwoParticleState &ket) {
    bra.require_compatible(ket);
    const double e = eta(ket.statistics());
    Complex sum = 0.0;
    for (const auto &b : bra.terms()) {
        for (const auto &k : ket.terms()) {
            const Complex direct = inner_product(b.first, k.first) * inner_product(b.second, k.second);
            const Complex exchange = inner_product(b.first, k.second) * inner_product(b.second, k.first);
            sum += std::conj(b.coefficient) * k.coefficient * (direct + e * exchange);
        }
    }
    return sum;
}

/// <state|state>, clipped at zero.
inline double norm_constant(const TwoParticleState &state) {
    const double n = two_particle_amplitude(state, state).real();
    return n < 0.0 ? 0.0 : n;
}

inline TwoParticleState normalize(const TwoParticleState &state) {
    const double n = norm_constant(state);
    if (n <= norm_tolerance) {
        throw ZeroNormError(std::string("two-particle state has zero norm (") +
                            to_string(state.statistics()) + ")");
    }
    return Complex(1.0 / std::sqrt(n)) * state;
}

inline bool is_normalized(const TwoParticleState &state, double tol = amplitude_tolerance) {
    return std::abs(norm_constant(state) - 1.0) <= tol;
}

/// Each term (c, x, y) -> (c, y, x). Physically equal to eta * state.
inline TwoParticleState swap(const TwoParticleState &state) {
    TwoParticleState out(state.basis(), state.statistics());
    for (const auto &t : state.terms()) {
        out.add_term(t.coefficient, t.second, t.first);
    }
    return out;
}

/**
 * Expands every term onto basis pairs |e_i, e_j> with i <= j; a pair with
 * i > j is reordered and picks up a factor eta. Doubly occupied fermionic
 * pairs are kept (they carry zero norm), and pairs whose coefficient is
 * below `drop_below` are removed.
 */
inline TwoParticleState canonicalize(const TwoParticleState &state, double drop_below = 0.0) {
    const auto dim = static_cast<Eigen::Index>(state.basis()->dimension());
    const double e = eta(state.statistics());
    Matrix c = Matrix::Zero(dim, dim);
    for (const auto &t : state.terms()) {
        c += t.coefficient * (t.first.amplitudes() * t.second.amplitudes().transpose());
    }
    TwoParticleState out(state.basis(), state.statistics());
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = i; j < dim; ++j) {
            const Complex coeff = i == j ? c(i, i) : c(i, j) + e * c(j, i);
            if (std::abs(coeff) > drop_below) {
                out.add_term(coeff, basis_state_at(state.basis(), i), basis_state_at(state.basis(), j));
            }
        }
    }
    return out;
}

/// Coefficient tensor C + eta C^T of sum_ij C_ij |e_i, e_j>; two states are
/// physically equal exactly when these agree.
inline Matrix symmetrized_coefficients(const TwoParticleState &state) {
    const auto dim = static_cast<Eigen::Index>(state.basis()->dimension());
    Matrix c = Matrix::Zero(dim, dim);
    for (const auto &t : state.terms()) {
        c += t.coefficient * (t.first.amplitudes() * t.second.amplitudes().transpose());
    }
    return c + eta(state.statistics()) * c.transpose();
}

/// Physical equality, entrywise on the symmetrized coefficients.
inline bool equivalent(const TwoParticleState &x, const TwoParticleState &y,
                       double tol = amplitude_tolerance) {
    x.require_compatible(y);
    const Matrix d = symmetrized_coefficients(x) - symmetrized_coefficients(y);
    return d.size() == 0 || d.cwiseAbs().maxCoeff() <= tol;
}

/// One-particle operator sum_jk a_jk |e_j><e_k| over a fixed basis.
class OneParticleOperator {
  public:
    OneParticleOperator(BasisPtr basis, Matrix matrix) : basis_(std::move(basis)), matrix_(std::move(matrix)) {
        const auto dim = static_cast<Eigen::Index>(basis_->dimension());
        if (matrix_.rows() != dim || matrix_.cols() != dim) {
            throw BasisError("operator matrix does not match basis dimension");
        }
    }

    static OneParticleOperator identity(const BasisPtr &basis) {
        const auto dim = static_cast<Eigen::Index>(basis->dimension());
        return {basis, Matrix::Identity(dim, dim)};
    }
    static OneParticleOperator zero(const BasisPtr &basis) {
        const auto dim = static_cast<Eigen::Index>(basis->dimension());
        return {basis, Matrix::Zero(dim, dim)};
    }
    /// |state><state|
    static OneParticleOperator projector(const SingleParticleState &state) {
        return {state.basis(), state.amplitudes() * state.amplitudes().adjoint()};
    }

    [[nodiscard]] const BasisPtr &basis() const { return basis_; }
    [[nodiscard]] const Matrix &matrix() const { return matrix_; }

    [[nodiscard]] SingleParticleState apply(const SingleParticleState &state) const {
        if (!same_basis(basis_, state.basis())) {
            throw BasisError("operator and state live on different bases");
        }
        return {basis_, matrix_ * state.amplitudes()};
    }

  private:
    BasisPtr basis_;
    Matrix matrix_;
};

/// A|x, y> = |Ax, y> + |x, Ay>.
inline TwoParticleState apply_one_particle_operator(const OneParticleOperator &op,
                                                    const TwoParticleState &state) {
    if (!same_basis(op.basis(), state.basis())) {
        throw BasisError("operator and state live on different bases");
    }
    TwoParticleState out(state.basis(), state.statistics());
    for (const auto &t : state.terms()) {
        out.add_term(t.coefficient, op.apply(t.first), t.second);
        out.add_term(t.coefficient, t.first, op.apply(t.second));
    }
    return out;
}

/// <state| A |state> for a normalized state.
inline Complex expectation(const OneParticleOperator &op, const TwoParticleState &state) {
    return two_particle_amplitude(state, apply_one_particle_operator(op, state));
}

/// The same single-particle map applied to both slots: |x, y> -> |Ux, Uy>.
inline TwoParticleState apply_to_each_particle(const Matrix &map, const TwoParticleState &state) {
    const OneParticleOperator op(state.basis(), map);
    TwoParticleState out(state.basis(), state.statistics());
    for (const auto &t : state.terms()) {
        out.add_term(t.coefficient, op.apply(t.first), op.apply(t.second));
    }
    return out;
}

/// Spin-insensitive splitter |source, s> -> r |out1, s> + t |out2, s>.
struct SplitterParams {
    Complex r;
    Complex t;
    std::string source = "L";
    std::string out1 = "C";
    std::string out2 = "D";

    void validate() const {
        if (std::abs(std::norm(r) + std::norm(t) - 1.0) > amplitude_tolerance) {
            throw DomainError("splitter needs |r|^2 + |t|^2 = 1");
        }
        if (source == out1 || source == out2 || out1 == out2) {
            throw DomainError("splitter source and output modes must be distinct");
        }
    }
};

/**
 * Single-particle matrix of the splitter. Basis states of other modes are
 * left fixed, so the map is norm preserving on states with no amplitude in
 * the output modes.
 */
inline Matrix splitter_matrix(const SplitterParams &params, const BasisPtr &basis) {
    params.validate();
    const auto dim = static_cast<Eigen::Index>(basis->dimension());
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto &s : basis->spins()) {
        const auto src = static_cast<Eigen::Index>(basis->index(params.source, s));
        const auto o1 = static_cast<Eigen::Index>(basis->index(params.out1, s));
        const auto o2 = static_cast<Eigen::Index>(basis->index(params.out2, s));
        u(src, src) = 0.0;
        u(o1, src) = params.r;
        u(o2, src) = params.t;
    }
    return u;
}

inline TwoParticleState apply_splitter(const SplitterParams &params, const TwoParticleState &state) {
    return apply_to_each_particle(splitter_matrix(params, state.basis()), state);
}

struct ExtractionReport {
    double same_mode_1 = 0.0;
    double same_mode_2 = 0.0;
    double split = 0.0;
    /// Normalized one-particle-per-mode sector; empty when split == 0.
    std::optional<TwoParticleState> split_component;
};

/**
 * Splits a state living on modes out1/out2 into the three orthogonal
 * sectors: both particles in out1, both in out2, one in each.
 */
inline ExtractionReport extraction_report(const TwoParticleState &output, const std::string &out1,
                                          const std::string &out2) {
    const auto &basis = output.basis();
    const auto dim = static_cast<Eigen::Index>(basis->dimension());
    Matrix p1 = Matrix::Zero(dim, dim);
    Matrix p2 = Matrix::Zero(dim, dim);
    for (const auto i : basis->indices_of_mode(out1)) {
        p1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    }
    for (const auto i : basis->indices_of_mode(out2)) {
        p2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    }
    const OneParticleOperator proj1(basis, p1);
    const OneParticleOperator proj2(basis, p2);

    TwoParticleState both1(basis, output.statistics());
    TwoParticleState both2(basis, output.statistics());
    TwoParticleState split(basis, output.statistics());
    for (const auto &t : output.terms()) {
        both1.add_term(t.coefficient, proj1.apply(t.first), proj1.apply(t.second));
        both2.add_term(t.coefficient, proj2.apply(t.first), proj2.apply(t.second));
        split.add_term(t.coefficient, proj1.apply(t.first), proj2.apply(t.second));
        split.add_term(t.coefficient, proj2.apply(t.first), proj1.apply(t.second));
    }

    const double total = norm_constant(output);
    if (total <= norm_tolerance) {
        throw ZeroNormError("extraction input has zero norm");
    }
    const double residual = norm_constant(output - both1 - both2 - split);
    if (residual > amplitude_tolerance * total) {
        throw DomainError("state has amplitude outside the out1/out2 sectors");
    }

    ExtractionReport report;
    report.same_mode_1 = norm_constant(both1) / total;
    report.same_mode_2 = norm_constant(both2) / total;
    report.split = norm_constant(split) / total;
    if (report.split > norm_tolerance) {
        report.split_component = canonicalize(normalize(split), norm_tolerance);
    }
    return report;
}

} // namespace nolabel
