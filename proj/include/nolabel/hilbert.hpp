#pragma once

/**
 * @file
 * One-particle state space: finite mode x pseudospin bases, superposition
 * states over them, and the named single-particle constructions used by the
 * two-well scenarios (overlapping mode B, nonlocal modes O+/O-, spin
 * eigenstates along an arbitrary direction).
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"

namespace nolabel {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Absolute tolerance for amplitude comparisons.
inline constexpr double amplitude_tolerance = 1e-10;

namespace spin {
inline constexpr std::string_view up = "up";
inline constexpr std::string_view down = "down";
} // namespace spin

/**
 * Orthonormal product basis {|mode, spin>}. Dense index of (mode m, spin s)
 * is m * |spins| + s, so all spins of one mode are contiguous.
 */
class OneParticleBasis {
  public:
    OneParticleBasis(std::vector<std::string> modes, std::vector<std::string> spins)
        : modes_(std::move(modes)), spins_(std::move(spins)) {
        if (modes_.empty() || spins_.empty()) {
            throw BasisError("basis needs at least one mode and one spin label");
        }
        check_unique(modes_, "mode");
        check_unique(spins_, "spin");
    }

    [[nodiscard]] std::size_t dimension() const { return modes_.size() * spins_.size(); }
    [[nodiscard]] const std::vector<std::string> &modes() const { return modes_; }
    [[nodiscard]] const std::vector<std::string> &spins() const { return spins_; }

    [[nodiscard]] bool has_mode(std::string_view mode) const {
        return std::find(modes_.begin(), modes_.end(), mode) != modes_.end();
    }

    [[nodiscard]] std::size_t mode_index(std::string_view mode) const {
        return position(modes_, mode, "mode");
    }
    [[nodiscard]] std::size_t spin_index(std::string_view spin) const {
        return position(spins_, spin, "spin");
    }

    [[nodiscard]] std::size_t index(std::string_view mode, std::string_view spin) const {
        return mode_index(mode) * spins_.size() + spin_index(spin);
    }

    [[nodiscard]] const std::string &mode_of(std::size_t index) const {
        return modes_.at(index / spins_.size());
    }
    [[nodiscard]] const std::string &spin_of(std::size_t index) const {
        return spins_.at(index % spins_.size());
    }
    [[nodiscard]] std::string label(std::size_t index) const {
        return mode_of(index) + ":" + spin_of(index);
    }

    /// Dense indices of every basis state whose mode is `mode`.
    [[nodiscard]] std::vector<std::size_t> indices_of_mode(std::string_view mode) const {
        const std::size_t m = mode_index(mode);
        std::vector<std::size_t> out(spins_.size());
        for (std::size_t s = 0; s < spins_.size(); ++s) {
            out[s] = m * spins_.size() + s;
        }
        return out;
    }

    bool operator==(const OneParticleBasis &) const = default;

  private:
    static void check_unique(const std::vector<std::string> &labels, const char *what) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i].empty()) {
                throw BasisError(std::string("empty ") + what + " label");
            }
            for (std::size_t j = i + 1; j < labels.size(); ++j) {
                if (labels[i] == labels[j]) {
                    throw BasisError(std::string("duplicate ") + what + " label '" + labels[i] + "'");
                }
            }
        }
    }

    static std::size_t position(const std::vector<std::string> &labels, std::string_view label,
                                const char *what) {
        const auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) {
            throw BasisError(std::string("unknown ") + what + " label '" + std::string(label) + "'");
        }
        return static_cast<std::size_t>(it - labels.begin());
    }

    std::vector<std::string> modes_;
    std::vector<std::string> spins_;
};

using BasisPtr = std::shared_ptr<const OneParticleBasis>;

inline BasisPtr make_basis(std::vector<std::string> modes,
                           std::vector<std::string> spins = {std::string(spin::up),
                                                             std::string(spin::down)}) {
    return std::make_shared<const OneParticleBasis>(std::move(modes), std::move(spins));
}

/// {L, R} x {up, down}: the double-well basis.
inline BasisPtr two_well_basis() {
    static const BasisPtr basis = make_basis({"L", "R"});
    return basis;
}

inline bool same_basis(const BasisPtr &x, const BasisPtr &y) {
    return x == y || (x && y && *x == *y);
}

/// Complex amplitude vector over a OneParticleBasis.
class SingleParticleState {
  public:
    SingleParticleState(BasisPtr basis, Vector amplitudes)
        : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
        if (!basis_) {
            throw BasisError("null basis");
        }
        if (static_cast<std::size_t>(amplitudes_.size()) != basis_->dimension()) {
            throw BasisError("amplitude vector does not match basis dimension");
        }
    }

    /// The zero vector.
    explicit SingleParticleState(BasisPtr basis)
        : SingleParticleState(basis, Vector::Zero(static_cast<Eigen::Index>(basis->dimension()))) {}

    [[nodiscard]] const BasisPtr &basis() const { return basis_; }
    [[nodiscard]] const Vector &amplitudes() const { return amplitudes_; }
    [[nodiscard]] Complex amplitude(std::size_t index) const {
        return amplitudes_(static_cast<Eigen::Index>(index));
    }

    [[nodiscard]] double norm() const { return amplitudes_.norm(); }
    [[nodiscard]] bool is_normalized(double tol = amplitude_tolerance) const {
        return std::abs(amplitudes_.squaredNorm() - 1.0) <= tol;
    }

    [[nodiscard]] SingleParticleState normalized() const {
        const double n = norm();
        if (n <= amplitude_tolerance) {
            throw ZeroNormError("cannot normalize a zero one-particle state");
        }
        return {basis_, amplitudes_ / n};
    }

    SingleParticleState &operator+=(const SingleParticleState &other) {
        require_same_basis(other);
        amplitudes_ += other.amplitudes_;
        return *this;
    }
    SingleParticleState &operator-=(const SingleParticleState &other) {
        require_same_basis(other);
        amplitudes_ -= other.amplitudes_;
        return *this;
    }
    SingleParticleState &operator*=(Complex c) {
        amplitudes_ *= c;
        return *this;
    }

    friend SingleParticleState operator+(SingleParticleState x, const SingleParticleState &y) {
        return x += y;
    }
    friend SingleParticleState operator-(SingleParticleState x, const SingleParticleState &y) {
        return x -= y;
    }
    friend SingleParticleState operator*(Complex c, SingleParticleState x) { return x *= c; }
    friend SingleParticleState operator*(SingleParticleState x, Complex c) { return x *= c; }

    void require_same_basis(const SingleParticleState &other) const {
        if (!same_basis(basis_, other.basis_)) {
            throw BasisError("one-particle states live on different bases");
        }
    }

  private:
    BasisPtr basis_;
    Vector amplitudes_;
};

/// <x|y>, conjugate-linear in x.
inline Complex inner_product(const SingleParticleState &x, const SingleParticleState &y) {
    x.require_same_basis(y);
    return x.amplitudes().dot(y.amplitudes());
}

/// Bloch-sphere direction (polar in [0, pi], azimuth wrapped to [0, 2pi)).
class SpinDirection {
  public:
    SpinDirection(double polar, double azimuth) : polar_(polar) {
        if (!(polar >= 0.0 && polar <= std::numbers::pi)) {
            throw DomainError("spin polar angle must lie in [0, pi]");
        }
        if (!std::isfinite(azimuth)) {
            throw DomainError("spin azimuth must be finite");
        }
        constexpr double two_pi = 2.0 * std::numbers::pi;
        azimuth_ = std::fmod(azimuth, two_pi);
        if (azimuth_ < 0.0) {
            azimuth_ += two_pi;
        }
        if (azimuth_ >= two_pi) {
            azimuth_ = 0.0;
        }
    }

    [[nodiscard]] double polar() const { return polar_; }
    [[nodiscard]] double azimuth() const { return azimuth_; }

    /// Mirror image through the x-y plane: (pi - polar, azimuth).
    [[nodiscard]] SpinDirection reflected_xy() const {
        return {std::numbers::pi - polar_, azimuth_};
    }

  private:
    double polar_;
    double azimuth_ = 0.0;
};

/// Overlap <L|B> = sqrt(chi) * exp(i * phase) of the mode B with the mode L.
class ModeOverlap {
  public:
    explicit ModeOverlap(double chi, double phase = 0.0) : chi_(chi), phase_(phase) {
        if (!(chi >= 0.0 && chi <= 1.0)) {
            throw DomainError("overlap chi must lie in [0, 1]");
        }
    }

    [[nodiscard]] double chi() const { return chi_; }
    [[nodiscard]] double phase() const { return phase_; }
    [[nodiscard]] Complex amplitude() const { return std::polar(std::sqrt(chi_), phase_); }

  private:
    double chi_;
    double phase_;
};

enum class NonlocalSign { plus, minus };
enum class SpinProjection { up, down };

inline SingleParticleState basis_state(const BasisPtr &basis, std::string_view mode,
                                       std::string_view spin) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(basis->dimension()));
    v(static_cast<Eigen::Index>(basis->index(mode, spin))) = 1.0;
    return {basis, std::move(v)};
}

inline SingleParticleState basis_state_at(const BasisPtr &basis, Eigen::Index index) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(basis->dimension()));
    v(index) = 1.0;
    return {basis, std::move(v)};
}

/// |B s> with |B> = <L|B>|L> + sqrt(1 - chi)|R>.
inline SingleParticleState overlap_mode(const BasisPtr &basis, const ModeOverlap &overlap,
                                        std::string_view spin) {
    return overlap.amplitude() * basis_state(basis, "L", spin) +
           Complex(std::sqrt(1.0 - overlap.chi())) * basis_state(basis, "R", spin);
}

/// |O+- s> with |O+-> = (|L> +- |R>) / sqrt(2).
inline SingleParticleState nonlocal_mode(const BasisPtr &basis, NonlocalSign sign,
                                         std::string_view spin) {
    const double sign_r = sign == NonlocalSign::plus ? 1.0 : -1.0;
    return Complex(std::numbers::sqrt2 / 2.0) *
           (basis_state(basis, "L", spin) + Complex(sign_r) * basis_state(basis, "R", spin));
}

/// Spin eigenstate along `dir` inside `mode`. Needs spins {up, down}.
inline SingleParticleState spin_state(const BasisPtr &basis, std::string_view mode,
                                      const SpinDirection &dir, SpinProjection projection) {
    if (basis->spins().size() != 2) {
        throw BasisError("spin directions need a two-spin basis");
    }
    const double c = std::cos(dir.polar() / 2.0);
    const double s = std::sin(dir.polar() / 2.0);
    const auto up = basis_state(basis, mode, spin::up);
    const auto down = basis_state(basis, mode, spin::down);
    if (projection == SpinProjection::up) {
        return Complex(c) * up + std::polar(s, dir.azimuth()) * down;
    }
    return -std::polar(s, -dir.azimuth()) * up + Complex(c) * down;
}

} // namespace nolabel
