#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ghzt/core/eigen.hpp"
#include "ghzt/core/errors.hpp"
#include "ghzt/core/matrix.hpp"
#include "ghzt/core/tolerances.hpp"

namespace ghzt {

inline constexpr std::size_t kMaxQubits = 6;

// 1-based qubit label. Qubit 1 is the most significant bit of a basis index.
struct Qubit {
    std::size_t index;
    friend constexpr bool operator==(Qubit, Qubit) = default;
    friend constexpr auto operator<=>(Qubit, Qubit) = default;
};

namespace detail {

inline std::size_t qubits_for_dimension(std::size_t dim) {
    require(dim >= 2 && std::has_single_bit(dim), "dimension is not a power of two");
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    require(n <= kMaxQubits, "more than " + std::to_string(kMaxQubits) + " qubits");
    return n;
}

// Bit position (from the least significant end) of a qubit in an n-qubit index.
inline std::size_t bit_of(Qubit q, std::size_t n) { return n - q.index; }

inline void require_qubits(std::span<const Qubit> qubits, std::size_t n, const char* what) {
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        require(qubits[i].index >= 1 && qubits[i].index <= n, std::string(what) + ": qubit index out of range");
        for (std::size_t j = 0; j < i; ++j)
            require(qubits[i] != qubits[j], std::string(what) + ": repeated qubit");
    }
}

// Sub-index formed by the bits of `qubits` (first listed = most significant).
inline std::size_t gather_bits(std::size_t index, std::span<const Qubit> qubits, std::size_t n) {
    std::size_t s = 0;
    for (const auto q : qubits) s = (s << 1) | ((index >> bit_of(q, n)) & 1u);
    return s;
}

inline std::size_t scatter_bits(std::size_t index, std::size_t sub, std::span<const Qubit> qubits,
                                std::size_t n) {
    const std::size_t k = qubits.size();
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t bit = (sub >> (k - 1 - j)) & 1u;
        const std::size_t pos = bit_of(qubits[j], n);
        index = (index & ~(std::size_t{1} << pos)) | (bit << pos);
    }
    return index;
}

}  // namespace detail

class PureState {
public:
    PureState(std::vector<Complex> amplitudes, const Tolerances& tol = {})
        : n_qubits_(detail::qubits_for_dimension(amplitudes.size())), amplitudes_(std::move(amplitudes)) {
        double norm2 = 0.0;
        for (const auto& a : amplitudes_) {
            detail::require(std::isfinite(a.real()) && std::isfinite(a.imag()), "PureState: non-finite amplitude");
            norm2 += std::norm(a);
        }
        detail::require(std::abs(std::sqrt(norm2) - 1.0) <= tol.norm, "PureState: amplitudes are not normalized");
    }

    static PureState normalized(std::vector<Complex> amplitudes) {
        double norm2 = 0.0;
        for (const auto& a : amplitudes) norm2 += std::norm(a);
        detail::require(norm2 > 0.0, "PureState: zero vector");
        const double s = 1.0 / std::sqrt(norm2);
        for (auto& a : amplitudes) a *= s;
        return PureState(std::move(amplitudes));
    }

    static PureState basis(std::size_t n_qubits, std::size_t index) {
        detail::require(n_qubits >= 1 && n_qubits <= kMaxQubits, "PureState::basis: bad qubit count");
        detail::require(index < (std::size_t{1} << n_qubits), "PureState::basis: index out of range");
        std::vector<Complex> a(std::size_t{1} << n_qubits);
        a[index] = 1.0;
        return PureState(std::move(a));
    }

    // cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
    static PureState bloch(double theta, double phi) {
        return PureState({std::cos(theta / 2), std::polar(1.0, phi) * std::sin(theta / 2)});
    }

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    Matrix projector() const { return Matrix::outer(amplitudes_, amplitudes_); }

private:
    std::size_t n_qubits_;
    std::vector<Complex> amplitudes_;
};

class DensityMatrix {
public:
    // Validates Hermiticity and unit trace; the stored matrix is the exact
    // Hermitian part of the input. Positivity is checked on request only.
    explicit DensityMatrix(const Matrix& m, const Tolerances& tol = {}) {
        detail::require(m.is_square(), "DensityMatrix: matrix is not square");
        n_qubits_ = detail::qubits_for_dimension(m.rows());
        detail::require(m.all_finite(), "DensityMatrix: non-finite entries");
        detail::require(m.hermiticity_defect() <= tol.hermitian, "DensityMatrix: matrix is not Hermitian");
        detail::require(std::abs(m.trace() - 1.0) <= tol.trace, "DensityMatrix: trace is not one");
        m_ = m.hermitian_part();
    }

    DensityMatrix(const PureState& psi) : DensityMatrix(psi.projector()) {}

    static DensityMatrix maximally_mixed(std::size_t n_qubits) {
        const std::size_t d = std::size_t{1} << n_qubits;
        return DensityMatrix(Matrix::identity(d) * Complex{1.0 / static_cast<double>(d)});
    }

    // Normalizes by the trace; for post-measurement blocks.
    static DensityMatrix from_unnormalized(const Matrix& m, const Tolerances& tol = {}) {
        const double t = m.trace().real();
        detail::require(t > 0.0, "DensityMatrix: non-positive trace");
        return DensityMatrix(m * Complex{1.0 / t}, tol);
    }

    // Validates positivity as well.
    static DensityMatrix checked(const Matrix& m, const Tolerances& tol = {}) {
        DensityMatrix rho(m, tol);
        detail::require(rho.min_eigenvalue(tol) >= -tol.psd, "DensityMatrix: not positive semidefinite");
        return rho;
    }

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    double min_eigenvalue(const Tolerances& tol = {}) const { return eig_hermitian(m_, tol).values.back(); }
    bool is_positive_semidefinite(const Tolerances& tol = {}) const { return min_eigenvalue(tol) >= -tol.psd; }

private:
    std::size_t n_qubits_ = 0;
    Matrix m_;
};

// ---------------------------------------------------------------------------
// Tensor products; the left operand's qubits come first.

inline Matrix tensor(const Matrix& a, const Matrix& b) { return kron(a, b); }

inline PureState tensor(const PureState& a, const PureState& b) {
    detail::require(a.n_qubits() + b.n_qubits() <= kMaxQubits, "tensor: too many qubits");
    std::vector<Complex> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return PureState::normalized(std::move(out));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    detail::require(a.n_qubits() + b.n_qubits() <= kMaxQubits, "tensor: too many qubits");
    return DensityMatrix(kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------

// Reduced operator on `keep` (ascending qubit order); no normalization.
inline Matrix partial_trace(const Matrix& m, std::vector<Qubit> keep) {
    detail::require(m.is_square(), "partial_trace: matrix is not square");
    const std::size_t n = detail::qubits_for_dimension(m.rows());
    detail::require(!keep.empty(), "partial_trace: empty keep set");
    detail::require_qubits(keep, n, "partial_trace");
    std::sort(keep.begin(), keep.end());

    std::vector<Qubit> traced;
    for (std::size_t q = 1; q <= n; ++q)
        if (std::find(keep.begin(), keep.end(), Qubit{q}) == keep.end()) traced.push_back(Qubit{q});

    const std::size_t dk = std::size_t{1} << keep.size();
    const std::size_t dt = std::size_t{1} << traced.size();
    Matrix out(dk, dk);
    for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j) {
            Complex s = 0.0;
            for (std::size_t e = 0; e < dt; ++e) {
                const std::size_t base = detail::scatter_bits(0, e, traced, n);
                s += m(detail::scatter_bits(base, i, keep, n), detail::scatter_bits(base, j, keep, n));
            }
            out(i, j) = s;
        }
    return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<Qubit> keep) {
    return DensityMatrix(partial_trace(rho.matrix(), std::move(keep)));
}

// Transpose on the listed qubits only.
inline Matrix partial_transpose(const Matrix& m, std::span<const Qubit> qubits) {
    const std::size_t n = detail::qubits_for_dimension(m.rows());
    detail::require(m.is_square(), "partial_transpose: matrix is not square");
    detail::require_qubits(qubits, n, "partial_transpose");
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const std::size_t si = detail::gather_bits(i, qubits, n);
            const std::size_t sj = detail::gather_bits(j, qubits, n);
            out(detail::scatter_bits(i, sj, qubits, n), detail::scatter_bits(j, si, qubits, n)) = m(i, j);
        }
    return out;
}

// <psi|rho|psi>
inline double fidelity(const PureState& psi, const DensityMatrix& rho) {
    detail::require(psi.dim() == rho.dim(), "fidelity: dimension mismatch");
    return std::clamp(expectation(psi.amplitudes(), rho.matrix()).real(), 0.0, 1.0);
}

}  // namespace ghzt
