#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "ghzt/core/errors.hpp"
#include "ghzt/core/matrix.hpp"
#include "ghzt/core/state.hpp"
#include "ghzt/core/tolerances.hpp"

namespace ghzt {

namespace gates {

inline Matrix identity() { return Matrix::identity(2); }
inline Matrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline Matrix y() { return {{0.0, -kI}, {kI, 0.0}}; }
inline Matrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
inline Matrix h() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{s, s}, {s, -s}};
}
// Control is the first target, as in apply_unitary(rho, cx(), {control, target}).
inline Matrix cx() {
    return {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
}

// Pauli by code: 0 = I, 1 = X, 2 = Y, 3 = Z.
inline Matrix pauli(int code) {
    switch (code) {
        case 0: return identity();
        case 1: return x();
        case 2: return y();
        case 3: return z();
        default: throw ValidationError("gates::pauli: code must be in 0..3");
    }
}

}  // namespace gates

// Lifts a 2^k x 2^k operator on `targets` to the full n-qubit space.
inline Matrix embed(const Matrix& u, std::span<const Qubit> targets, std::size_t n_qubits) {
    detail::require(u.is_square() && u.rows() == (std::size_t{1} << targets.size()),
                    "embed: operator dimension does not match the target count");
    detail::require_qubits(targets, n_qubits, "embed");
    const std::size_t d = std::size_t{1} << n_qubits;
    const std::size_t k = u.rows();
    Matrix out(d, d);
    for (std::size_t col = 0; col < d; ++col) {
        const std::size_t sub = detail::gather_bits(col, targets, n_qubits);
        for (std::size_t s = 0; s < k; ++s) {
            const Complex v = u(s, sub);
            if (v != Complex{}) out(detail::scatter_bits(col, s, targets, n_qubits), col) = v;
        }
    }
    return out;
}

inline Matrix conjugate_by(const Matrix& rho, const Matrix& u) { return u * rho * u.adjoint(); }

inline DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, std::span<const Qubit> targets,
                                   const Tolerances& tol = {}) {
    detail::require(unitarity_defect(u) <= tol.unitary, "apply_unitary: operator is not unitary");
    return DensityMatrix(conjugate_by(rho.matrix(), embed(u, targets, rho.n_qubits())), tol);
}

inline DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, std::initializer_list<Qubit> targets,
                                   const Tolerances& tol = {}) {
    return apply_unitary(rho, u, std::span<const Qubit>(targets.begin(), targets.size()), tol);
}

// One circuit step: an operator and the qubits it acts on, in order.
struct Gate {
    Matrix op;
    std::vector<Qubit> targets;
};

inline DensityMatrix apply_circuit(const DensityMatrix& rho, std::span<const Gate> circuit, const Tolerances& tol = {}) {
    DensityMatrix out = rho;
    for (const auto& g : circuit) out = apply_unitary(out, g.op, g.targets, tol);
    return out;
}

inline double kraus_completeness_defect(std::span<const Matrix> kraus) {
    if (kraus.empty()) return INFINITY;
    Matrix sum(kraus.front().cols(), kraus.front().cols());
    for (const auto& k : kraus) sum += k.adjoint() * k;
    return max_abs_diff(sum, Matrix::identity(sum.rows()));
}

// rho -> sum_i K_i rho K_i^dag with every K_i acting on `target`.
inline DensityMatrix apply_kraus(const DensityMatrix& rho, std::span<const Matrix> kraus, Qubit target,
                                 const Tolerances& tol = {}) {
    for (const auto& k : kraus) detail::require(k.rows() == 2 && k.cols() == 2, "apply_kraus: Kraus operators must be 2x2");
    detail::require(kraus_completeness_defect(kraus) <= tol.kraus_completeness, "apply_kraus: incomplete Kraus set");
    const Qubit t[] = {target};
    Matrix out(rho.dim(), rho.dim());
    for (const auto& k : kraus) out += conjugate_by(rho.matrix(), embed(k, t, rho.n_qubits()));
    return DensityMatrix(out, tol);
}

struct MeasurementBranch {
    int outcome;
    double probability;
    std::optional<DensityMatrix> state;  // empty when probability is (numerically) zero
};

// Projective measurement of one qubit in the basis {U^dag |t>}: outcome t
// occurs with probability <t| U rho_target U^dag |t>.
inline std::vector<MeasurementBranch> measure_projective(const DensityMatrix& rho, const Matrix& basis_unitary,
                                                         Qubit target, const Tolerances& tol = {}) {
    detail::require(basis_unitary.rows() == 2 && basis_unitary.cols() == 2,
                    "measure_projective: basis unitary must be 2x2");
    detail::require(unitarity_defect(basis_unitary) <= tol.unitary, "measure_projective: basis is not unitary");
    const Qubit t[] = {target};
    std::vector<MeasurementBranch> out;
    for (int outcome = 0; outcome < 2; ++outcome) {
        const std::vector<Complex> row = {basis_unitary(outcome, 0), basis_unitary(outcome, 1)};
        // U^dag |t><t| U = |w><w| with w = conj(row t of U)
        const std::vector<Complex> w = {std::conj(row[0]), std::conj(row[1])};
        const Matrix projector = embed(Matrix::outer(w, w), t, rho.n_qubits());
        const Matrix block = projector * rho.matrix() * projector;
        const double p = std::max(0.0, block.trace().real());
        if (p <= tol.zero_probability) {
            out.push_back({outcome, 0.0, std::nullopt});
        } else {
            out.push_back({outcome, p, DensityMatrix::from_unnormalized(block.hermitian_part(), tol)});
        }
    }
    return out;
}

}  // namespace ghzt
