#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "ghzt/core/circuit.hpp"
#include "ghzt/core/state.hpp"
#include "ghzt/ghz_symmetric.hpp"

namespace ghzt {

// Bloch angles of cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct MessageState {
    double theta = 0.0;
    double phi = 0.0;

    PureState state() const {
        detail::require(theta >= 0.0 && theta <= std::numbers::pi, "MessageState: theta must lie in [0, pi]");
        detail::require(phi >= 0.0 && phi < 2.0 * std::numbers::pi, "MessageState: phi must lie in [0, 2 pi)");
        return PureState::bloch(theta, phi);
    }
};

// The six Pauli eigenstates. Averages of affine functions of |psi><psi|
// over this set equal the uniform average over the sphere.
inline std::array<MessageState, 6> pauli_eigenstates() {
    constexpr double pi = std::numbers::pi;
    return {{{0.0, 0.0}, {pi, 0.0}, {pi / 2, 0.0}, {pi / 2, pi}, {pi / 2, pi / 2}, {pi / 2, 3 * pi / 2}}};
}

struct TeleportBranch {
    std::vector<int> outcome;               // measured bits in qubit order (l, m, n for the GHZ protocol)
    double probability = 0.0;
    std::optional<DensityMatrix> receiver_state;  // after correction; empty at zero probability
    bool accepted = true;
};

struct ProtocolReport {
    std::vector<TeleportBranch> branches;
    DensityMatrix average_output;
    double fidelity;
    double acceptance_probability;
};

using CorrectionRule = std::function<Matrix(const std::vector<int>&)>;
using AcceptRule = std::function<bool(const std::vector<int>&)>;

// Measures every non-receiver qubit of `rho` in the computational basis,
// corrects the receiver block per outcome and averages the accepted
// branches. The output is compared with `target`.
inline ProtocolReport run_protocol(const DensityMatrix& rho, std::vector<Qubit> receivers, const PureState& target,
                                   const CorrectionRule& correct, const AcceptRule& accept = {},
                                   const Tolerances& tol = {}) {
    const std::size_t n = rho.n_qubits();
    std::sort(receivers.begin(), receivers.end());
    detail::require_qubits(receivers, n, "run_protocol");
    std::vector<Qubit> measured;
    for (std::size_t q = 1; q <= n; ++q)
        if (std::find(receivers.begin(), receivers.end(), Qubit{q}) == receivers.end()) measured.push_back(Qubit{q});
    const std::size_t dr = std::size_t{1} << receivers.size();
    const std::size_t dm = std::size_t{1} << measured.size();
    detail::require(target.dim() == dr, "run_protocol: target dimension does not match the receivers");

    ProtocolReport report{{}, DensityMatrix::maximally_mixed(receivers.size()), 0.0, 0.0};
    Matrix accepted_sum(dr, dr);
    for (std::size_t t = 0; t < dm; ++t) {
        TeleportBranch branch;
        for (std::size_t j = 0; j < measured.size(); ++j)
            branch.outcome.push_back(static_cast<int>((t >> (measured.size() - 1 - j)) & 1u));
        const std::size_t base = detail::scatter_bits(0, t, measured, n);
        Matrix block(dr, dr);
        for (std::size_t a = 0; a < dr; ++a)
            for (std::size_t b = 0; b < dr; ++b)
                block(a, b) = rho(detail::scatter_bits(base, a, receivers, n), detail::scatter_bits(base, b, receivers, n));
        const Matrix c = correct(branch.outcome);
        detail::require(c.rows() == dr && unitarity_defect(c) <= tol.unitary, "run_protocol: correction is not a unitary on the receivers");
        block = conjugate_by(block, c).hermitian_part();

        const double p = std::max(0.0, block.trace().real());
        branch.accepted = accept ? accept(branch.outcome) : true;
        if (p > tol.zero_probability) {
            branch.probability = p;
            branch.receiver_state = DensityMatrix::from_unnormalized(block, tol);
            if (branch.accepted) {
                accepted_sum += block;
                report.acceptance_probability += p;
            }
        }
        report.branches.push_back(std::move(branch));
    }
    if (report.acceptance_probability <= tol.zero_probability)
        throw NumericalError("run_protocol: no branch was accepted");
    report.average_output = DensityMatrix::from_unnormalized(accepted_sum, tol);
    report.acceptance_probability = std::min(report.acceptance_probability, 1.0);
    report.fidelity = fidelity(target, report.average_output);
    return report;
}

// (1/sqrt2) sum_k (-1)^{l k} |k, k^m, k^n>
inline PureState ghz_measurement_basis(int l, int m, int n) {
    for (const int b : {l, m, n}) detail::require(b == 0 || b == 1, "ghz_measurement_basis: arguments must be bits");
    std::vector<Complex> a(8);
    const double s = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < 2; ++k) {
        const int idx = (k << 2) | ((k ^ m) << 1) | (k ^ n);
        a[static_cast<std::size_t>(idx)] = (l && k) ? -s : s;
    }
    return PureState(std::move(a));
}

namespace detail {

inline void require_channel(const DensityMatrix& channel, std::size_t n, const char* what) {
    require(channel.n_qubits() == n, std::string(what) + ": channel has the wrong number of qubits");
}

inline Matrix pauli_power(const Matrix& p, int bit) { return bit ? p : gates::identity(); }

// A channel with x < 0 is |GHZ->-like; one extra Z on the receiver turns it
// into the |GHZ+> frame, so everything depends on |x| only.
inline Matrix channel_frame(const DensityMatrix& channel) {
    return coords_of(channel).x < 0.0 ? gates::z() : gates::identity();
}

inline std::vector<Gate> ghz_measurement_circuit() {
    return {{gates::cx(), {Qubit{1}, Qubit{3}}}, {gates::cx(), {Qubit{1}, Qubit{2}}}, {gates::h(), {Qubit{1}}}};
}

}  // namespace detail

// Qubit 1 carries the message, qubits 2-4 the channel; qubits 1-3 are
// GHZ-measured and qubit 4 receives. With post_select, outcomes m != n
// flag a bit flip and are dropped.
inline ProtocolReport teleport_ghz(const MessageState& message, const DensityMatrix& channel, bool post_select,
                                   const Tolerances& tol = {}) {
    detail::require_channel(channel, 3, "teleport_ghz");
    const PureState psi = message.state();
    const auto circuit = detail::ghz_measurement_circuit();
    const DensityMatrix rho = apply_circuit(tensor(DensityMatrix(psi), channel), circuit, tol);
    const Matrix frame = detail::channel_frame(channel);
    auto correct = [&](const std::vector<int>& b) {
        return detail::pauli_power(gates::x(), b[2]) * detail::pauli_power(gates::z(), b[0]) * frame;
    };
    AcceptRule accept;
    if (post_select) accept = [](const std::vector<int>& b) { return b[1] == b[2]; };
    return run_protocol(rho, {Qubit{4}}, psi, correct, accept, tol);
}

// Standard protocol over a two-qubit channel. The receiver first undoes the
// Pauli P for which (I (x) P)|Phi+> overlaps the channel most.
inline ProtocolReport teleport_bell(const MessageState& message, const DensityMatrix& channel,
                                    const Tolerances& tol = {}) {
    detail::require_channel(channel, 2, "teleport_bell");
    const PureState psi = message.state();
    const double s = 1.0 / std::sqrt(2.0);
    const PureState phi_plus({s, 0, 0, s});
    int frame = 0;
    double best = -1.0;
    for (int code = 0; code < 4; ++code) {
        const Matrix op = kron(gates::identity(), gates::pauli(code));
        const double f = expectation(phi_plus.amplitudes(), op.adjoint() * channel.matrix() * op).real();
        if (f > best + 1e-12) {
            best = f;
            frame = code;
        }
    }
    const std::vector<Gate> circuit = {{gates::cx(), {Qubit{1}, Qubit{2}}}, {gates::h(), {Qubit{1}}}};
    const DensityMatrix rho = apply_circuit(tensor(DensityMatrix(psi), channel), circuit, tol);
    const Matrix frame_op = gates::pauli(frame);
    auto correct = [&](const std::vector<int>& b) {
        return detail::pauli_power(gates::x(), b[1]) * detail::pauli_power(gates::z(), b[0]) * frame_op;
    };
    return run_protocol(rho, {Qubit{3}}, psi, correct, {}, tol);
}

// Controlled teleportation: Alice Bell-measures qubits 1 and 2, the
// controller measures qubit 3 in the X basis. Without the controller's bit
// the receiver applies the correction for c = 0 in every branch.
inline ProtocolReport teleport_cqt(const MessageState& message, const DensityMatrix& channel,
                                   bool controller_participates, const Tolerances& tol = {}) {
    detail::require_channel(channel, 3, "teleport_cqt");
    const PureState psi = message.state();
    const std::vector<Gate> circuit = {
        {gates::cx(), {Qubit{1}, Qubit{2}}}, {gates::h(), {Qubit{1}}}, {gates::h(), {Qubit{3}}}};
    const DensityMatrix rho = apply_circuit(tensor(DensityMatrix(psi), channel), circuit, tol);
    const Matrix frame = detail::channel_frame(channel);
    auto correct = [&](const std::vector<int>& b) {
        const int zbit = controller_participates ? (b[0] ^ b[2]) : b[0];
        return detail::pauli_power(gates::x(), b[1]) * detail::pauli_power(gates::z(), zbit) * frame;
    };
    return run_protocol(rho, {Qubit{4}}, psi, correct, {}, tol);
}

// Phi+, Phi-, Psi+, Psi- for index 0..3.
inline PureState bell_state(int index) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (index) {
        case 0: return PureState({s, 0, 0, s});
        case 1: return PureState({s, 0, 0, -s});
        case 2: return PureState({0, s, s, 0});
        case 3: return PureState({0, s, -s, 0});
        default: throw ValidationError("bell_state: index must be in 0..3");
    }
}

// Receiver corrections for the Bell-pair protocol, indexed by
// [bell index][4 l + 2 m + n]. Each entry is 4 * a + b for the Pauli pair
// (pauli(a) on qubit 4, pauli(b) on qubit 5).
using BellPairCorrectionTable = std::array<std::array<int, 8>, 4>;

// Frozen output of derive_bell_pair_corrections(); a unit test keeps the two in sync.
inline constexpr BellPairCorrectionTable kBellPairCorrections = {{
    {0, 0, 0, 0, 3, 3, 0, 0},
    {0, 0, 0, 0, 3, 3, 0, 0},
    {0, 0, 1, 1, 0, 0, 2, 2},
    {0, 0, 1, 1, 0, 0, 2, 2},
}};

namespace detail {

inline Matrix bell_pair_correction(int code) { return kron(gates::pauli(code / 4), gates::pauli(code % 4)); }

// Register: Bell pair on qubits 1, 2; channel on 3, 4, 5. Qubits 1-3 are
// GHZ-measured (l, m, n), qubits 4 and 5 receive.
inline DensityMatrix bell_pair_register(int bell_index, const DensityMatrix& channel, const Tolerances& tol) {
    const std::vector<Gate> circuit = {
        {gates::cx(), {Qubit{1}, Qubit{3}}}, {gates::cx(), {Qubit{1}, Qubit{2}}}, {gates::h(), {Qubit{1}}}};
    return apply_circuit(tensor(DensityMatrix(bell_state(bell_index)), channel), circuit, tol);
}

}  // namespace detail

// For each branch of the noiseless channel, the first Pauli pair (in code
// order) that restores the Bell state. Branches that cannot occur keep 0.
inline BellPairCorrectionTable derive_bell_pair_corrections(const Tolerances& tol = {}) {
    BellPairCorrectionTable table{};
    const DensityMatrix ghz(ghz_plus());
    for (int bell = 0; bell < 4; ++bell) {
        const PureState target = bell_state(bell);
        const DensityMatrix rho = detail::bell_pair_register(bell, ghz, tol);
        const auto identity = run_protocol(rho, {Qubit{4}, Qubit{5}}, target,
                                           [](const std::vector<int>&) { return Matrix::identity(4); }, {}, tol);
        for (int t = 0; t < 8; ++t) {
            if (identity.branches[static_cast<std::size_t>(t)].probability == 0.0) continue;
            int best_code = 0;
            double best = -1.0;
            for (int code = 0; code < 16; ++code) {
                const auto r = run_protocol(rho, {Qubit{4}, Qubit{5}}, target,
                                            [&](const std::vector<int>&) { return detail::bell_pair_correction(code); },
                                            [t](const std::vector<int>& b) { return 4 * b[0] + 2 * b[1] + b[2] == t; }, tol);
                if (r.fidelity > best + 1e-9) {
                    best = r.fidelity;
                    best_code = code;
                }
            }
            table[static_cast<std::size_t>(bell)][static_cast<std::size_t>(t)] = best_code;
        }
    }
    return table;
}

struct BellPairReport {
    ProtocolReport protocol;
    double output_concurrence;
};

inline ProtocolReport teleport_bell_pair_via_ghz_protocol(int bell_index, const DensityMatrix& channel,
                                                          const Tolerances& tol = {}) {
    detail::require(bell_index >= 0 && bell_index <= 3, "teleport_bell_pair_via_ghz: bell index must be in 0..3");
    detail::require_channel(channel, 3, "teleport_bell_pair_via_ghz");
    const DensityMatrix rho = detail::bell_pair_register(bell_index, channel, tol);
    const Matrix frame = kron(detail::channel_frame(channel), gates::identity());
    const auto& row = kBellPairCorrections[static_cast<std::size_t>(bell_index)];
    auto correct = [&](const std::vector<int>& b) {
        return detail::bell_pair_correction(row[static_cast<std::size_t>(4 * b[0] + 2 * b[1] + b[2])]) * frame;
    };
    return run_protocol(rho, {Qubit{4}, Qubit{5}}, bell_state(bell_index), correct, {}, tol);
}

// Closed-form single-message fidelity on a GHZ-symmetric channel.
inline double fidelity_theta(const GhzCoords& c, double theta, const Tolerances& tol = {}) {
    require_physical(c, "fidelity_theta", tol);
    const double x = std::abs(c.x);
    return (3.0 + 3.0 * x + 2.0 * kSqrt3 * c.y + (2.0 * kSqrt3 * c.y - 3.0 * x) * std::cos(2.0 * theta)) / 6.0;
}

inline double average_fidelity(const GhzCoords& c, const Tolerances& tol = {}) {
    require_physical(c, "average_fidelity", tol);
    return (9.0 + 12.0 * std::abs(c.x) + 4.0 * kSqrt3 * c.y) / 18.0;
}

inline double bell_pair_fidelity(const GhzCoords& c, const Tolerances& tol = {}) {
    require_physical(c, "bell_pair_fidelity", tol);
    return (3.0 + 12.0 * std::abs(c.x) + 4.0 * kSqrt3 * c.y) / 12.0;
}

// Mean of teleport_ghz fidelities over the six Pauli eigenstates.
inline double simulated_average_fidelity(const DensityMatrix& channel, bool post_select = false,
                                         const Tolerances& tol = {}) {
    double s = 0.0;
    for (const auto& m : pauli_eigenstates()) s += teleport_ghz(m, channel, post_select, tol).fidelity;
    return s / 6.0;
}

}  // namespace ghzt
