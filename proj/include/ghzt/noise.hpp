#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "ghzt/core/circuit.hpp"
#include "ghzt/core/errors.hpp"
#include "ghzt/ghz_symmetric.hpp"

namespace ghzt {

enum class ChannelKind { Dephasing, Depolarizing, BitFlip };

inline std::string_view to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::Dephasing: return "dephasing";
        case ChannelKind::Depolarizing: return "depolarizing";
        case ChannelKind::BitFlip: return "bitflip";
    }
    return "unknown";
}

inline ChannelKind parse_channel_kind(std::string_view name) {
    if (name == "dephasing") return ChannelKind::Dephasing;
    if (name == "depolarizing") return ChannelKind::Depolarizing;
    if (name == "bitflip" || name == "bit-flip") return ChannelKind::BitFlip;
    throw ValidationError("unknown channel kind '" + std::string(name) + "'");
}

// Single-qubit channel in operator-sum form.
class NoiseChannel {
public:
    NoiseChannel(std::vector<Matrix> kraus_ops, double p, const Tolerances& tol = {})
        : kraus_(std::move(kraus_ops)), p_(p) {
        for (const auto& k : kraus_) detail::require(k.rows() == 2 && k.cols() == 2, "NoiseChannel: Kraus operators must be 2x2");
        detail::require(kraus_completeness_defect(kraus_) <= tol.kraus_completeness, "NoiseChannel: incomplete Kraus set");
    }

    std::span<const Matrix> kraus_ops() const { return kraus_; }
    double p() const { return p_; }

private:
    std::vector<Matrix> kraus_;
    double p_;
};

inline DensityMatrix apply_kraus(const DensityMatrix& rho, const NoiseChannel& channel, Qubit target,
                                 const Tolerances& tol = {}) {
    return apply_kraus(rho, channel.kraus_ops(), target, tol);
}

namespace detail {

inline void require_probability(double p, const char* what) {
    require(p >= 0.0 && p <= 1.0, std::string(what) + ": p must lie in [0, 1]");
}

}  // namespace detail

// Phase damping: K0 = diag(1, sqrt(1-p)), K1 = diag(0, sqrt(p)).
inline NoiseChannel dephasing(double p) {
    detail::require_probability(p, "dephasing");
    return NoiseChannel({Matrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}}, Matrix{{0.0, 0.0}, {0.0, std::sqrt(p)}}}, p);
}

// rho -> (1 - p) rho + p I/2, written as
// {sqrt(1 - 3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}.
inline NoiseChannel depolarizing(double p) {
    detail::require_probability(p, "depolarizing");
    const double a = std::sqrt(1.0 - 0.75 * p);
    const double b = std::sqrt(0.25 * p);
    return NoiseChannel({gates::identity() * Complex{a}, gates::x() * Complex{b}, gates::y() * Complex{b},
                         gates::z() * Complex{b}},
                        p);
}

// Four operators with 1/sqrt(2) prefactors: amplitude damping towards |0>
// and towards |1> with equal weight. Populations match depolarizing(p)
// but coherences decay as sqrt(1 - p) instead of (1 - p).
inline NoiseChannel symmetric_amplitude_damping(double p) {
    detail::require_probability(p, "symmetric_amplitude_damping");
    const double s = 1.0 / std::sqrt(2.0);
    const double q = std::sqrt(1.0 - p);
    const double r = std::sqrt(p);
    return NoiseChannel({Matrix{{s, 0.0}, {0.0, s * q}}, Matrix{{0.0, s * r}, {0.0, 0.0}},
                         Matrix{{s * q, 0.0}, {0.0, s}}, Matrix{{0.0, 0.0}, {s * r, 0.0}}},
                        p);
}

// K0 = sqrt(1-p) I, K1 = sqrt(p) X.
inline NoiseChannel bit_flip(double p) {
    detail::require_probability(p, "bit_flip");
    return NoiseChannel({gates::identity() * Complex{std::sqrt(1.0 - p)}, gates::x() * Complex{std::sqrt(p)}}, p);
}

inline NoiseChannel make_channel(ChannelKind kind, double p) {
    switch (kind) {
        case ChannelKind::Dephasing: return dephasing(p);
        case ChannelKind::Depolarizing: return depolarizing(p);
        case ChannelKind::BitFlip: return bit_flip(p);
    }
    throw ValidationError("make_channel: unknown channel kind");
}

// Applies the channel to every qubit in `qubits`, in the given order.
inline DensityMatrix apply_to_each(const DensityMatrix& rho, const NoiseChannel& channel, std::span<const Qubit> qubits) {
    DensityMatrix out = rho;
    for (const auto q : qubits) out = apply_kraus(out, channel, q);
    return out;
}

// |GHZ><GHZ| with the channel applied independently to each qubit.
inline DensityMatrix noisy_ghz(ChannelKind kind, double p) {
    const std::array<Qubit, 3> all = {Qubit{1}, Qubit{2}, Qubit{3}};
    return apply_to_each(DensityMatrix(ghz_plus()), make_channel(kind, p), all);
}

inline GhzCoords depolarizing_path(double p) {
    detail::require_probability(p, "depolarizing_path");
    const double s = 1.0 - p;
    return {0.5 * s * s * s, kSqrt3 / 4.0 * s * s};
}

inline GhzCoords dephasing_path(double p) {
    detail::require_probability(p, "dephasing_path");
    return {0.5 * std::pow(1.0 - p, 1.5), kSqrt3 / 4.0};
}

}  // namespace ghzt
