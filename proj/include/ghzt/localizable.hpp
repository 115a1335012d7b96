#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "ghzt/core/circuit.hpp"
#include "ghzt/core/state.hpp"
#include "ghzt/measures.hpp"
#include "ghzt/optimize.hpp"

namespace ghzt {

// Parameters of the single-qubit unitary
//   U = [[cos(t/2), -e^{i l} sin(t/2)], [e^{i p} sin(t/2), e^{i (p + l)} cos(t/2)]]
// with t = theta, p = phi, l = lambda.
struct MeasurementUnitaryParams {
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;
};

inline Matrix measurement_unitary(const MeasurementUnitaryParams& q) {
    const double c = std::cos(q.theta / 2), s = std::sin(q.theta / 2);
    return {{c, -std::polar(s, q.lambda)}, {std::polar(s, q.phi), std::polar(c, q.phi + q.lambda)}};
}

// Representative with theta in [0, pi] and phi, lambda in [0, 2 pi).
// theta -> theta + 2 pi flips the sign of U, and theta -> -theta equals
// (phi, lambda) -> (phi + pi, lambda + pi); neither changes the measurement.
inline MeasurementUnitaryParams canonical(MeasurementUnitaryParams q) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto wrap = [](double a) {
        a = std::fmod(a, two_pi);
        return a < 0.0 ? a + two_pi : a;
    };
    q.theta = wrap(q.theta);
    if (q.theta > std::numbers::pi) {
        q.theta = two_pi - q.theta;
        q.phi += std::numbers::pi;
        q.lambda += std::numbers::pi;
    }
    q.phi = wrap(q.phi);
    q.lambda = wrap(q.lambda);
    return q;
}

struct LocalizedBranch {
    std::vector<int> outcome;              // one bit per measured qubit
    double probability;
    std::optional<DensityMatrix> state;    // sender-receiver state; empty at zero probability
    double concurrence;
};

struct LocalizationResult {
    double value = 0.0;
    std::vector<MeasurementUnitaryParams> optimal_params;  // one per measured qubit
    std::vector<LocalizedBranch> branches;
};

struct LocalizationOptions {
    int grid_theta = 17;
    int grid_lambda = 17;
    int grid_phi = 9;
    int refine_from = 3;              // best grid points refined by simplex descent
    double round_improvement = 1e-10; // refinement stops when a round gains less
    int max_rounds = 30;
    int random_starts = 256;          // used instead of a grid for 3+ measured qubits
    std::uint64_t seed = 20220207;
};

// Averaged sender-receiver concurrence after measuring the remaining
// channel qubits X in a product basis. The channel is prepared once:
// rho' = |psi><psi| (x) rho, then the gates, then the message qubit is traced out.
class Localizer {
public:
    Localizer(const DensityMatrix& channel, const PureState& message, Qubit sender, Qubit receiver,
              std::span<const Gate> gates, const Tolerances& tol = {})
        : tol_(tol) {
        detail::require(message.n_qubits() == 1, "localizable concurrence: message must be a single qubit");
        const std::size_t total = channel.n_qubits() + 1;
        detail::require(total <= kMaxQubits, "localizable concurrence: too many qubits");
        detail::require(sender != receiver, "localizable concurrence: sender and receiver coincide");
        for (const auto q : {sender, receiver})
            detail::require(q.index >= 2 && q.index <= total,
                            "localizable concurrence: sender and receiver must be channel qubits");

        DensityMatrix full = apply_circuit(tensor(DensityMatrix(message), channel), gates, tol);
        std::vector<Qubit> rest;
        for (std::size_t q = 2; q <= total; ++q) rest.push_back(Qubit{q});
        reduced_ = partial_trace(full.matrix(), rest);
        n_ = total - 1;  // qubit q of the register is qubit q - 1 here

        const Qubit s{sender.index - 1}, r{receiver.index - 1};
        for (std::size_t q = 1; q <= n_; ++q)
            if (Qubit{q} != s && Qubit{q} != r) measured_.push_back(Qubit{q});
        detail::require(!measured_.empty(), "localizable concurrence: no qubits left to measure");

        const std::size_t dx = std::size_t{1} << measured_.size();
        const Qubit sr[] = {s, r};
        index_.assign(4 * dx, 0);
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t k = 0; k < dx; ++k)
                index_[a * dx + k] = detail::scatter_bits(detail::scatter_bits(0, a, sr, n_), k, measured_, n_);
    }

    std::size_t measured_count() const { return measured_.size(); }

    // Register labels of the measured qubits.
    std::vector<Qubit> measured_qubits() const {
        std::vector<Qubit> out;
        for (const auto q : measured_) out.push_back(Qubit{q.index + 1});
        return out;
    }

    double value(std::span<const MeasurementUnitaryParams> params) const {
        double total = 0.0;
        for_each_branch(params, [&](std::size_t, double p, const Matrix& block) {
            if (p > tol_.zero_probability) total += p * concurrence(DensityMatrix::from_unnormalized(block, tol_), tol_);
        });
        return total;
    }

    LocalizationResult evaluate(std::span<const MeasurementUnitaryParams> params) const {
        LocalizationResult out;
        out.optimal_params.assign(params.begin(), params.end());
        const std::size_t m = measured_.size();
        for_each_branch(params, [&](std::size_t t, double p, const Matrix& block) {
            LocalizedBranch b;
            for (std::size_t j = 0; j < m; ++j) b.outcome.push_back(static_cast<int>((t >> (m - 1 - j)) & 1u));
            if (p > tol_.zero_probability) {
                b.probability = p;
                b.state = DensityMatrix::from_unnormalized(block, tol_);
                b.concurrence = concurrence(*b.state, tol_);
                out.value += p * b.concurrence;
            } else {
                b.probability = 0.0;
                b.concurrence = 0.0;
            }
            out.branches.push_back(std::move(b));
        });
        return out;
    }

private:
    // Calls fn(outcome, probability, unnormalized sender-receiver block)
    // for every outcome string of the measured qubits.
    template <class Fn>
    void for_each_branch(std::span<const MeasurementUnitaryParams> params, Fn&& fn) const {
        const std::size_t m = measured_.size();
        detail::require(params.size() == m, "localizable concurrence: one parameter set per measured qubit");
        std::vector<Matrix> us;
        for (const auto& q : params) us.push_back(measurement_unitary(q));
        const std::size_t dx = std::size_t{1} << m;
        std::vector<Complex> w(dx);
        for (std::size_t t = 0; t < dx; ++t) {
            // w_k = <t|U|k> for the product unitary.
            for (std::size_t k = 0; k < dx; ++k) {
                Complex amp = 1.0;
                for (std::size_t j = 0; j < m; ++j) {
                    const std::size_t shift = m - 1 - j;
                    amp *= us[j]((t >> shift) & 1u, (k >> shift) & 1u);
                }
                w[k] = amp;
            }
            Matrix block(4, 4);
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = 0; b < 4; ++b) {
                    Complex s = 0.0;
                    for (std::size_t k = 0; k < dx; ++k) {
                        if (w[k] == Complex{}) continue;
                        Complex inner_sum = 0.0;
                        for (std::size_t l = 0; l < dx; ++l)
                            inner_sum += reduced_(index_[a * dx + k], index_[b * dx + l]) * std::conj(w[l]);
                        s += w[k] * inner_sum;
                    }
                    block(a, b) = s;
                }
            const double p = std::max(0.0, block.trace().real());
            fn(t, p, block.hermitian_part());
        }
    }

    Tolerances tol_;
    Matrix reduced_;
    std::size_t n_ = 0;
    std::vector<Qubit> measured_;
    std::vector<std::size_t> index_;
};

namespace detail {

inline std::vector<MeasurementUnitaryParams> unpack(const std::vector<double>& x) {
    std::vector<MeasurementUnitaryParams> out(x.size() / 3);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = {x[3 * j], x[3 * j + 1], x[3 * j + 2]};
    return out;
}

inline std::vector<std::vector<double>> start_points(std::size_t measured, const LocalizationOptions& opt) {
    constexpr double pi = std::numbers::pi;
    std::vector<std::vector<double>> out;
    if (measured == 1) {
        for (int i = 0; i < opt.grid_theta; ++i)
            for (int j = 0; j < opt.grid_lambda; ++j)
                for (int k = 0; k < opt.grid_phi; ++k)
                    out.push_back({pi * i / std::max(1, opt.grid_theta - 1), 2.0 * pi * j / opt.grid_lambda,
                                   2.0 * pi * k / opt.grid_phi});
        return out;
    }
    if (measured == 2) {
        std::vector<std::vector<double>> single;
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j < 8; ++j) single.push_back({pi * i / 8.0, 0.0, 2.0 * pi * j / 8.0});
        for (const auto& a : single)
            for (const auto& b : single) {
                auto v = a;
                v.insert(v.end(), b.begin(), b.end());
                out.push_back(std::move(v));
            }
        return out;
    }
    std::mt19937_64 rng(opt.seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int s = 0; s < opt.random_starts; ++s) {
        std::vector<double> v;
        for (std::size_t j = 0; j < measured; ++j) {
            v.push_back(pi * unit());
            v.push_back(2.0 * pi * unit());
            v.push_back(2.0 * pi * unit());
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace detail

// Maximizes the average sender-receiver concurrence over product
// measurements on the remaining channel qubits. Register layout: qubit 1
// holds the message, qubits 2..n+1 hold the n-qubit channel. For more than
// one measured qubit the product restriction makes this a lower bound on
// the localizable concurrence.
inline LocalizationResult localizable_concurrence_general(const DensityMatrix& channel, const PureState& message,
                                                          Qubit sender, Qubit receiver, std::span<const Gate> gates,
                                                          const LocalizationOptions& opt = {},
                                                          const Tolerances& tol = {}) {
    const Localizer loc(channel, message, sender, receiver, gates, tol);
    auto objective = [&](const std::vector<double>& x) { return loc.value(detail::unpack(x)); };

    const auto starts = detail::start_points(loc.measured_count(), opt);
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i) scored.emplace_back(objective(starts[i]), i);
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(opt.refine_from), scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });

    std::vector<double> best_x = starts[scored.front().second];
    double best = scored.front().first;
    for (std::size_t s = 0; s < keep; ++s) {
        std::vector<double> x = starts[scored[s].second];
        double value = scored[s].first;
        double step = 0.2;
        bool converged = false;
        for (int round = 0; round < opt.max_rounds; ++round) {
            auto r = nelder_mead_maximize(objective, x, {.initial_step = step});
            const double gain = r.value - value;
            if (r.value > value) {
                x = std::move(r.x);
                value = r.value;
            }
            if (gain < opt.round_improvement) {
                converged = true;
                break;
            }
            step = std::max(step * 0.5, 1e-3);
        }
        if (!converged) throw NumericalError("localizable concurrence: refinement did not converge");
        if (value > best) {
            best = value;
            best_x = x;
        }
    }

    auto params = detail::unpack(best_x);
    for (auto& q : params) q = canonical(q);
    return loc.evaluate(params);
}

// Three-qubit channel on register qubits 2, 3, 4: CX from the message onto
// qubit 3, then qubit 3 is measured; sender 2, receiver 4.
inline LocalizationResult localizable_concurrence_optimize(const DensityMatrix& channel, const PureState& message,
                                                           const LocalizationOptions& opt = {},
                                                           const Tolerances& tol = {}) {
    detail::require(channel.n_qubits() == 3, "localizable_concurrence_optimize: expected a three-qubit channel");
    const Gate cx13{gates::cx(), {Qubit{1}, Qubit{3}}};
    return localizable_concurrence_general(channel, message, Qubit{2}, Qubit{4}, std::span(&cx13, 1), opt, tol);
}

struct FidelityBounds {
    double lower;
    double upper;
};

// Teleportation fidelity sandwich in terms of the localizable concurrence.
inline FidelityBounds proposition1_bounds(double cl) {
    detail::require(cl >= 0.0 && cl <= 1.0, "proposition1_bounds: localizable concurrence must lie in [0, 1]");
    return {std::max((3.0 + cl) / 6.0, (1.0 + 2.0 * cl) / 3.0), (2.0 + cl) / 3.0};
}

}  // namespace ghzt
