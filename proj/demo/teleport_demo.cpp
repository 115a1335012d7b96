// Teleports a qubit through a depolarized GHZ channel and prints how the
// fidelity and the localizable concurrence fall off with the noise.
#include <cstdio>

#include "ghzt/ghzt.hpp"

int main() {
    using namespace ghzt;
    const MessageState msg{1.0471975511965976, 0.0};
    std::printf("%6s %10s %10s %10s %10s\n", "p", "F(msg)", "F_avg", "C_L", "C_L(opt)");
    for (double p = 0.0; p <= 0.5001; p += 0.1) {
        const DensityMatrix channel = noisy_ghz(ChannelKind::Depolarizing, p);
        const GhzCoords c = coords_of(channel);
        const auto r = teleport_ghz(msg, channel, false);
        const auto cl = localizable_concurrence_optimize(channel, msg.state());
        std::printf("%6.2f %10.6f %10.6f %10.6f %10.6f\n", p, r.fidelity, simulated_average_fidelity(channel),
                    localizable_concurrence_closed_form(c), cl.value);
    }

    // A single bit flip on one channel qubit is caught by comparing m and n.
    const std::array<Qubit, 1> q2 = {Qubit{2}};
    const DensityMatrix flipped = apply_to_each(DensityMatrix(ghz_plus()), bit_flip(0.3), q2);
    const auto plain = teleport_ghz(msg, flipped, false);
    const auto kept = teleport_ghz(msg, flipped, true);
    std::printf("bit flip 0.3: F = %.6f, post-selected F = %.6f, accepted %.2f\n", plain.fidelity, kept.fidelity,
                kept.acceptance_probability);
}
