#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ghzt/experiments.hpp"
#include "ghzt/noise.hpp"
#include "ghzt/report_io.hpp"
#include "ghzt/teleport.hpp"

namespace ghzt {

enum class Command { Sweep, Thresholds, Triangle, Teleport, Verify };

struct RunConfig {
    Command command = Command::Sweep;
    std::string channel = "depolarizing";
    double p = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    std::string protocol = "ghz";
    bool post_select = false;
    int bell_index = 0;
    std::size_t points = 101;
    std::size_t resolution = 101;
    std::size_t samples = 200;
    std::uint64_t seed = 7;
    std::string out;         // empty: default file name for the command
    std::string output_dir = ".";
    double root_tol = 1e-13;
    double violation_tol = 1e-10;
    Tolerances tol;
};

namespace detail {

inline const char* default_file(Command c) {
    switch (c) {
        case Command::Sweep: return "sweep.csv";
        case Command::Thresholds: return "thresholds.json";
        case Command::Triangle: return "triangle.csv";
        case Command::Teleport: return "teleport.json";
        case Command::Verify: return "verify.json";
    }
    return "out";
}

inline std::filesystem::path output_path(const RunConfig& cfg) {
    std::filesystem::path p = cfg.out.empty() ? std::filesystem::path(default_file(cfg.command)) : std::filesystem::path(cfg.out);
    if (p.is_relative()) p = std::filesystem::path(cfg.output_dir) / p;
    return p;
}

inline std::string fmt(double v) { return g12(v); }

}  // namespace detail

// Executes one command and prints a one-line summary to `out`. Errors
// propagate as exceptions; run_cli maps them to exit codes.
inline void run(const RunConfig& cfg, std::ostream& out) {
    const auto path = detail::output_path(cfg);
    const ChannelKind kind = parse_channel_kind(cfg.channel);
    switch (cfg.command) {
        case Command::Sweep: {
            detail::require(kind == ChannelKind::Depolarizing, "sweep: only the depolarizing channel is supported");
            detail::require(cfg.points >= 2, "sweep: --points must be at least 2");
            const auto records = sweep_depolarizing(uniform_grid(cfg.points), cfg.tol);
            emit_csv(records, path);
            out << "sweep: " << records.size() << " points, channel depolarizing -> " << path.string() << "\n";
            return;
        }
        case Command::Thresholds: {
            detail::require(cfg.root_tol > 0.0 && cfg.root_tol <= 1e-10, "thresholds: --root-tol must lie in (0, 1e-10]");
            const auto reports = find_thresholds(cfg.root_tol, cfg.tol);
            emit_json(thresholds_json(reports), path);
            out << "thresholds:";
            for (const auto& r : reports) out << " " << r.measure << " p=" << detail::fmt(r.p_star) << " F=" << detail::fmt(r.fidelity_at_root);
            out << " -> " << path.string() << "\n";
            return;
        }
        case Command::Triangle: {
            const auto cells = triangle_map(cfg.resolution, cfg.tol);
            write_text(path, triangle_csv(cells));
            std::size_t physical = 0;
            for (const auto& c : cells) physical += c.physical ? 1 : 0;
            out << "triangle: " << cells.size() << " cells, " << physical << " physical -> " << path.string() << "\n";
            return;
        }
        case Command::Teleport: {
            const MessageState msg{cfg.theta, cfg.phi};
            ProtocolReport report = [&] {
                if (cfg.protocol == "bell") {
                    const std::array<Qubit, 2> both = {Qubit{1}, Qubit{2}};
                    return teleport_bell(msg, apply_to_each(DensityMatrix(bell_state(0)), make_channel(kind, cfg.p), both), cfg.tol);
                }
                const DensityMatrix channel = noisy_ghz(kind, cfg.p);
                if (cfg.protocol == "ghz") return teleport_ghz(msg, channel, cfg.post_select, cfg.tol);
                if (cfg.protocol == "cqt") return teleport_cqt(msg, channel, true, cfg.tol);
                if (cfg.protocol == "cqt-abstain") return teleport_cqt(msg, channel, false, cfg.tol);
                if (cfg.protocol == "bell-pair") return teleport_bell_pair_via_ghz_protocol(cfg.bell_index, channel, cfg.tol);
                throw ValidationError("teleport: unknown protocol '" + cfg.protocol + "'");
            }();
            Json j = Json::object();
            j["protocol"] = cfg.protocol;
            j["channel"] = cfg.channel;
            j["p"] = cfg.p;
            j["theta"] = cfg.theta;
            j["phi"] = cfg.phi;
            j["post_select"] = cfg.post_select;
            const Json body = protocol_json(report);
            for (const auto& [k, v] : body.items()) j[k] = v;
            emit_json(j, path);
            out << "teleport: protocol " << cfg.protocol << ", channel " << cfg.channel << " p=" << detail::fmt(cfg.p)
                << ", fidelity " << detail::format_number("%.12f", report.fidelity) << ", acceptance "
                << detail::fmt(report.acceptance_probability) << " -> " << path.string() << "\n";
            return;
        }
        case Command::Verify: {
            const auto report = verify_proposition1(cfg.samples, cfg.seed, cfg.violation_tol, cfg.tol);
            emit_json(proposition1_json(report, cfg.seed), path);
            out << "verify: " << report.samples.size() << " samples, max violation " << detail::fmt(report.max_violation)
                << ", violations " << report.violations << " -> " << path.string() << "\n";
            if (report.violations > 0) throw NumericalError("verify: fidelity bounds violated");
            return;
        }
    }
}

// Parses argv, runs the command and returns the exit status:
// 0 success, 1 bad input or unwritable output, 2 numerical failure.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig cfg;
    CLI::App app{"GHZ-channel teleportation and entanglement analysis", "ghzt"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key = value file");

    app.add_option("--channel", cfg.channel, "Noise channel: depolarizing, dephasing, bitflip")
        ->check(CLI::IsMember({"depolarizing", "dephasing", "bitflip", "bit-flip"}))
        ->capture_default_str();
    app.add_option("--p", cfg.p, "Noise strength in [0, 1]")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    app.add_option("--theta", cfg.theta, "Message polar angle in radians, [0, pi]")->capture_default_str();
    app.add_option("--phi", cfg.phi, "Message azimuth in radians, [0, 2 pi)")->capture_default_str();
    app.add_option("--protocol", cfg.protocol, "Teleport protocol: ghz, bell, cqt, cqt-abstain, bell-pair")
        ->check(CLI::IsMember({"ghz", "bell", "cqt", "cqt-abstain", "bell-pair"}))
        ->capture_default_str();
    app.add_flag("--post-select", cfg.post_select, "Drop GHZ-protocol runs with m != n");
    app.add_option("--bell-index", cfg.bell_index, "Bell state for bell-pair: 0 Phi+, 1 Phi-, 2 Psi+, 3 Psi-")
        ->check(CLI::Range(0, 3))
        ->capture_default_str();
    app.add_option("--points", cfg.points, "Sweep grid points on [0, 1]")->check(CLI::Range(2, 1000000))->capture_default_str();
    app.add_option("--resolution", cfg.resolution, "Triangle grid points per axis")->check(CLI::Range(2, 10000))->capture_default_str();
    app.add_option("--samples", cfg.samples, "Sampled channels for verify")->check(CLI::Range(1, 10000000))->capture_default_str();
    app.add_option("--seed", cfg.seed, "Sampler seed")->capture_default_str();
    app.add_option("--out", cfg.out, "Output file (default: <command>.csv or .json in the output directory)");
    app.add_option("--output-dir", cfg.output_dir, "Directory for relative output paths")
        ->envname("GHZT_OUTPUT_DIR")
        ->capture_default_str();
    app.add_option("--root-tol", cfg.root_tol, "Bisection width for thresholds")->capture_default_str();
    app.add_option("--violation-tol", cfg.violation_tol, "Allowed bound violation in verify")->capture_default_str();
    app.add_option("--tol-physical", cfg.tol.physical_coords, "Slack on the physical triangle")->capture_default_str();
    app.add_option("--tol-zero-probability", cfg.tol.zero_probability, "Branches below this probability are dropped")
        ->capture_default_str();

    const std::pair<const char*, Command> commands[] = {{"sweep", Command::Sweep},
                                                        {"thresholds", Command::Thresholds},
                                                        {"triangle", Command::Triangle},
                                                        {"teleport", Command::Teleport},
                                                        {"verify", Command::Verify}};
    const char* help[] = {"Measures along the depolarizing path (CSV)", "Vanishing points of the four measures (JSON)",
                          "Class map of the (x, y) triangle (CSV)", "Run one protocol on a noisy GHZ channel (JSON)",
                          "Check the fidelity bounds on sampled channels (JSON)"};
    int i = 0;
    for (const auto& [name, cmd] : commands) {
        auto* sub = app.add_subcommand(name, help[i++]);
        sub->fallthrough();
        sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        const int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? 0 : 1;
    }

    try {
        run(cfg, out);
        return 0;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ghzt
