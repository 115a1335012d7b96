#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghzt/core/errors.hpp"
#include "ghzt/experiments.hpp"
#include "ghzt/teleport.hpp"

namespace ghzt {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string format_number(const char* fmt, double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

inline std::string g12(double v) { return format_number("%.12g", v); }

}  // namespace detail

inline constexpr const char* kSweepHeader = "p,x,y,tau3,tau3_lb,gme,negativity,c_l,avg_fidelity";

inline std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::string out = std::string(kSweepHeader) + "\n";
    for (const auto& r : records) {
        out += detail::format_number("%.12f", r.p);
        for (const double v : {r.x, r.y, r.tau3, r.tau3_lower_bound, r.gme, r.negativity, r.localizable_concurrence,
                               r.average_fidelity})
            out += "," + detail::g12(v);
        out += "\n";
    }
    return out;
}

inline std::string triangle_csv(const std::vector<TriangleCell>& cells) {
    std::string out = "x,y,physical,class,c_l_positive\n";
    for (const auto& c : cells) {
        out += detail::g12(c.x) + "," + detail::g12(c.y) + "," + (c.physical ? "1" : "0") + ",";
        out += c.klass ? std::string(to_string(*c.klass)) : std::string("unphysical");
        out += c.c_l_positive ? ",1\n" : ",0\n";
    }
    return out;
}

inline Json thresholds_json(const std::vector<ThresholdReport>& reports) {
    Json j = Json::object();
    for (const auto& r : reports) {
        j[r.measure + "_p"] = r.p_star;
        if (r.p_star_exact) j[r.measure + "_exact_p"] = *r.p_star_exact;
        j[r.measure + "_avg_fidelity"] = r.fidelity_at_root;
    }
    return j;
}

inline Json proposition1_json(const Proposition1Report& report, std::uint64_t seed) {
    Json j = Json::object();
    j["samples"] = report.samples.size();
    j["seed"] = seed;
    j["max_violation"] = report.max_violation;
    j["violations"] = report.violations;
    Json rows = Json::array();
    for (const auto& s : report.samples)
        rows.push_back(Json{{"x", s.coords.x}, {"y", s.coords.y}, {"c_l", s.c_l}, {"lower", s.lower},
                            {"upper", s.upper}, {"avg_fidelity", s.fidelity}});
    j["records"] = std::move(rows);
    return j;
}

inline Json protocol_json(const ProtocolReport& report) {
    Json j = Json::object();
    j["fidelity"] = report.fidelity;
    j["acceptance_probability"] = report.acceptance_probability;
    Json branches = Json::array();
    for (const auto& b : report.branches) {
        std::string bits;
        for (const int v : b.outcome) bits += static_cast<char>('0' + v);
        branches.push_back(Json{{"outcome", bits}, {"probability", b.probability}, {"accepted", b.accepted}});
    }
    j["branches"] = std::move(branches);
    return j;
}

// Binary mode keeps LF line endings on every platform.
inline void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f << content;
    f.close();
    if (!f) throw IoError("failed writing '" + path.string() + "'");
}

inline void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path) {
    write_text(path, sweep_csv(records));
}

inline void emit_json(const Json& report, const std::filesystem::path& path) { write_text(path, report.dump(2) + "\n"); }

}  // namespace ghzt
