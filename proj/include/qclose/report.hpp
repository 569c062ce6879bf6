#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "engine.hpp"
#include "qmatrix.hpp"

namespace qclose {

/// Machine-readable run report (schema 1). Key names are stable; wall_time
/// is the only field expected to vary between identical runs.
struct RunReportDocument {
    std::string instance_name;
    std::string model; // "hcp" | "subiso" | "iso" | "exclusions"
    int n = 0;
    int anchor = 0; // 1-based input anchor; 0 when not applicable
    Counts counts_initial;
    std::string decision;
    std::optional<std::string> witness;
    Counts counts_final;
    std::int64_t sweeps = 0;
    std::int64_t match_tests = 0;
    double wall_seconds = 0.0;
    nlohmann::json config;

    friend bool operator==(const RunReportDocument&, const RunReportDocument&) = default;
};

inline nlohmann::json to_json(const RunReportDocument& r) {
    nlohmann::json j{
        {"schema", 1},
        {"instance_name", r.instance_name},
        {"model", r.model},
        {"n", r.n},
        {"anchor", r.anchor},
        {"counts_initial", {{"p", r.counts_initial.p_nonzero}, {"v", r.counts_initial.v_size}}},
        {"decision", r.decision},
        {"witness", r.witness ? nlohmann::json(*r.witness) : nlohmann::json(nullptr)},
        {"counts_final", {{"p", r.counts_final.p_nonzero}, {"v", r.counts_final.v_size}}},
        {"sweeps", r.sweeps},
        {"match_tests", r.match_tests},
        {"wall_time", r.wall_seconds},
        {"config", r.config},
    };
    return j;
}

inline RunReportDocument report_from_json(const nlohmann::json& j) {
    if (!j.contains("schema") || j.at("schema").get<int>() != 1)
        throw std::runtime_error("report: unsupported schema");
    RunReportDocument r;
    r.instance_name = j.at("instance_name").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.n = j.at("n").get<int>();
    r.anchor = j.at("anchor").get<int>();
    r.counts_initial = {j.at("counts_initial").at("p").get<std::int64_t>(),
                        j.at("counts_initial").at("v").get<std::int64_t>()};
    r.decision = j.at("decision").get<std::string>();
    if (!j.at("witness").is_null()) r.witness = j.at("witness").get<std::string>();
    r.counts_final = {j.at("counts_final").at("p").get<std::int64_t>(),
                      j.at("counts_final").at("v").get<std::int64_t>()};
    r.sweeps = j.at("sweeps").get<std::int64_t>();
    r.match_tests = j.at("match_tests").get<std::int64_t>();
    r.wall_seconds = j.at("wall_time").get<double>();
    r.config = j.at("config");
    return r;
}

} // namespace qclose
