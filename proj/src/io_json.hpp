#pragma once

#include <string>
#include <utility>
#include <vector>

#include "period_map.hpp"

namespace grz {

// Parsed run configuration. Maps are constructed eagerly so that parameter
// rejections surface with the offending config field in the message.
struct RunConfig {
    std::vector<ConformalMap> maps;
    int truncation = 16;
    Route route = Route::series;
    int quad_radial = 48;
    int quad_angular = 128;
    int samples = 256;
    std::string out_dir = "out";
    bool has_mobius = false;
    Mobius mobius = mobius_identity();
    bool has_family = false;
    int family_index = 0;
    Series family_phi{std::vector<Cd>{Cd(0.0)}};
    Cd family_q_slope = 0.0;
    double family_delta = 1e-2;
    std::vector<int> sweep_orders;
};

RunConfig parse_config(const std::string& json_text);

Rigging rigging_from(const RunConfig& config);

// shortest representation that parses back to the same double
std::string format_double(double v);

std::string operator_json(const GrunskyOperator& op, double norm);
std::string operator_csv(const GrunskyOperator& op);
std::string recovery_json(const GrunskyOperator& op, const std::vector<Cd>& centers,
                          const RecoveryReport& report);
std::string holomorphy_json(int family_index, double delta, const ProbeResult& coarse,
                            const ProbeResult& fine);
std::string norms_json(Route route, const std::vector<std::pair<int, double>>& table);
std::string invariance_json(int truncation, const Mobius& t, double deviation);

struct RunOutput {
    std::vector<std::pair<std::string, std::string>> files;   // name, content
    std::string report;
    std::string out_dir;
};

// Executes one subcommand against a config document. Overrides: order > 0
// replaces the truncation, non-empty route/out replace their fields. The
// zoo-list command ignores the config entirely.
RunOutput run_command(const std::string& command, const std::string& config_json,
                      const std::string& out_override, int order_override,
                      const std::string& route_override);

// writes every file of the output under its out_dir, creating directories
void write_outputs(const RunOutput& output);

} // namespace grz
