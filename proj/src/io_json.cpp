#include "io_json.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace grz {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void config_fail(const std::string& field, const std::string& message) {
    fail(Errc::config_parse, field + ": " + message);
}

double number_at(const Json& v, const std::string& field) {
    if (!v.is_number()) config_fail(field, "expected a number");
    return v.get<double>();
}

int integer_at(const Json& v, const std::string& field) {
    if (!v.is_number_integer()) config_fail(field, "expected an integer");
    return v.get<int>();
}

Cd complex_at(const Json& v, const std::string& field) {
    if (v.is_number()) return Cd(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Cd(v[0].get<double>(), v[1].get<double>());
    config_fail(field, "expected a number or an [re, im] pair");
}

void reject_unknown_keys(const Json& object, const std::set<std::string>& allowed,
                         const std::string& field) {
    for (const auto& item : object.items())
        if (allowed.find(item.key()) == allowed.end())
            config_fail(field.empty() ? item.key() : field + "." + item.key(), "unknown field");
}

ConformalMap map_from_json(const Json& m, const std::string& field) {
    if (!m.is_object()) config_fail(field, "expected an object");
    if (!m.contains("kind")) config_fail(field + ".kind", "required");
    if (!m["kind"].is_string()) config_fail(field + ".kind", "expected a string");
    const std::string kind = m["kind"].get<std::string>();
    if (!m.contains("center")) config_fail(field + ".center", "required");
    const Cd center = complex_at(m["center"], field + ".center");

    auto rewrap = [&field](const std::function<ConformalMap()>& build) {
        try {
            return build();
        } catch (const Error& e) {
            fail(e.code(), field + ": " + e.message());
        }
    };

    if (kind == "affine_disk") {
        reject_unknown_keys(m, {"kind", "center", "radius"}, field);
        if (!m.contains("radius")) config_fail(field + ".radius", "required");
        const double r = number_at(m["radius"], field + ".radius");
        return rewrap([&] { return affine_disk(center, r); });
    }
    if (kind == "quadratic") {
        reject_unknown_keys(m, {"kind", "center", "c"}, field);
        if (!m.contains("c")) config_fail(field + ".c", "required");
        const Cd c = complex_at(m["c"], field + ".c");
        return rewrap([&] { return quadratic_map(center, c); });
    }
    if (kind == "joukowski_ellipse") {
        reject_unknown_keys(m, {"kind", "center", "c"}, field);
        if (!m.contains("c")) config_fail(field + ".c", "required");
        const Cd c = complex_at(m["c"], field + ".c");
        return rewrap([&] { return joukowski_ellipse(center, c); });
    }
    if (kind == "raw_series") {
        reject_unknown_keys(m, {"kind", "center", "tail", "certified"}, field);
        if (!m.contains("tail")) config_fail(field + ".tail", "required");
        if (!m["tail"].is_array() || m["tail"].size() < 2)
            config_fail(field + ".tail", "expected an array of at least two coefficients");
        std::vector<Cd> tail;
        for (size_t k = 0; k < m["tail"].size(); ++k)
            tail.push_back(complex_at(m["tail"][k], field + ".tail[" + std::to_string(k) + "]"));
        bool certified = false;
        if (m.contains("certified")) {
            if (!m["certified"].is_boolean()) config_fail(field + ".certified", "expected a boolean");
            certified = m["certified"].get<bool>();
        }
        return rewrap([&] { return raw_series_map(center, Series(std::move(tail)), certified); });
    }
    config_fail(field + ".kind", "unknown kind '" + kind +
                                     "' (available: affine_disk, quadratic, joukowski_ellipse, "
                                     "raw_series)");
}

Route route_from(const std::string& name, const std::string& field) {
    if (name == "series") return Route::series;
    if (name == "quadrature") return Route::quadrature;
    config_fail(field, "expected 'series' or 'quadrature'");
}

Json complex_json(Cd z) { return Json::array({z.real(), z.imag()}); }

Json complex_list_json(const std::vector<Cd>& values) {
    Json list = Json::array();
    for (Cd z : values) list.push_back(complex_json(z));
    return list;
}

Json real_list_json(const std::vector<double>& values) {
    Json list = Json::array();
    for (double v : values) list.push_back(v);
    return list;
}

std::string report_header(const std::string& command, const RunConfig& config,
                          const Rigging* rigging) {
    std::ostringstream os;
    os << "command: " << command << "\n";
    if (rigging != nullptr) {
        os << "maps:";
        for (const ConformalMap& f : rigging->maps) os << " " << map_kind_name(f.kind);
        os << "\n";
        os << "margin: " << format_double(rigging->margin) << "\n";
    }
    os << "truncation: " << config.truncation << "\n";
    os << "route: " << route_name(config.route) << "\n";
    return os.str();
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        fail(Errc::config_parse, std::string("config: ") + e.what());
    }
    if (!root.is_object()) config_fail("config", "top level must be an object");
    reject_unknown_keys(root,
                        {"maps", "truncation", "route", "quadrature", "samples", "out", "mobius",
                         "family", "sweep_orders"},
                        "");

    RunConfig config;
    if (!root.contains("maps")) config_fail("maps", "required");
    if (!root["maps"].is_array() || root["maps"].empty())
        config_fail("maps", "expected a non-empty array");
    for (size_t i = 0; i < root["maps"].size(); ++i)
        config.maps.push_back(map_from_json(root["maps"][i], "maps[" + std::to_string(i) + "]"));

    if (root.contains("truncation")) {
        config.truncation = integer_at(root["truncation"], "truncation");
        if (config.truncation < 1) config_fail("truncation", "must be at least 1");
    }
    if (root.contains("route")) {
        if (!root["route"].is_string()) config_fail("route", "expected a string");
        config.route = route_from(root["route"].get<std::string>(), "route");
    }
    if (root.contains("quadrature")) {
        const Json& q = root["quadrature"];
        if (!q.is_object()) config_fail("quadrature", "expected an object");
        reject_unknown_keys(q, {"radial", "angular"}, "quadrature");
        if (q.contains("radial")) config.quad_radial = integer_at(q["radial"], "quadrature.radial");
        if (q.contains("angular"))
            config.quad_angular = integer_at(q["angular"], "quadrature.angular");
    }
    if (root.contains("samples")) {
        config.samples = integer_at(root["samples"], "samples");
        if (config.samples < 64) config_fail("samples", "must be at least 64");
    }
    if (root.contains("out")) {
        if (!root["out"].is_string()) config_fail("out", "expected a string");
        config.out_dir = root["out"].get<std::string>();
        if (config.out_dir.empty()) config_fail("out", "must be non-empty");
    }
    if (root.contains("mobius")) {
        const Json& t = root["mobius"];
        if (!t.is_object()) config_fail("mobius", "expected an object");
        reject_unknown_keys(t, {"a", "b", "c", "d"}, "mobius");
        for (const char* key : {"a", "b", "c", "d"})
            if (!t.contains(key)) config_fail(std::string("mobius.") + key, "required");
        try {
            config.mobius = make_mobius(complex_at(t["a"], "mobius.a"), complex_at(t["b"], "mobius.b"),
                                        complex_at(t["c"], "mobius.c"), complex_at(t["d"], "mobius.d"));
        } catch (const Error& e) {
            fail(e.code(), "mobius: " + e.message());
        }
        config.has_mobius = true;
    }
    if (root.contains("family")) {
        const Json& f = root["family"];
        if (!f.is_object()) config_fail("family", "expected an object");
        reject_unknown_keys(f, {"index", "phi", "q_slope", "delta"}, "family");
        if (f.contains("index")) config.family_index = integer_at(f["index"], "family.index");
        if (f.contains("phi")) {
            if (!f["phi"].is_array() || f["phi"].empty())
                config_fail("family.phi", "expected a non-empty array");
            std::vector<Cd> phi;
            for (size_t k = 0; k < f["phi"].size(); ++k)
                phi.push_back(complex_at(f["phi"][k], "family.phi[" + std::to_string(k) + "]"));
            config.family_phi = Series(std::move(phi));
        }
        if (f.contains("q_slope")) config.family_q_slope = complex_at(f["q_slope"], "family.q_slope");
        if (f.contains("delta")) {
            config.family_delta = number_at(f["delta"], "family.delta");
            if (!(config.family_delta > 0.0)) config_fail("family.delta", "must be positive");
        }
        config.has_family = true;
    }
    if (root.contains("sweep_orders")) {
        if (!root["sweep_orders"].is_array() || root["sweep_orders"].empty())
            config_fail("sweep_orders", "expected a non-empty array");
        for (size_t k = 0; k < root["sweep_orders"].size(); ++k) {
            int order = integer_at(root["sweep_orders"][k], "sweep_orders[" + std::to_string(k) + "]");
            if (order < 1) config_fail("sweep_orders[" + std::to_string(k) + "]", "must be at least 1");
            config.sweep_orders.push_back(order);
        }
        for (size_t k = 1; k < config.sweep_orders.size(); ++k)
            if (config.sweep_orders[k] <= config.sweep_orders[k - 1])
                config_fail("sweep_orders", "must be strictly ascending");
    }
    return config;
}

Rigging rigging_from(const RunConfig& config) {
    return validate_rigging(config.maps, config.samples);
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string operator_json(const GrunskyOperator& op, double norm) {
    Json doc;
    doc["n"] = op.n;
    doc["N"] = op.truncation;
    doc["route"] = route_name(op.route);
    Json blocks = Json::array();
    for (const GrunskyBlock& block : op.blocks) {
        Json b;
        b["target"] = block.j;
        b["source"] = block.i;
        Json rows = Json::array();
        for (int r = 0; r < block.m.rows(); ++r) {
            Json row = Json::array();
            for (int c = 0; c < block.m.cols(); ++c) row.push_back(complex_json(block.m(r, c)));
            rows.push_back(std::move(row));
        }
        b["entries"] = std::move(rows);
        blocks.push_back(std::move(b));
    }
    doc["blocks"] = std::move(blocks);
    doc["norm"] = norm;
    return doc.dump(2) + "\n";
}

std::string operator_csv(const GrunskyOperator& op) {
    const Eigen::MatrixXcd flat = flatten(op);
    std::ostringstream os;
    for (int r = 0; r < flat.rows(); ++r) {
        for (int c = 0; c < flat.cols(); ++c) {
            if (c > 0) os << ",";
            os << format_double(flat(r, c).real()) << "," << format_double(flat(r, c).imag());
        }
        os << "\n";
    }
    return os.str();
}

std::string recovery_json(const GrunskyOperator& op, const std::vector<Cd>& centers,
                          const RecoveryReport& report) {
    Json doc;
    doc["n"] = op.n;
    doc["N"] = op.truncation;
    doc["route"] = route_name(op.route);
    doc["centers"] = complex_list_json(centers);
    doc["dprime"] = complex_list_json(report.dprime);
    doc["dsecond"] = complex_list_json(report.dsecond);
    doc["schwarzian_at_zero"] = complex_list_json(report.schwarzian_at_zero);
    Json residuals;
    residuals["dprime"] = real_list_json(report.dprime_residual);
    residuals["dsecond"] = real_list_json(report.dsecond_residual);
    residuals["schwarzian"] = real_list_json(report.schwarzian_residual);
    doc["residuals"] = std::move(residuals);
    return doc.dump(2) + "\n";
}

std::string holomorphy_json(int family_index, double delta, const ProbeResult& coarse,
                            const ProbeResult& fine) {
    double observed_order = 0.0;
    if (coarse.residual > 0.0 && fine.residual > 0.0)
        observed_order = std::log2(coarse.residual / fine.residual);
    Json doc;
    doc["family_index"] = family_index;
    doc["h_coarse"] = delta / 2.0;
    doc["h_fine"] = delta / 4.0;
    doc["residual_coarse"] = coarse.residual;
    doc["residual_fine"] = fine.residual;
    doc["scale"] = coarse.scale;
    doc["observed_order"] = observed_order;
    return doc.dump(2) + "\n";
}

std::string norms_json(Route route, const std::vector<std::pair<int, double>>& table) {
    Json doc;
    doc["route"] = route_name(route);
    Json orders = Json::array();
    Json norms = Json::array();
    for (const auto& [order, norm] : table) {
        orders.push_back(order);
        norms.push_back(norm);
    }
    doc["orders"] = std::move(orders);
    doc["norms"] = std::move(norms);
    return doc.dump(2) + "\n";
}

std::string invariance_json(int truncation, const Mobius& t, double deviation) {
    Json doc;
    doc["N"] = truncation;
    Json coeffs;
    coeffs["a"] = complex_json(t.a);
    coeffs["b"] = complex_json(t.b);
    coeffs["c"] = complex_json(t.c);
    coeffs["d"] = complex_json(t.d);
    doc["mobius"] = std::move(coeffs);
    doc["deviation"] = deviation;
    return doc.dump(2) + "\n";
}

RunOutput run_command(const std::string& command, const std::string& config_json,
                      const std::string& out_override, int order_override,
                      const std::string& route_override) {
    static const std::set<std::string> known = {"compute",    "norm",  "invariance", "recover",
                                                "holomorphy", "sweep", "zoo-list"};
    if (known.find(command) == known.end())
        config_fail("command",
                    "unknown command '" + command +
                        "' (available: compute, norm, invariance, recover, holomorphy, sweep, "
                        "zoo-list)");

    RunOutput output;
    if (command == "zoo-list") {
        std::ostringstream os;
        os << "kind               parameters\n"
           << "affine_disk        center, radius (radius > 0)\n"
           << "quadratic          center, c (|c| < 1/2)\n"
           << "joukowski_ellipse  center, c (|c| < 1)\n"
           << "raw_series         center, tail (tail[0] = 0, tail[1] != 0), certified flag\n";
        output.report = os.str();
        output.out_dir = out_override.empty() ? std::string(".") : out_override;
        return output;
    }

    RunConfig config = parse_config(config_json);
    if (order_override > 0) config.truncation = order_override;
    if (!route_override.empty()) config.route = route_from(route_override, "route");
    if (!out_override.empty()) config.out_dir = out_override;
    output.out_dir = config.out_dir;

    Rigging rigging = rigging_from(config);
    const int N = config.truncation;
    std::optional<DiskQuadrature> quad;
    if (config.route == Route::quadrature)
        quad = build_quadrature(config.quad_radial, config.quad_angular);
    const DiskQuadrature* quad_ptr = quad ? &*quad : nullptr;
    std::ostringstream report;
    report << report_header(command, config, &rigging);

    if (command == "compute") {
        GrunskyOperator op = assemble(rigging, N, config.route, quad_ptr);
        const double norm = operator_norm(op);
        output.files.emplace_back("operator.json", operator_json(op, norm));
        output.files.emplace_back("operator.csv", operator_csv(op));
        report << "norm: " << format_double(norm) << "\n";
    } else if (command == "norm") {
        GrunskyOperator op = assemble(rigging, N, config.route, quad_ptr);
        const double norm = operator_norm(op);
        output.files.emplace_back("norms.json", norms_json(config.route, {{N, norm}}));
        report << "norm: " << format_double(norm) << "\n";
    } else if (command == "sweep") {
        if (config.sweep_orders.empty()) config_fail("sweep_orders", "required for sweep");
        auto table = truncation_sweep(rigging, config.sweep_orders);
        output.files.emplace_back("norms.json", norms_json(Route::series, table));
        for (const auto& [order, norm] : table)
            report << "norm[" << order << "]: " << format_double(norm) << "\n";
    } else if (command == "invariance") {
        if (!config.has_mobius) config_fail("mobius", "required for invariance");
        const double deviation = check_mobius_invariance(rigging, config.mobius, N);
        output.files.emplace_back("invariance.json",
                                  invariance_json(N, config.mobius, deviation));
        report << "deviation: " << format_double(deviation) << "\n";
    } else if (command == "recover") {
        PeriodDatum datum = period(rigging, N, config.route, quad_ptr);
        Rigging normalized = normalize_rigging(rigging, 2 * N + 4).first;
        std::vector<Cd> centers = period_centers(datum);
        RecoveryReport rec = recover_jets(datum.grunsky, centers, &normalized);
        output.files.emplace_back("recovery.json", recovery_json(datum.grunsky, centers, rec));
        double worst = 0.0;
        for (double r : rec.dprime_residual) worst = std::max(worst, r);
        for (double r : rec.dsecond_residual) worst = std::max(worst, r);
        for (double r : rec.schwarzian_residual) worst = std::max(worst, r);
        report << "jet residual: " << format_double(worst) << "\n";
    } else if (command == "holomorphy") {
        if (!config.has_family) config_fail("family", "required for holomorphy");
        if (config.family_index < 0 || config.family_index >= rigging.n())
            config_fail("family.index", "out of range");
        PreSchwarzianFamily family = family_from(rigging.maps[static_cast<size_t>(config.family_index)],
                                                 config.family_phi, config.family_q_slope, 2 * N + 4);
        ProbeResult coarse = holomorphy_probe(config.family_index, rigging, family,
                                              config.family_delta, N);
        ProbeResult fine = holomorphy_probe(config.family_index, rigging, family,
                                            config.family_delta / 2.0, N);
        output.files.emplace_back("holomorphy.json",
                                  holomorphy_json(config.family_index, config.family_delta, coarse,
                                                  fine));
        report << "residual: " << format_double(coarse.residual) << " -> "
               << format_double(fine.residual) << "\n";
    }

    output.files.emplace_back("report.txt", report.str());
    output.report = report.str();
    return output;
}

void write_outputs(const RunOutput& output) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(output.out_dir, ec);
    if (ec) fail(Errc::io_error, "cannot create output directory '" + output.out_dir + "'");
    for (const auto& [name, content] : output.files) {
        const fs::path path = fs::path(output.out_dir) / name;
        std::ofstream file(path, std::ios::binary);
        if (!file) fail(Errc::io_error, "cannot open '" + path.string() + "' for writing");
        file.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!file) fail(Errc::io_error, "failed writing '" + path.string() + "'");
    }
}

} // namespace grz
