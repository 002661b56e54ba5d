#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <grunsky/grunsky.h>

int main(int argc, char** argv) {
    CLI::App app{"Grunsky operators of non-overlapping conformal disk maps"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string route;
    int order = 0;

    struct Command {
        const char* name;
        const char* help;
        bool needs_config;
    };
    const Command commands[] = {
        {"compute", "assemble the block operator, write operator.json and operator.csv", true},
        {"norm", "largest singular value at the configured truncation", true},
        {"sweep", "norms across the configured truncation ladder", true},
        {"invariance", "operator deviation under the configured transform", true},
        {"recover", "jet recovery report from the period datum", true},
        {"holomorphy", "Cauchy-Riemann residual along the configured family", true},
        {"zoo-list", "list available map kinds and parameter constraints", false},
    };
    for (const Command& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        CLI::Option* opt = sub->add_option("--config", config_path, "config document (JSON)");
        if (c.needs_config) opt->required();
        sub->add_option("--out", out_dir, "output directory (overrides the config)");
        sub->add_option("--order", order, "truncation override");
        sub->add_option("--route", route, "route override: series or quadrature");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    std::string config_text;
    if (command != "zoo-list") {
        std::ifstream file(config_path, std::ios::binary);
        if (!file) {
            std::fprintf(stderr, "error: IoError: cannot read config file '%s'\n",
                         config_path.c_str());
            return 1;
        }
        std::ostringstream buffer;
        buffer << file.rdbuf();
        config_text = buffer.str();
    }

    char* report = nullptr;
    const int status = grunsky_run(command.c_str(), config_text.c_str(),
                                   out_dir.empty() ? nullptr : out_dir.c_str(), order,
                                   route.empty() ? nullptr : route.c_str(), &report);
    if (status != GRUNSKY_OK) {
        std::fprintf(stderr, "error: %s\n", grunsky_last_error());
        grunsky_free_string(report);
        return grunsky_exit_code(status);
    }
    std::fputs(report, stdout);
    grunsky_free_string(report);
    return 0;
}
