#include "grunsky/grunsky.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "io_json.hpp"

struct grunsky_rigging {
    grz::Rigging rig;
};

struct grunsky_op {
    grz::GrunskyOperator op;
    Eigen::MatrixXcd flat;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
int guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return GRUNSKY_OK;
    } catch (const grz::Error& e) {
        g_last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        g_last_error = std::string("Internal: ") + e.what();
        return GRUNSKY_ERR_INTERNAL;
    }
}

int bad_handle(const char* message) {
    g_last_error = std::string("BadHandle: ") + message;
    return GRUNSKY_ERR_BAD_HANDLE;
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

grz::Route route_from_name(const char* route) {
    if (route == nullptr || *route == '\0') return grz::Route::series;
    if (std::strcmp(route, "series") == 0) return grz::Route::series;
    if (std::strcmp(route, "quadrature") == 0) return grz::Route::quadrature;
    grz::fail(grz::Errc::invalid_argument, "route: expected 'series' or 'quadrature'");
}

} // namespace

extern "C" {

const char* grunsky_status_name(int status) {
    if (status == GRUNSKY_ERR_BAD_HANDLE) return "BadHandle";
    if (status == GRUNSKY_ERR_INTERNAL) return "Internal";
    if (status >= 0 && status <= 19) return grz::errc_name(static_cast<grz::Errc>(status));
    return "unknown";
}

int grunsky_exit_code(int status) {
    if (status == GRUNSKY_OK) return 0;
    if (status == GRUNSKY_ERR_BAD_HANDLE) return 1;
    if (status == GRUNSKY_ERR_INTERNAL) return 2;
    if (status >= 1 && status <= 19) return grz::errc_exit_code(static_cast<grz::Errc>(status));
    return 1;
}

const char* grunsky_last_error(void) { return g_last_error.c_str(); }

void grunsky_free_string(char* s) { std::free(s); }

int grunsky_rigging_parse(const char* config_json, grunsky_rigging** rigging_out) {
    if (config_json == nullptr || rigging_out == nullptr)
        return bad_handle("null argument to grunsky_rigging_parse");
    *rigging_out = nullptr;
    return guarded([&] {
        grz::RunConfig config = grz::parse_config(config_json);
        auto* handle = new grunsky_rigging{grz::rigging_from(config)};
        *rigging_out = handle;
    });
}

void grunsky_rigging_free(grunsky_rigging* rigging) { delete rigging; }

int grunsky_rigging_count(const grunsky_rigging* rigging) {
    return rigging == nullptr ? 0 : rigging->rig.n();
}

double grunsky_rigging_margin(const grunsky_rigging* rigging) {
    return rigging == nullptr ? 0.0 : rigging->rig.margin;
}

int grunsky_compute(const grunsky_rigging* rigging, int order, const char* route,
                    grunsky_op** op_out) {
    if (rigging == nullptr || op_out == nullptr)
        return bad_handle("null argument to grunsky_compute");
    *op_out = nullptr;
    return guarded([&] {
        grz::GrunskyOperator op = grz::assemble(rigging->rig, order, route_from_name(route));
        Eigen::MatrixXcd flat = grz::flatten(op);
        *op_out = new grunsky_op{std::move(op), std::move(flat)};
    });
}

void grunsky_op_free(grunsky_op* op) { delete op; }

int grunsky_op_dim(const grunsky_op* op) {
    return op == nullptr ? 0 : static_cast<int>(op->flat.rows());
}

int grunsky_op_norm(const grunsky_op* op, double* norm_out) {
    if (op == nullptr || norm_out == nullptr) return bad_handle("null argument to grunsky_op_norm");
    return guarded([&] { *norm_out = grz::operator_norm(op->op); });
}

int grunsky_op_entry(const grunsky_op* op, int row, int col, double* re_out, double* im_out) {
    if (op == nullptr || re_out == nullptr || im_out == nullptr)
        return bad_handle("null argument to grunsky_op_entry");
    return guarded([&] {
        if (row < 0 || col < 0 || row >= op->flat.rows() || col >= op->flat.cols())
            grz::fail(grz::Errc::invalid_argument, "entry index out of range");
        const grz::Cd v = op->flat(row, col);
        *re_out = v.real();
        *im_out = v.imag();
    });
}

int grunsky_op_json(const grunsky_op* op, char** json_out) {
    if (op == nullptr || json_out == nullptr) return bad_handle("null argument to grunsky_op_json");
    *json_out = nullptr;
    return guarded([&] {
        const double norm = grz::operator_norm(op->op);
        *json_out = duplicate(grz::operator_json(op->op, norm));
        if (*json_out == nullptr) grz::fail(grz::Errc::io_error, "out of memory");
    });
}

int grunsky_op_csv(const grunsky_op* op, char** csv_out) {
    if (op == nullptr || csv_out == nullptr) return bad_handle("null argument to grunsky_op_csv");
    *csv_out = nullptr;
    return guarded([&] {
        *csv_out = duplicate(grz::operator_csv(op->op));
        if (*csv_out == nullptr) grz::fail(grz::Errc::io_error, "out of memory");
    });
}

int grunsky_run(const char* command, const char* config_json, const char* out_dir,
                int order_override, const char* route_override, char** report_out) {
    if (command == nullptr) return bad_handle("null command");
    if (report_out != nullptr) *report_out = nullptr;
    return guarded([&] {
        grz::RunOutput output = grz::run_command(
            command, config_json == nullptr ? std::string() : std::string(config_json),
            out_dir == nullptr ? std::string() : std::string(out_dir), order_override,
            route_override == nullptr ? std::string() : std::string(route_override));
        grz::write_outputs(output);
        if (report_out != nullptr) {
            *report_out = duplicate(output.report);
            if (*report_out == nullptr) grz::fail(grz::Errc::io_error, "out of memory");
        }
    });
}

} // extern "C"
