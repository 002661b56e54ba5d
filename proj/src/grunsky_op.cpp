#include "grunsky_op.hpp"

#include <cmath>
#include <future>

namespace grz {

const char* route_name(Route r) { return r == Route::series ? "series" : "quadrature"; }

namespace {

void check_block_request(const Rigging& rig, int j, int i, int N) {
    if (!(rig.margin > 0.0))
        fail(Errc::rigging_not_certified, "rigging has no certified disjointness margin");
    int n = rig.n();
    if (j < 0 || j >= n || i < 0 || i >= n)
        fail(Errc::invalid_argument, "block index out of range");
    if (N < 1) fail(Errc::invalid_argument, "truncation order must be at least 1");
}

Bivar inner_derivative(const Bivar& b) {
    std::vector<Series> c;
    c.reserve(b.order() + 1);
    for (int m = 0; m <= b.order(); ++m) c.push_back(derivative(b[m]));
    return Bivar(std::move(c));
}

// bivariate table of the off-diagonal kernel at z/zeta degrees <= d
Bivar offdiagonal_kernel(const ConformalMap& fj, const ConformalMap& fi, int d) {
    Series ui = series_at(fi, d + 1);
    Series uj = series_at(fj, d + 1);
    Series inner_zero = zero_series(d, Cd(0.0));

    // D(zeta, z) = (p_i - p_j) + (f_i(zeta) - p_i) - (f_j(z) - p_j)
    std::vector<Series> dc(d + 1, inner_zero);
    dc[0][0] = fi.center - fj.center;
    for (int k = 1; k <= d; ++k) dc[0][k] = -uj[k];
    for (int m = 1; m <= d; ++m) dc[m][0] = ui[m];
    Bivar den(dc);

    std::vector<Series> fz(d + 1, inner_zero);
    fz[0] = truncated(derivative(uj), d);
    Bivar fpz(fz);

    std::vector<Series> fu(d + 1, inner_zero);
    for (int m = 0; m <= d; ++m) fu[m][0] = static_cast<double>(m + 1) * ui[m + 1];
    Bivar fpzeta(fu);

    return fpzeta * fpz * reciprocal(den * den);
}

// diagonal kernel via the log generating function: divide out zeta - z first,
// then d/dzeta log followed by d/dz
Bivar diagonal_kernel(const ConformalMap& f, int d) {
    Series a = series_at(f, 2 * d + 3);
    std::vector<Series> qc(d + 2, zero_series(d + 1, Cd(0.0)));
    for (int l = 0; l <= d + 1; ++l)
        for (int m = 0; m <= d + 1; ++m) qc[l][m] = a[l + m + 1];
    Bivar q(qc);
    Bivar w = derivative(q) * reciprocal(q);
    return inner_derivative(w);
}

double entry_scale(int n, int m) { return std::sqrt(static_cast<double>(n + 1) * (m + 1)); }

// ---- quadrature route ----

struct NodeTable {
    std::vector<Cd> z;
    std::vector<double> w;   // radial weight * r * angular step
};

NodeTable flatten_rule(const DiskQuadrature& rule) {
    NodeTable t;
    size_t count = static_cast<size_t>(rule.radial()) * rule.angular;
    t.z.reserve(count);
    t.w.reserve(count);
    double step = 2.0 * M_PI / rule.angular;
    for (int q = 0; q < rule.radial(); ++q) {
        double r = rule.radial_nodes[q];
        double w = rule.radial_weights[q] * r * step;
        for (int m = 0; m < rule.angular; ++m) {
            double th = step * m + rule.angle_offset;
            t.z.push_back(Cd(r * std::cos(th), r * std::sin(th)));
            t.w.push_back(w);
        }
    }
    return t;
}

Cd diagonal_kernel_value(const ConformalMap& f, Cd zeta, Cd z, Cd fzeta, Cd fz, Cd dfzeta, Cd dfz) {
    switch (f.kind) {
        case MapKind::affine_disk:
            return Cd(0.0);
        case MapKind::quadratic: {
            Cd den = 1.0 + f.c * (zeta + z);
            return -f.c * f.c / (den * den);
        }
        case MapKind::joukowski_ellipse: {
            Cd den = 1.0 - f.c * zeta * z;
            return -f.c / (den * den);
        }
        case MapKind::raw_series: {
            Cd d = zeta - z;
            Cd dd = (fzeta - fz) / d;
            return (dfzeta * dfz - dd * dd) / (dd * dd * d * d);
        }
    }
    fail(Errc::invalid_argument, "unknown map kind");
}

Eigen::MatrixXcd quadrature_matrix(const Rigging& rig, int j, int i, int N,
                                   const DiskQuadrature& inner) {
    const ConformalMap& fi = rig.maps[i];
    const ConformalMap& fj = rig.maps[j];

    // offset outer rule: disjoint from the inner nodes, radial order grows
    // with N so the projection integrals stay exact
    DiskQuadrature outer_rule =
        build_quadrature(std::max(40, N + 8), inner.angular, inner.angle_offset + M_PI / inner.angular);
    NodeTable zeta = flatten_rule(inner);
    NodeTable z = flatten_rule(outer_rule);
    Eigen::Index qin = static_cast<Eigen::Index>(zeta.z.size());
    Eigen::Index qout = static_cast<Eigen::Index>(z.z.size());

    std::vector<Cd> f_in(qin), df_in(qin), f_out(qout), df_out(qout);
    for (Eigen::Index r = 0; r < qin; ++r) {
        f_in[r] = evaluate(fi, zeta.z[r]);
        df_in[r] = derivative_at(fi, zeta.z[r]);
    }
    for (Eigen::Index q = 0; q < qout; ++q) {
        f_out[q] = evaluate(fj, z.z[q]);
        df_out[q] = derivative_at(fj, z.z[q]);
    }

    // Vin(r, m) = w_r conj(zeta_r)^m
    Eigen::MatrixXcd vin(qin, N);
    for (Eigen::Index r = 0; r < qin; ++r) {
        Cd cz = std::conj(zeta.z[r]);
        Cd p = zeta.w[r];
        for (int m = 0; m < N; ++m) {
            vin(r, m) = p;
            p *= cz;
        }
    }

    bool diag = (i == j);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(qout, N);
    constexpr Eigen::Index tile = 256;
    Eigen::MatrixXcd k(tile, qin);
    for (Eigen::Index q0 = 0; q0 < qout; q0 += tile) {
        Eigen::Index rows = std::min(tile, qout - q0);
        for (Eigen::Index t = 0; t < rows; ++t) {
            Eigen::Index q = q0 + t;
            for (Eigen::Index r = 0; r < qin; ++r) {
                if (diag) {
                    k(t, r) = diagonal_kernel_value(fi, zeta.z[r], z.z[q], f_in[r], f_out[q],
                                                    df_in[r], df_out[q]);
                } else {
                    Cd den = f_in[r] - f_out[q];
                    k(t, r) = df_in[r] * df_out[q] / (den * den);
                }
            }
        }
        c.middleRows(q0, rows).noalias() = k.topRows(rows) * vin;
    }

    // project onto e_n with the outer rule
    Eigen::MatrixXcd vout(qout, N);
    for (Eigen::Index q = 0; q < qout; ++q) {
        Cd cz = std::conj(z.z[q]);
        Cd p = z.w[q];
        for (int n = 0; n < N; ++n) {
            vout(q, n) = p;
            p *= cz;
        }
    }

    Eigen::MatrixXcd m = vout.transpose() * c;
    for (int n = 0; n < N; ++n)
        for (int mm = 0; mm < N; ++mm) m(n, mm) *= -entry_scale(n, mm) / (M_PI * M_PI);
    return m;
}

} // namespace

Eigen::MatrixXcd kernel_coefficients(const Rigging& rigging, int j, int i, int N) {
    check_block_request(rigging, j, i, N);
    int d = N - 1;
    try {
        Bivar k = (i == j) ? diagonal_kernel(rigging.maps[i], d)
                           : offdiagonal_kernel(rigging.maps[j], rigging.maps[i], d);
        Eigen::MatrixXcd out(N, N);
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n) out(n, m) = k[m][n];
        return out;
    } catch (const Error& e) {
        if (e.code() == Errc::zero_constant_term)
            fail(Errc::series_ill_conditioned, "kernel series inversion lost its pivot");
        throw;
    }
}

GrunskyBlock block_series(const Rigging& rigging, int j, int i, int N) {
    Eigen::MatrixXcd k = kernel_coefficients(rigging, j, i, N);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m) k(n, m) *= -1.0 / entry_scale(n, m);
    return GrunskyBlock{j, i, std::move(k)};
}

GrunskyBlock block_quadrature(const Rigging& rigging, int j, int i, int N,
                              const DiskQuadrature& quad) {
    check_block_request(rigging, j, i, N);
    if (quad.angular < 16)
        fail(Errc::resolution_too_low, "quadrature route needs angular count >= 16 for its self check");

    Eigen::MatrixXcd full = quadrature_matrix(rigging, j, i, N, quad);
    DiskQuadrature half = build_quadrature(quad.radial(), quad.angular / 2, quad.angle_offset);
    Eigen::MatrixXcd coarse = quadrature_matrix(rigging, j, i, N, half);

    double scale = std::max(1.0, full.cwiseAbs().maxCoeff());
    double drift = (full - coarse).cwiseAbs().maxCoeff();
    if (drift > 1e-6 * scale)
        fail(Errc::quadrature_diverged,
             "angular refinement still moves block (" + std::to_string(j + 1) + "," +
                 std::to_string(i + 1) + ") entries by " + std::to_string(drift));
    return GrunskyBlock{j, i, std::move(full)};
}

GrunskyOperator assemble(const Rigging& rigging, int N, Route route, const DiskQuadrature* quad) {
    check_block_request(rigging, 0, 0, N);
    int n = rigging.n();
    DiskQuadrature default_rule;
    const DiskQuadrature* rule = quad;
    if (route == Route::quadrature && rule == nullptr) {
        default_rule = build_quadrature(48, 128);
        rule = &default_rule;
    }

    std::vector<std::future<GrunskyBlock>> futures;
    futures.reserve(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            futures.push_back(std::async(std::launch::async, [&, j, i] {
                return route == Route::series ? block_series(rigging, j, i, N)
                                              : block_quadrature(rigging, j, i, N, *rule);
            }));

    GrunskyOperator op;
    op.n = n;
    op.truncation = N;
    op.route = route;
    op.blocks.reserve(futures.size());
    for (auto& f : futures) op.blocks.push_back(f.get());
    return op;
}

Eigen::MatrixXcd flatten(const GrunskyOperator& op) {
    Eigen::Index dim = static_cast<Eigen::Index>(op.n) * op.truncation;
    Eigen::MatrixXcd full(dim, dim);
    for (const GrunskyBlock& b : op.blocks)
        full.block(static_cast<Eigen::Index>(b.j) * op.truncation,
                   static_cast<Eigen::Index>(b.i) * op.truncation, op.truncation, op.truncation) = b.m;
    return full;
}

double operator_norm(const GrunskyOperator& op, bool force_power_iteration) {
    Eigen::MatrixXcd a = flatten(op);
    if (!force_power_iteration && a.rows() <= 512) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
        return svd.singularValues()(0);
    }

    Eigen::VectorXcd v(a.cols());
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Cd(1.0 + 0.25 * std::sin(0.7 * k), 0.25 * std::cos(1.3 * k));
    v.normalize();
    double prev = -1.0;
    for (int it = 0; it < 5000; ++it) {
        Eigen::VectorXcd w = a * v;
        double sigma = w.norm();
        if (sigma == 0.0) return 0.0;
        v.noalias() = a.adjoint() * w;
        double nv = v.norm();
        if (nv == 0.0) return sigma;
        v /= nv;
        if (prev >= 0.0 && std::abs(sigma - prev) <= 1e-10 * std::max(sigma, 1e-300)) return sigma;
        prev = sigma;
    }
    fail(Errc::power_iteration_stalled, "singular value estimate did not settle within 5000 iterations");
}

std::vector<std::pair<int, double>> truncation_sweep(const Rigging& rigging,
                                                     const std::vector<int>& orders) {
    if (orders.empty()) fail(Errc::invalid_argument, "sweep needs at least one order");
    for (size_t k = 1; k < orders.size(); ++k)
        if (orders[k] <= orders[k - 1]) fail(Errc::invalid_argument, "sweep orders must be ascending");
    std::vector<std::pair<int, double>> out;
    out.reserve(orders.size());
    for (int N : orders) out.emplace_back(N, operator_norm(assemble(rigging, N, Route::series)));
    return out;
}

} // namespace grz
