#include "period_map.hpp"

#include <array>
#include <cmath>
#include <future>
#include <sstream>

#include "errors.hpp"

namespace grz {

namespace {

constexpr double kCenterCollisionTolerance = 1e-12;
constexpr double kProductTolerance = 1e-5;

void check_centers_distinct(const Rigging& rigging) {
    double scale = 1.0;
    for (const ConformalMap& f : rigging.maps) scale = std::max(scale, std::abs(f.center));
    for (int i = 0; i < rigging.n(); ++i)
        for (int j = i + 1; j < rigging.n(); ++j)
            if (std::abs(rigging.maps[i].center - rigging.maps[j].center) <=
                kCenterCollisionTolerance * scale) {
                std::ostringstream os;
                os << "centers of maps " << i << " and " << j << " coincide";
                fail(Errc::degenerate_centers, os.str());
            }
}

Cd guarded_fprime0(const ConformalMap& f) {
    Cd d = fprime0(f);
    if (std::abs(d) < 1e-12)
        fail(Errc::degenerate_derivative, "vanishing derivative at the center");
    return d;
}

} // namespace

std::pair<Rigging, Mobius> normalize_rigging(const Rigging& rigging, int order) {
    const int n = rigging.n();
    if (n < 1) fail(Errc::invalid_argument, "empty tuple");
    if (order < 2) fail(Errc::invalid_argument, "materialization order must be at least 2");
    check_centers_distinct(rigging);

    const Cd p1 = rigging.maps[0].center;
    Mobius t;
    if (n >= 3) {
        t = mobius_three_point(p1, rigging.maps[1].center, rigging.maps[2].center);
    } else if (n == 2) {
        // T(p1) = 0, (T o f1)'(0) = 1, T(p2) = 1
        const Cd alpha = Cd(1.0) / guarded_fprime0(rigging.maps[0]);
        const Cd beta = alpha - Cd(1.0) / (rigging.maps[1].center - p1);
        t = make_mobius(alpha, -alpha * p1, beta, Cd(1.0) - beta * p1);
    } else {
        t = make_mobius(Cd(1.0), -p1, Cd(0.0), guarded_fprime0(rigging.maps[0]));
    }
    return {post_compose_mobius(rigging, t, order), t};
}

PeriodDatum period(const Rigging& rigging, int N, Route route, const DiskQuadrature* quad) {
    Rigging normalized = normalize_rigging(rigging, 2 * N + 4).first;
    PeriodDatum datum;
    for (int i = 3; i < normalized.n(); ++i)
        datum.normalized_centers.push_back(normalized.maps[i].center);
    datum.grunsky = assemble(normalized, N, route, quad);
    return datum;
}

std::vector<Cd> period_centers(const PeriodDatum& datum) {
    const int n = datum.grunsky.n;
    std::vector<Cd> centers;
    centers.reserve(static_cast<size_t>(n));
    if (n >= 1) centers.push_back(Cd(0.0));
    if (n >= 2) centers.push_back(Cd(1.0));
    if (n >= 3) centers.push_back(Cd(-1.0));
    for (Cd p : datum.normalized_centers) centers.push_back(p);
    return centers;
}

double check_mobius_invariance(const Rigging& rigging, const Mobius& t, int N) {
    GrunskyOperator before = assemble(rigging, N, Route::series);
    Rigging moved = post_compose_mobius(rigging, t, 2 * N + 4);
    GrunskyOperator after = assemble(moved, N, Route::series);
    double worst = 0.0;
    for (size_t b = 0; b < before.blocks.size(); ++b)
        worst = std::max(worst, (after.blocks[b].m - before.blocks[b].m).cwiseAbs().maxCoeff());
    return worst;
}

RecoveryReport recover_jets(const GrunskyOperator& op, const std::vector<Cd>& centers,
                            const Rigging* truth) {
    const int n = op.n;
    if (n < 1) fail(Errc::invalid_argument, "empty operator");
    if (static_cast<int>(centers.size()) != n)
        fail(Errc::invalid_argument, "need exactly one center per map");
    if (n >= 2 && op.truncation < 2)
        fail(Errc::invalid_argument, "second jets need truncation at least 2");

    // kernel coefficient of z^a zeta^b in block (j, i), undoing the
    // normalization baked into the matrix entries
    auto kernel = [&op](int j, int i, int a, int b) {
        return -op.block(j, i)(a, b) * std::sqrt(double((a + 1) * (b + 1)));
    };

    RecoveryReport report;
    for (int i = 0; i < n; ++i)
        report.schwarzian_at_zero.push_back(6.0 * kernel(i, i, 0, 0));

    if (n == 1) {
        // the one-map normalization fixes f'(0) = 1; f''(0) is not
        // identifiable because affine post-composition leaves the diagonal
        // kernel unchanged
        report.dprime.push_back(Cd(1.0));
    } else {
        // leading coefficient of block (j, i) is f_i'(0) f_j'(0) / (p_i - p_j)^2
        Eigen::MatrixXcd products = Eigen::MatrixXcd::Zero(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                if (i == j) continue;
                const Cd d = centers[i] - centers[j];
                products(j, i) = kernel(j, i, 0, 0) * d * d;
            }

        std::vector<Cd> x(static_cast<size_t>(n));
        if (n == 2) {
            x[0] = Cd(1.0);   // f1'(0) = 1 resolves the common scaling
            x[1] = products(1, 0);
        } else {
            if (std::abs(products(2, 1)) < 1e-14)
                fail(Errc::inconsistent_products, "vanishing pairwise product");
            // x0^2 from the first triple; the global sign is a convention
            // (Re > 0, ties broken by Im >= 0)
            Cd x0 = std::sqrt(products(1, 0) * products(2, 0) / products(2, 1));
            if (x0.real() < 0 || (x0.real() == 0 && x0.imag() < 0)) x0 = -x0;
            if (std::abs(x0) < 1e-14)
                fail(Errc::inconsistent_products, "vanishing derivative product");
            x[0] = x0;
            for (int j = 1; j < n; ++j) x[static_cast<size_t>(j)] = products(j, 0) / x0;
        }
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                if (i == j) continue;
                const double err = std::abs(x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)] -
                                            products(j, i));
                if (err > kProductTolerance * std::max(1.0, std::abs(products(j, i)))) {
                    std::ostringstream os;
                    os << "pairwise product (" << i << ", " << j
                       << ") deviates from the recovered derivatives by " << err;
                    fail(Errc::inconsistent_products, os.str());
                }
            }
        report.dprime = x;

        // next coefficient in z of block (j, i) carries the second jet:
        // k10 = x_i f_j''(0) / d^2 + 2 x_i x_j^2 / d^3 with d = p_i - p_j
        for (int j = 0; j < n; ++j) {
            const int i = (j == 0) ? 1 : 0;
            const Cd d = centers[i] - centers[j];
            const Cd k10 = kernel(j, i, 1, 0);
            const Cd xi = x[static_cast<size_t>(i)];
            const Cd xj = x[static_cast<size_t>(j)];
            report.dsecond.push_back((k10 * d * d * d - 2.0 * xi * xj * xj) / (xi * d));
        }
    }

    if (truth != nullptr) {
        if (truth->n() != n) fail(Errc::invalid_argument, "ground truth tuple size mismatch");
        for (int i = 0; i < n; ++i) {
            const ConformalMap& f = truth->maps[static_cast<size_t>(i)];
            report.dprime_residual.push_back(std::abs(report.dprime[static_cast<size_t>(i)] - fprime0(f)));
            if (n >= 2) {
                const Cd fpp = 2.0 * series_at(f, 2)[2];
                report.dsecond_residual.push_back(std::abs(report.dsecond[static_cast<size_t>(i)] - fpp));
            }
            const Cd s0 = schwarzian(f, 0)[0];
            report.schwarzian_residual.push_back(std::abs(report.schwarzian_at_zero[static_cast<size_t>(i)] - s0));
        }
    }
    return report;
}

ProbeResult holomorphy_probe(int family_index, const Rigging& rigging,
                             const PreSchwarzianFamily& family, double delta, int N) {
    const int n = rigging.n();
    if (family_index < 0 || family_index >= n)
        fail(Errc::invalid_argument, "family index out of range");
    if (!(delta > 0.0)) fail(Errc::invalid_argument, "delta must be positive");
    if (N < 1) fail(Errc::invalid_argument, "truncation must be positive");

    const double h = delta / 2.0;
    const int order = 2 * N + 4;
    auto evaluate_at = [&](Cd t) {
        std::vector<ConformalMap> maps = rigging.maps;
        maps[static_cast<size_t>(family_index)] = solve_pre_schwarzian(family, t, order);
        Rigging moved = validate_rigging(std::move(maps), rigging.samples);
        return flatten(assemble(moved, N, Route::series));
    };

    const std::array<Cd, 4> ts = {Cd(h), Cd(-h), Cd(0.0, h), Cd(0.0, -h)};
    std::array<std::future<Eigen::MatrixXcd>, 4> futures;
    for (size_t k = 0; k < ts.size(); ++k)
        futures[k] = std::async(std::launch::async, evaluate_at, ts[k]);
    const Eigen::MatrixXcd gp = futures[0].get();
    const Eigen::MatrixXcd gm = futures[1].get();
    const Eigen::MatrixXcd gip = futures[2].get();
    const Eigen::MatrixXcd gim = futures[3].get();

    const Eigen::MatrixXcd d_real = (gp - gm) / (2.0 * h);
    const Eigen::MatrixXcd d_imag = (gip - gim) / Cd(0.0, 2.0 * h);

    ProbeResult result;
    result.residual = (d_real - d_imag).cwiseAbs().maxCoeff();
    result.scale = std::max(std::max(gp.cwiseAbs().maxCoeff(), gm.cwiseAbs().maxCoeff()),
                            std::max(gip.cwiseAbs().maxCoeff(), gim.cwiseAbs().maxCoeff()));
    return result;
}

} // namespace grz
