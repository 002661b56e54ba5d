#include "bergman.hpp"

namespace grz {

Cd eval_element(const BergmanElement& h, Cd z) {
    Cd acc = 0.0;
    if (h.space == Space::plus) {
        Cd zk = 1.0;
        for (size_t k = 0; k < h.coeffs.size(); ++k) {
            acc += h.coeffs[k] * basis_scale(static_cast<int>(k)) * zk;
            zk *= z;
        }
    } else {
        Cd iz = 1.0 / z;
        Cd zk = iz * iz;
        for (size_t k = 0; k < h.coeffs.size(); ++k) {
            acc += h.coeffs[k] * basis_scale(static_cast<int>(k)) * zk;
            zk *= iz;
        }
    }
    return acc;
}

std::vector<Cd> reflect(const BergmanElement& h) {
    if (h.space != Space::minus) fail(Errc::wrong_space, "reflect expects a minus-space element");
    std::vector<Cd> u(h.coeffs.size());
    for (size_t k = 0; k < h.coeffs.size(); ++k) u[k] = -std::conj(h.coeffs[k]);
    return u;
}

Cd inner_product(const BergmanElement& a, const BergmanElement& b) {
    if (a.space != b.space) fail(Errc::space_mismatch, "inner product needs matching spaces");
    size_t n = std::min(a.coeffs.size(), b.coeffs.size());
    Cd acc = 0.0;
    for (size_t k = 0; k < n; ++k) acc += a.coeffs[k] * std::conj(b.coeffs[k]);
    return acc;
}

double element_norm(const BergmanElement& h) {
    double s = 0.0;
    for (const Cd& c : h.coeffs) s += std::norm(c);
    return std::sqrt(s);
}

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

} // namespace

DiskQuadrature build_quadrature(int radial, int angular, double angle_offset) {
    if (radial < 4 || angular < 8)
        fail(Errc::resolution_too_low, "need at least 4 radial and 8 angular nodes");
    std::vector<double> x, w;
    gauss_legendre(radial, x, w);
    DiskQuadrature q;
    q.radial_nodes.resize(radial);
    q.radial_weights.resize(radial);
    for (int i = 0; i < radial; ++i) {
        q.radial_nodes[i] = 0.5 * (x[i] + 1.0);
        q.radial_weights[i] = 0.5 * w[i];
    }
    q.angular = angular;
    q.angle_offset = angle_offset;
    return q;
}

} // namespace grz
