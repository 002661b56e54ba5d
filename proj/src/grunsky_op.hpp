#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "bergman.hpp"
#include "map_zoo.hpp"

namespace grz {

enum class Route { series, quadrature };
const char* route_name(Route r);

// Block (j, i): matrix of the component mapping data attached to source map i
// into the target space of map j. Entry M[n, m] is the coefficient of e_n in
// the image of te_m.
struct GrunskyBlock {
    int j = 0;
    int i = 0;
    Eigen::MatrixXcd m;
};

struct GrunskyOperator {
    int n = 0;
    int truncation = 0;
    Route route = Route::series;
    std::vector<GrunskyBlock> blocks;   // grid stored row-major, index j*n + i

    const Eigen::MatrixXcd& block(int j, int i) const { return blocks[static_cast<size_t>(j) * n + i].m; }
};

// Taylor table k[n][m] (z degree n, zeta degree m) of the block kernel:
//   i != j :  f_i'(zeta) f_j'(z) / (f_i(zeta) - f_j(z))^2
//   i == j :  d^2/dz dzeta log[(f_i(zeta) - f_i(z)) / (zeta - z)]
// The diagonal kernel's removable singularity is eliminated algebraically by
// dividing out zeta - z before taking log derivatives, so the table is exact
// to truncation.
Eigen::MatrixXcd kernel_coefficients(const Rigging& rigging, int j, int i, int N);

// Entry formula M[n,m] = -k[n][m] / sqrt((n+1)(m+1)); the sign follows the
// reflection convention te_m -> -conj(e_m).
GrunskyBlock block_series(const Rigging& rigging, int j, int i, int N);

// Independent oracle: evaluates the kernel pointwise at tensor quadrature
// nodes and projects onto the orthonormal basis by a second, angularly offset
// rule. Self-checks against an angular half rule and rejects when the two
// disagree beyond 1e-6 times the matrix scale.
GrunskyBlock block_quadrature(const Rigging& rigging, int j, int i, int N,
                              const DiskQuadrature& quad);

GrunskyOperator assemble(const Rigging& rigging, int N, Route route,
                         const DiskQuadrature* quad = nullptr);

// (n N) x (n N) matrix; block rows major, source index fastest within a row.
Eigen::MatrixXcd flatten(const GrunskyOperator& op);

// Largest singular value of the flattened matrix: full decomposition up to
// dimension 512, power iteration on the Gram matrix above. Truncation is a
// compression, so this is a lower bound for the true operator norm.
double operator_norm(const GrunskyOperator& op, bool force_power_iteration = false);

// norm per truncation order; orders must be ascending
std::vector<std::pair<int, double>> truncation_sweep(const Rigging& rigging,
                                                     const std::vector<int>& orders);

} // namespace grz
