#pragma once

#include <cmath>
#include <vector>

#include "power_series.hpp"

namespace grz {

// Coefficients in the orthonormal bases of the holomorphic one-form spaces on
// the inner and outer disk. Index k corresponds to
//   plus:  e_k(z)  = sqrt((k+1)/pi) z^k
//   minus: te_k(z) = sqrt((k+1)/pi) z^(-k-2)
// The minus exponents start at -2: z^(-1)dz is not square integrable in the
// chart at infinity, so it is not part of the space.
enum class Space { plus, minus };

struct BergmanElement {
    Space space;
    std::vector<Cd> coeffs;
};

inline double basis_scale(int k) { return std::sqrt((k + 1) / M_PI); }

// Value of the element at z (|z| < 1 for plus, |z| > 1 for minus).
Cd eval_element(const BergmanElement& h, Cd z);

// Reflection into the conjugate space: h(z)dz -> -conj(z)^(-2) h(1/conj(z)) conj(dz).
// Basis action te_k -> -conj(e_k). Returns the coefficient list u_k of the
// image on the conjugated plus basis, u_k = -conj(c_k). Norm is preserved.
std::vector<Cd> reflect(const BergmanElement& h);

Cd inner_product(const BergmanElement& a, const BergmanElement& b);
double element_norm(const BergmanElement& h);

// Tensor rule on the unit disk: Gauss-Legendre in radius on [0,1] against a
// uniform trapezoid rule in angle (spectrally exact for trigonometric
// polynomials below the angular count). Combined weight absorbs the area
// jacobian r and the angular step.
struct DiskQuadrature {
    std::vector<double> radial_nodes;      // r_q in (0,1)
    std::vector<double> radial_weights;    // Gauss-Legendre weights on [0,1]
    int angular = 0;
    double angle_offset = 0.0;

    int radial() const { return static_cast<int>(radial_nodes.size()); }

    // integrates F over the disk against dA
    template <class F>
    auto integrate(F&& f) const {
        double step = 2.0 * M_PI / angular;
        auto acc = decltype(f(Cd(0)))(0);
        for (int q = 0; q < radial(); ++q) {
            double r = radial_nodes[q];
            double w = radial_weights[q] * r * step;
            for (int m = 0; m < angular; ++m) {
                double th = step * m + angle_offset;
                acc += w * f(Cd(r * std::cos(th), r * std::sin(th)));
            }
        }
        return acc;
    }
};

// angle_offset shifts the angular grid; distinct offsets give disjoint node
// sets, which the two-stage kernel integration relies on.
DiskQuadrature build_quadrature(int radial, int angular, double angle_offset = 0.0);

} // namespace grz
