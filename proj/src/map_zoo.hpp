#pragma once

#include <string>
#include <vector>

#include "power_series.hpp"

namespace grz {

enum class MapKind { affine_disk, quadratic, joukowski_ellipse, raw_series };

const char* map_kind_name(MapKind k);

// Injective holomorphic map of the unit disk with f(0) = center. Closed-form
// kinds regenerate their Taylor series at any order; raw_series maps are
// polynomials unless derived (Mobius composition, pre-Schwarzian solve), in
// which case the stored order is a hard ceiling.
struct ConformalMap {
    MapKind kind = MapKind::raw_series;
    Cd center = 0.0;
    double radius = 0.0;   // affine_disk
    Cd c = 0.0;            // quadratic / joukowski_ellipse parameter
    Series tail{std::vector<Cd>{Cd(0.0), Cd(1.0)}};   // series of f(z) - center
    bool univalence_certified = false;
    bool exact_polynomial = true;
};

// parameter ranges that certify univalence: r > 0, |c| < 1/2, |c| < 1
ConformalMap affine_disk(Cd p, double r);
ConformalMap quadratic_map(Cd p, Cd c);
ConformalMap joukowski_ellipse(Cd p, Cd c);
// univalence taken on faith from the caller
ConformalMap raw_series_map(Cd p, Series tail, bool certified = false);

// Taylor coefficients of f(z) - center to the requested order. Closed forms
// are exact at any order; polynomial raw maps zero-pad; derived raw maps
// reject orders beyond what was materialized.
Series series_at(const ConformalMap& f, int order);

Cd evaluate(const ConformalMap& f, Cd z);
Cd derivative_at(const ConformalMap& f, Cd z);
Cd fprime0(const ConformalMap& f);

struct Rigging {
    std::vector<ConformalMap> maps;
    double margin = 0.0;
    int samples = 0;
    int n() const { return static_cast<int>(maps.size()); }
};

// Certifies pairwise disjoint image closures by boundary/interior sampling
// plus a winding-number containment test. Margin below the threshold, or any
// containment, rejects the tuple.
Rigging validate_rigging(std::vector<ConformalMap> maps, int samples = 256);

inline constexpr double kMarginThreshold = 1e-3;

// a z + b over c z + d, normalized to determinant one on construction.
struct Mobius {
    Cd a, b, c, d;
};

Mobius make_mobius(Cd a, Cd b, Cd c, Cd d);
Mobius mobius_identity();
Mobius mobius_compose(const Mobius& s, const Mobius& t);   // s after t
Mobius mobius_inverse(const Mobius& t);
Cd mobius_apply(const Mobius& t, Cd z);
bool is_identity(const Mobius& t);
// unique transform sending (z1, z2, z3) to (0, 1, -1)
Mobius mobius_three_point(Cd z1, Cd z2, Cd z3);

int winding_number(const std::vector<Cd>& loop, Cd w0);

// Post-composes every map with T after checking that the pole of T stays
// outside all image closures. Resulting maps are derived raw series
// materialized at `order`.
Rigging post_compose_mobius(const Rigging& rigging, const Mobius& t, int order);

// (f''/f')' - (1/2)(f''/f')^2 to the requested order
Series schwarzian(const ConformalMap& f, int order);

// Complex line psi^t = psi0 + t phi, q(t) = q0 + q_slope t through the
// pre-Schwarzian chart g -> (g'(0), g''/g').
struct PreSchwarzianFamily {
    Series base_psi{std::vector<Cd>{Cd(0.0)}};
    Series direction_phi{std::vector<Cd>{Cd(0.0)}};
    Cd q0 = 1.0;
    Cd q_slope = 0.0;
    Cd center = 0.0;
};

// Integrates g'' / g' = psi0 + t phi with g(0) = 0, g'(0) = q(t); the result
// is not certified univalent, callers revalidate the rigging.
ConformalMap solve_pre_schwarzian(const PreSchwarzianFamily& family, Cd t, int order);

// family through a given base map: psi0 = f''/f', q0 = f'(0)
PreSchwarzianFamily family_from(const ConformalMap& base, Series phi, Cd q_slope, int order);

} // namespace grz
