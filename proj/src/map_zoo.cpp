#include "map_zoo.hpp"

#include <cmath>
#include <limits>

namespace grz {

const char* map_kind_name(MapKind k) {
    switch (k) {
        case MapKind::affine_disk: return "affine_disk";
        case MapKind::quadratic: return "quadratic";
        case MapKind::joukowski_ellipse: return "joukowski_ellipse";
        case MapKind::raw_series: return "raw_series";
    }
    return "unknown";
}

ConformalMap affine_disk(Cd p, double r) {
    if (!(r > 0.0)) fail(Errc::invalid_argument, "affine_disk radius must be positive");
    ConformalMap f;
    f.kind = MapKind::affine_disk;
    f.center = p;
    f.radius = r;
    f.tail = Series({Cd(0.0), Cd(r)});
    f.univalence_certified = true;
    return f;
}

ConformalMap quadratic_map(Cd p, Cd c) {
    if (!(std::abs(c) < 0.5)) fail(Errc::invalid_argument, "quadratic parameter needs |c| < 1/2");
    ConformalMap f;
    f.kind = MapKind::quadratic;
    f.center = p;
    f.c = c;
    f.tail = Series({Cd(0.0), Cd(1.0), c});
    f.univalence_certified = true;
    return f;
}

ConformalMap joukowski_ellipse(Cd p, Cd c) {
    if (!(std::abs(c) < 1.0)) fail(Errc::invalid_argument, "joukowski_ellipse parameter needs |c| < 1");
    ConformalMap f;
    f.kind = MapKind::joukowski_ellipse;
    f.center = p;
    f.c = c;
    f.tail = series_at(f, 8);
    f.univalence_certified = true;
    f.exact_polynomial = false;
    return f;
}

ConformalMap raw_series_map(Cd p, Series tail, bool certified) {
    if (!RingOps<Cd>::is_zero(tail[0]))
        fail(Errc::invalid_argument, "raw series must have zero constant term");
    if (tail.order() < 1 || std::abs(tail[1]) < 1e-12)
        fail(Errc::degenerate_derivative, "raw series needs nonzero first coefficient");
    ConformalMap f;
    f.kind = MapKind::raw_series;
    f.center = p;
    f.tail = std::move(tail);
    f.univalence_certified = certified;
    return f;
}

Series series_at(const ConformalMap& f, int order) {
    if (order < 1) fail(Errc::invalid_argument, "map series order must be at least 1");
    switch (f.kind) {
        case MapKind::affine_disk: {
            Series s = zero_series(order, Cd(0.0));
            s[1] = f.radius;
            return s;
        }
        case MapKind::quadratic: {
            Series s = zero_series(order, Cd(0.0));
            s[1] = 1.0;
            if (order >= 2) s[2] = f.c;
            return s;
        }
        case MapKind::joukowski_ellipse: {
            // z/(1+cz^2) = sum (-c)^k z^(2k+1)
            Series s = zero_series(order, Cd(0.0));
            Cd a = 1.0;
            for (int k = 0; 2 * k + 1 <= order; ++k) {
                s[2 * k + 1] = a;
                a *= -f.c;
            }
            return s;
        }
        case MapKind::raw_series: {
            if (order <= f.tail.order()) return truncated(f.tail, order);
            if (!f.exact_polynomial)
                fail(Errc::invalid_argument, "derived map materialized below requested order");
            Series s = zero_series(order, Cd(0.0));
            for (int k = 0; k <= f.tail.order(); ++k) s[k] = f.tail[k];
            return s;
        }
    }
    fail(Errc::invalid_argument, "unknown map kind");
}

static void check_in_disk(Cd z) {
    if (std::abs(z) > 1.0 + 1e-9) fail(Errc::outside_disk, "evaluation point outside closed unit disk");
}

Cd evaluate(const ConformalMap& f, Cd z) {
    check_in_disk(z);
    switch (f.kind) {
        case MapKind::affine_disk: return f.center + f.radius * z;
        case MapKind::quadratic: return f.center + z + f.c * z * z;
        case MapKind::joukowski_ellipse: return f.center + z / (1.0 + f.c * z * z);
        case MapKind::raw_series: return f.center + eval(f.tail, z);
    }
    fail(Errc::invalid_argument, "unknown map kind");
}

Cd derivative_at(const ConformalMap& f, Cd z) {
    check_in_disk(z);
    switch (f.kind) {
        case MapKind::affine_disk: return f.radius;
        case MapKind::quadratic: return 1.0 + 2.0 * f.c * z;
        case MapKind::joukowski_ellipse: {
            Cd den = 1.0 + f.c * z * z;
            return (1.0 - f.c * z * z) / (den * den);
        }
        case MapKind::raw_series: return eval(derivative(f.tail), z);
    }
    fail(Errc::invalid_argument, "unknown map kind");
}

Cd fprime0(const ConformalMap& f) {
    switch (f.kind) {
        case MapKind::affine_disk: return f.radius;
        case MapKind::quadratic:
        case MapKind::joukowski_ellipse: return 1.0;
        case MapKind::raw_series: return f.tail[1];
    }
    fail(Errc::invalid_argument, "unknown map kind");
}

int winding_number(const std::vector<Cd>& loop, Cd w0) {
    double total = 0.0;
    size_t k = loop.size();
    for (size_t l = 0; l < k; ++l) {
        Cd v0 = loop[l] - w0;
        Cd v1 = loop[(l + 1) % k] - w0;
        if (std::abs(v0) < 1e-300 || std::abs(v1) < 1e-300)
            fail(Errc::invalid_argument, "winding number undefined on the curve");
        total += std::arg(v1 / v0);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

Rigging validate_rigging(std::vector<ConformalMap> maps, int samples) {
    if (maps.empty()) fail(Errc::invalid_argument, "rigging needs at least one map");
    if (samples < 64) fail(Errc::invalid_argument, "rigging validation needs at least 64 samples");
    int n = static_cast<int>(maps.size());
    Rigging rig{std::move(maps), std::numeric_limits<double>::infinity(), samples};
    if (n == 1) return rig;

    constexpr int kRadii = 16;
    std::vector<std::vector<Cd>> boundary(n), interior(n);
    for (int i = 0; i < n; ++i) {
        boundary[i].reserve(samples);
        interior[i].reserve(static_cast<size_t>(samples) * kRadii);
        for (int l = 0; l < samples; ++l) {
            double th = 2.0 * M_PI * l / samples;
            Cd w(std::cos(th), std::sin(th));
            boundary[i].push_back(evaluate(rig.maps[i], w));
            for (int q = 0; q < kRadii; ++q)
                interior[i].push_back(evaluate(rig.maps[i], (static_cast<double>(q) / kRadii) * w));
        }
    }

    // containment escapes any distance threshold, so test winding first
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (winding_number(boundary[j], rig.maps[i].center) != 0)
                fail(Errc::overlapping_images,
                     "image closures of maps " + std::to_string(i + 1) + " and " +
                         std::to_string(j + 1) + " overlap (containment)");
        }

    double best = std::numeric_limits<double>::infinity();
    int bi = 0, bj = 1;
    auto account = [&](double d2, int i, int j) {
        if (d2 < best) {
            best = d2;
            bi = i;
            bj = j;
        }
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            for (Cd a : boundary[i])
                for (Cd b : boundary[j]) account(std::norm(a - b), i, j);
            for (Cd a : boundary[i])
                for (Cd b : interior[j]) account(std::norm(a - b), i, j);
            for (Cd a : interior[i])
                for (Cd b : boundary[j]) account(std::norm(a - b), i, j);
        }
    double margin = std::sqrt(best);
    if (margin <= kMarginThreshold)
        fail(Errc::overlapping_images,
             "image closures of maps " + std::to_string(bi + 1) + " and " + std::to_string(bj + 1) +
                 " too close (margin " + std::to_string(margin) + ")");
    rig.margin = margin;
    return rig;
}

Mobius make_mobius(Cd a, Cd b, Cd c, Cd d) {
    Cd det = a * d - b * c;
    double scale = std::max({std::abs(a) * std::abs(d), std::abs(b) * std::abs(c), 1.0});
    if (std::abs(det) < 1e-12 * scale)
        fail(Errc::invalid_argument, "mobius transform is degenerate");
    Cd s = 1.0 / std::sqrt(det);
    return Mobius{a * s, b * s, c * s, d * s};
}

Mobius mobius_identity() { return Mobius{1.0, 0.0, 0.0, 1.0}; }

Mobius mobius_compose(const Mobius& s, const Mobius& t) {
    return make_mobius(s.a * t.a + s.b * t.c, s.a * t.b + s.b * t.d,
                       s.c * t.a + s.d * t.c, s.c * t.b + s.d * t.d);
}

Mobius mobius_inverse(const Mobius& t) { return Mobius{t.d, -t.b, -t.c, t.a}; }

Cd mobius_apply(const Mobius& t, Cd z) {
    Cd den = t.c * z + t.d;
    if (std::abs(den) < 1e-300) fail(Errc::invalid_argument, "mobius evaluation at its pole");
    return (t.a * z + t.b) / den;
}

bool is_identity(const Mobius& t) {
    return t.b == Cd(0.0) && t.c == Cd(0.0) && t.a == t.d;
}

Mobius mobius_three_point(Cd z1, Cd z2, Cd z3) {
    // U sends (z1,z2,z3) to (0,1,inf); V sends (0,1,-1) there; T = V^-1 U
    Cd u11 = z2 - z3, u12 = -z1 * (z2 - z3);
    Cd u21 = z2 - z1, u22 = -z3 * (z2 - z1);
    // V = [[2,0],[1,1]], V^-1 ~ [[1,0],[-1,2]]
    return make_mobius(u11, u12, -u11 + 2.0 * u21, -u12 + 2.0 * u22);
}

Rigging post_compose_mobius(const Rigging& rigging, const Mobius& t, int order) {
    if (is_identity(t)) return rigging;

    constexpr int kPoleSamples = 256;
    std::vector<ConformalMap> out;
    out.reserve(rigging.maps.size());
    for (size_t i = 0; i < rigging.maps.size(); ++i) {
        const ConformalMap& f = rigging.maps[i];
        if (t.c != Cd(0.0)) {
            std::vector<Cd> den(kPoleSamples);
            double low = std::numeric_limits<double>::infinity();
            for (int l = 0; l < kPoleSamples; ++l) {
                double th = 2.0 * M_PI * l / kPoleSamples;
                den[l] = t.c * evaluate(f, Cd(std::cos(th), std::sin(th))) + t.d;
                low = std::min(low, std::abs(den[l]));
            }
            if (low < 1e-9 || winding_number(den, Cd(0.0)) != 0)
                fail(Errc::pole_in_image,
                     "pole of the transform lies in image closure of map " + std::to_string(i + 1));
        }

        Series u = series_at(f, order);
        Series num = scale(u, t.a);
        num[0] = t.a * f.center + t.b;
        Series den = scale(u, t.c);
        den[0] = t.c * f.center + t.d;
        Series tail = num * reciprocal(den);
        Cd new_center = tail[0];
        tail[0] = 0.0;

        ConformalMap g;
        g.kind = MapKind::raw_series;
        g.center = new_center;
        g.tail = std::move(tail);
        g.univalence_certified = f.univalence_certified;
        bool poly_in = f.kind != MapKind::joukowski_ellipse &&
                       (f.kind != MapKind::raw_series || f.exact_polynomial);
        g.exact_polynomial = (t.c == Cd(0.0)) && poly_in;
        out.push_back(std::move(g));
    }
    return validate_rigging(std::move(out), rigging.samples > 0 ? rigging.samples : 256);
}

Series schwarzian(const ConformalMap& f, int order) {
    if (order < 0) fail(Errc::invalid_argument, "schwarzian order must be non-negative");
    Series u = series_at(f, order + 3);
    Series du = derivative(u);
    if (std::abs(du[0]) < 1e-12) fail(Errc::degenerate_derivative, "map derivative vanishes at 0");
    Series psi = derivative(du) * reciprocal(du);
    Series s = derivative(psi) - scale(psi * psi, Cd(0.5));
    return truncated(s, order);
}

static Series padded(const Series& a, int order) {
    if (a.order() >= order) return truncated(a, order);
    Series s = zero_series(order, Cd(0.0));
    for (int k = 0; k <= a.order(); ++k) s[k] = a[k];
    return s;
}

ConformalMap solve_pre_schwarzian(const PreSchwarzianFamily& family, Cd t, int order) {
    if (order < 2) fail(Errc::invalid_argument, "pre-Schwarzian solve needs order >= 2");
    int m = order - 2;
    Series psi = padded(family.base_psi, m) + scale(padded(family.direction_phi, m), t);
    Series g1 = exp_series(antiderivative(psi));
    Cd q = family.q0 + family.q_slope * t;
    Series g = antiderivative(scale(g1, q));

    ConformalMap f;
    f.kind = MapKind::raw_series;
    f.center = family.center;
    f.tail = std::move(g);
    f.univalence_certified = false;
    f.exact_polynomial = false;
    return f;
}

PreSchwarzianFamily family_from(const ConformalMap& base, Series phi, Cd q_slope, int order) {
    Series u = series_at(base, order + 2);
    Series du = derivative(u);
    if (std::abs(du[0]) < 1e-12) fail(Errc::degenerate_derivative, "map derivative vanishes at 0");
    PreSchwarzianFamily fam;
    fam.base_psi = truncated(derivative(du) * reciprocal(du), order);
    fam.direction_phi = padded(phi, order);
    fam.q0 = fprime0(base);
    fam.q_slope = q_slope;
    fam.center = base.center;
    return fam;
}

} // namespace grz
