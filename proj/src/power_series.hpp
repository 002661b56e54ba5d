#pragma once

#include <complex>
#include <vector>

#include "errors.hpp"

namespace grz {

using Cd = std::complex<double>;

// Pivot threshold for series inversion; constant terms smaller than this are
// treated as non-invertible.
inline constexpr double kPivotEpsilon = 1e-13;

// Truncated power series over a coefficient ring R (complex scalars, or
// series again for bivariate work). Immutable by convention: operations
// return new values. Every result carries the min truncation order of its
// operands.
template <class R>
class PowerSeries {
public:
    explicit PowerSeries(std::vector<R> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) fail(Errc::invalid_argument, "power series needs at least the constant term");
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const R& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
    R& operator[](int k) { return c_[static_cast<size_t>(k)]; }
    const std::vector<R>& coeffs() const { return c_; }

private:
    std::vector<R> c_;
};

using Series = PowerSeries<Cd>;
using Bivar = PowerSeries<Series>;   // outer variable zeta, inner variable z

// Ring plumbing shared by scalar and nested instantiations.
template <class R>
struct RingOps;

template <>
struct RingOps<Cd> {
    static Cd zero(const Cd&) { return Cd(0.0); }
    static Cd one(const Cd&) { return Cd(1.0); }
    static bool is_zero(const Cd& v) { return v == Cd(0.0); }
    static Cd inverse(const Cd& v, double eps) {
        if (std::abs(v) < eps) fail(Errc::zero_constant_term, "series constant term below pivot epsilon");
        return 1.0 / v;
    }
    static Cd scaled(const Cd& v, double s) { return v * s; }
};

template <class R>
PowerSeries<R> reciprocal(const PowerSeries<R>& a, double eps = kPivotEpsilon);

template <class R>
struct RingOps<PowerSeries<R>> {
    using S = PowerSeries<R>;
    static S zero(const S& model) {
        return S(std::vector<R>(model.coeffs().size(), RingOps<R>::zero(model[0])));
    }
    static S one(const S& model) {
        S r = zero(model);
        r[0] = RingOps<R>::one(model[0]);
        return r;
    }
    static bool is_zero(const S& v) {
        for (const R& c : v.coeffs())
            if (!RingOps<R>::is_zero(c)) return false;
        return true;
    }
    static S inverse(const S& v, double eps) { return reciprocal(v, eps); }
    static S scaled(const S& v, double s) {
        std::vector<R> c = v.coeffs();
        for (R& x : c) x = RingOps<R>::scaled(x, s);
        return S(std::move(c));
    }
};

template <class R>
PowerSeries<R> zero_series(int order, const R& model) {
    return PowerSeries<R>(std::vector<R>(static_cast<size_t>(order) + 1, RingOps<R>::zero(model)));
}

template <class R>
PowerSeries<R> constant_series(const R& value, int order) {
    PowerSeries<R> r = zero_series(order, value);
    r[0] = value;
    return r;
}

template <class R>
PowerSeries<R> truncated(const PowerSeries<R>& a, int order) {
    if (order >= a.order()) return a;
    std::vector<R> c(a.coeffs().begin(), a.coeffs().begin() + order + 1);
    return PowerSeries<R>(std::move(c));
}

template <class R>
PowerSeries<R> operator+(const PowerSeries<R>& a, const PowerSeries<R>& b) {
    int n = std::min(a.order(), b.order());
    std::vector<R> c;
    c.reserve(n + 1);
    for (int k = 0; k <= n; ++k) c.push_back(a[k] + b[k]);
    return PowerSeries<R>(std::move(c));
}

template <class R>
PowerSeries<R> operator-(const PowerSeries<R>& a, const PowerSeries<R>& b) {
    int n = std::min(a.order(), b.order());
    std::vector<R> c;
    c.reserve(n + 1);
    for (int k = 0; k <= n; ++k) c.push_back(a[k] - b[k]);
    return PowerSeries<R>(std::move(c));
}

template <class R>
PowerSeries<R> operator-(const PowerSeries<R>& a) {
    std::vector<R> c = a.coeffs();
    for (R& x : c) x = RingOps<R>::zero(x) - x;
    return PowerSeries<R>(std::move(c));
}

// Cauchy product truncated at the min operand order.
template <class R>
PowerSeries<R> mul(const PowerSeries<R>& a, const PowerSeries<R>& b) {
    int n = std::min(a.order(), b.order());
    PowerSeries<R> r = zero_series(n, a[0]);
    for (int i = 0; i <= n; ++i) {
        if (RingOps<R>::is_zero(a[i])) continue;
        for (int j = 0; i + j <= n; ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

template <class R>
PowerSeries<R> operator*(const PowerSeries<R>& a, const PowerSeries<R>& b) {
    return mul(a, b);
}

template <class R>
PowerSeries<R> scale(const PowerSeries<R>& a, const R& factor) {
    std::vector<R> c = a.coeffs();
    for (R& x : c) x = x * factor;
    return PowerSeries<R>(std::move(c));
}

// Multiplicative inverse by forward substitution on the triangular system
// a * b = 1; exact to truncation.
template <class R>
PowerSeries<R> reciprocal(const PowerSeries<R>& a, double eps) {
    R p = RingOps<R>::inverse(a[0], eps);
    PowerSeries<R> b = zero_series(a.order(), a[0]);
    b[0] = p;
    for (int k = 1; k <= a.order(); ++k) {
        R s = RingOps<R>::zero(a[0]);
        for (int j = 1; j <= k; ++j) s = s + a[j] * b[k - j];
        b[k] = RingOps<R>::zero(a[0]) - p * s;
    }
    return b;
}

// Taylor series of outer(inner(z)). The inner constant term must vanish
// unless the caller certifies that outer converges at inner's constant term
// (entire to truncation).
template <class R>
PowerSeries<R> compose(const PowerSeries<R>& outer, const PowerSeries<R>& inner,
                       bool outer_entire = false) {
    if (!RingOps<R>::is_zero(inner[0]) && !outer_entire)
        fail(Errc::composition_domain, "inner constant term must be zero");
    int n = std::min(outer.order(), inner.order());
    PowerSeries<R> in = truncated(inner, n);
    PowerSeries<R> r = constant_series(outer[n], n);
    for (int k = n - 1; k >= 0; --k) {
        r = mul(r, in);
        r[0] = r[0] + outer[k];
    }
    return r;
}

template <class R>
PowerSeries<R> derivative(const PowerSeries<R>& a) {
    if (a.order() == 0) return zero_series(0, a[0]);
    std::vector<R> c;
    c.reserve(a.order());
    for (int k = 1; k <= a.order(); ++k) c.push_back(RingOps<R>::scaled(a[k], static_cast<double>(k)));
    return PowerSeries<R>(std::move(c));
}

// Antiderivative with constant term fixed to zero.
template <class R>
PowerSeries<R> antiderivative(const PowerSeries<R>& a) {
    std::vector<R> c;
    c.reserve(a.order() + 2);
    c.push_back(RingOps<R>::zero(a[0]));
    for (int k = 0; k <= a.order(); ++k) c.push_back(RingOps<R>::scaled(a[k], 1.0 / (k + 1)));
    return PowerSeries<R>(std::move(c));
}

// exp(a) for a with zero constant term, via the recurrence from
// (exp a)' = a' exp a.
template <class R>
PowerSeries<R> exp_series(const PowerSeries<R>& a) {
    if (!RingOps<R>::is_zero(a[0]))
        fail(Errc::nonzero_constant, "exp needs zero constant term");
    PowerSeries<R> e = zero_series(a.order(), a[0]);
    e[0] = RingOps<R>::one(a[0]);
    for (int k = 1; k <= a.order(); ++k) {
        R s = RingOps<R>::zero(a[0]);
        for (int j = 1; j <= k; ++j) s = s + RingOps<R>::scaled(a[j] * e[k - j], static_cast<double>(j));
        e[k] = RingOps<R>::scaled(s, 1.0 / k);
    }
    return e;
}

// Horner evaluation of a scalar series.
inline Cd eval(const Series& a, Cd z) {
    Cd r = a[a.order()];
    for (int k = a.order() - 1; k >= 0; --k) r = r * z + a[k];
    return r;
}

} // namespace grz
