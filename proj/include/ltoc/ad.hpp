// Fixed-width forward-mode differentiation used by the transcription to
// assemble exact constraint Jacobians and Lagrangian Hessians one
// collocation-point block at a time. Width N is the number of active
// inputs of the block (state + control, or endpoint states + final time),
// known at compile time per problem type.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace ltoc::ad {

// ---------------------------------------------------------------------
// First order: value + gradient of length N.
// ---------------------------------------------------------------------

template <int N>
struct Dual {
    double v = 0.0;
    std::array<double, N> d{};

    Dual() = default;
    Dual(double value) : v(value) {}  // NOLINT: implicit constants are intended

    static Dual variable(double value, int index) {
        Dual x(value);
        x.d[index] = 1.0;
        return x;
    }

    Dual operator-() const {
        Dual r(-v);
        for (int i = 0; i < N; ++i) r.d[i] = -d[i];
        return r;
    }
    Dual& operator+=(const Dual& o) {
        v += o.v;
        for (int i = 0; i < N; ++i) d[i] += o.d[i];
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        v -= o.v;
        for (int i = 0; i < N; ++i) d[i] -= o.d[i];
        return *this;
    }
    Dual& operator*=(double s) {
        v *= s;
        for (int i = 0; i < N; ++i) d[i] *= s;
        return *this;
    }
};

template <int N>
Dual<N> operator+(Dual<N> a, const Dual<N>& b) { return a += b; }
template <int N>
Dual<N> operator-(Dual<N> a, const Dual<N>& b) { return a -= b; }
template <int N>
Dual<N> operator+(Dual<N> a, double s) { a.v += s; return a; }
template <int N>
Dual<N> operator+(double s, Dual<N> a) { a.v += s; return a; }
template <int N>
Dual<N> operator-(Dual<N> a, double s) { a.v -= s; return a; }
template <int N>
Dual<N> operator-(double s, const Dual<N>& a) { return (-a) + s; }

template <int N>
Dual<N> operator*(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> r(a.v * b.v);
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
}
template <int N>
Dual<N> operator*(Dual<N> a, double s) { return a *= s; }
template <int N>
Dual<N> operator*(double s, Dual<N> a) { return a *= s; }

template <int N>
Dual<N> operator/(const Dual<N>& a, const Dual<N>& b) {
    const double inv = 1.0 / b.v;
    Dual<N> r(a.v * inv);
    for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
    return r;
}
template <int N>
Dual<N> operator/(Dual<N> a, double s) { return a *= (1.0 / s); }
template <int N>
Dual<N> operator/(double s, const Dual<N>& b) { return Dual<N>(s) / b; }

// chain rule for a scalar function with derivative df at x.v
template <int N>
Dual<N> chain(double f, double df, const Dual<N>& x) {
    Dual<N> r(f);
    for (int i = 0; i < N; ++i) r.d[i] = df * x.d[i];
    return r;
}

template <int N> Dual<N> sqrt(const Dual<N>& x) {
    const double s = std::sqrt(x.v);
    return chain(s, 0.5 / s, x);
}
template <int N> Dual<N> sin(const Dual<N>& x) { return chain(std::sin(x.v), std::cos(x.v), x); }
template <int N> Dual<N> cos(const Dual<N>& x) { return chain(std::cos(x.v), -std::sin(x.v), x); }
template <int N> Dual<N> exp(const Dual<N>& x) {
    const double e = std::exp(x.v);
    return chain(e, e, x);
}
template <int N> Dual<N> log(const Dual<N>& x) { return chain(std::log(x.v), 1.0 / x.v, x); }
template <int N> Dual<N> tan(const Dual<N>& x) {
    const double t = std::tan(x.v);
    return chain(t, 1.0 + t * t, x);
}
template <int N> Dual<N> sq(const Dual<N>& x) { return x * x; }

// ---------------------------------------------------------------------
// Second order: value + gradient + dense symmetric Hessian (row-major).
// ---------------------------------------------------------------------

template <int N>
struct Dual2 {
    double v = 0.0;
    std::array<double, N> g{};
    std::array<double, static_cast<std::size_t>(N) * N> h{};

    Dual2() = default;
    Dual2(double value) : v(value) {}  // NOLINT

    static Dual2 variable(double value, int index) {
        Dual2 x(value);
        x.g[index] = 1.0;
        return x;
    }

    double hess(int i, int j) const { return h[static_cast<std::size_t>(i) * N + j]; }

    Dual2 operator-() const {
        Dual2 r(-v);
        for (int i = 0; i < N; ++i) r.g[i] = -g[i];
        for (std::size_t i = 0; i < h.size(); ++i) r.h[i] = -h[i];
        return r;
    }
    Dual2& operator+=(const Dual2& o) {
        v += o.v;
        for (int i = 0; i < N; ++i) g[i] += o.g[i];
        for (std::size_t i = 0; i < h.size(); ++i) h[i] += o.h[i];
        return *this;
    }
    Dual2& operator-=(const Dual2& o) {
        v -= o.v;
        for (int i = 0; i < N; ++i) g[i] -= o.g[i];
        for (std::size_t i = 0; i < h.size(); ++i) h[i] -= o.h[i];
        return *this;
    }
    Dual2& operator*=(double s) {
        v *= s;
        for (int i = 0; i < N; ++i) g[i] *= s;
        for (std::size_t i = 0; i < h.size(); ++i) h[i] *= s;
        return *this;
    }
};

template <int N>
Dual2<N> operator+(Dual2<N> a, const Dual2<N>& b) { return a += b; }
template <int N>
Dual2<N> operator-(Dual2<N> a, const Dual2<N>& b) { return a -= b; }
template <int N>
Dual2<N> operator+(Dual2<N> a, double s) { a.v += s; return a; }
template <int N>
Dual2<N> operator+(double s, Dual2<N> a) { a.v += s; return a; }
template <int N>
Dual2<N> operator-(Dual2<N> a, double s) { a.v -= s; return a; }
template <int N>
Dual2<N> operator-(double s, const Dual2<N>& a) { return (-a) + s; }

template <int N>
Dual2<N> operator*(const Dual2<N>& a, const Dual2<N>& b) {
    Dual2<N> r(a.v * b.v);
    for (int i = 0; i < N; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            r.h[static_cast<std::size_t>(i) * N + j] =
                a.hess(i, j) * b.v + a.v * b.hess(i, j) + a.g[i] * b.g[j] + a.g[j] * b.g[i];
    return r;
}
template <int N>
Dual2<N> operator*(Dual2<N> a, double s) { return a *= s; }
template <int N>
Dual2<N> operator*(double s, Dual2<N> a) { return a *= s; }

// scalar chain rule: f(x), with first and second derivatives at x.v
template <int N>
Dual2<N> chain2(double f, double df, double ddf, const Dual2<N>& x) {
    Dual2<N> r(f);
    for (int i = 0; i < N; ++i) r.g[i] = df * x.g[i];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            r.h[static_cast<std::size_t>(i) * N + j] = df * x.hess(i, j) + ddf * x.g[i] * x.g[j];
    return r;
}

template <int N>
Dual2<N> inv(const Dual2<N>& x) {
    const double iv = 1.0 / x.v;
    return chain2(iv, -iv * iv, 2.0 * iv * iv * iv, x);
}
template <int N>
Dual2<N> operator/(const Dual2<N>& a, const Dual2<N>& b) { return a * inv(b); }
template <int N>
Dual2<N> operator/(Dual2<N> a, double s) { return a *= (1.0 / s); }
template <int N>
Dual2<N> operator/(double s, const Dual2<N>& b) { return inv(b) * s; }

template <int N> Dual2<N> sqrt(const Dual2<N>& x) {
    const double s = std::sqrt(x.v);
    return chain2(s, 0.5 / s, -0.25 / (s * x.v), x);
}
template <int N> Dual2<N> sin(const Dual2<N>& x) {
    const double s = std::sin(x.v), c = std::cos(x.v);
    return chain2(s, c, -s, x);
}
template <int N> Dual2<N> cos(const Dual2<N>& x) {
    const double s = std::sin(x.v), c = std::cos(x.v);
    return chain2(c, -s, -c, x);
}
template <int N> Dual2<N> exp(const Dual2<N>& x) {
    const double e = std::exp(x.v);
    return chain2(e, e, e, x);
}
template <int N> Dual2<N> log(const Dual2<N>& x) {
    const double iv = 1.0 / x.v;
    return chain2(std::log(x.v), iv, -iv * iv, x);
}
template <int N> Dual2<N> tan(const Dual2<N>& x) {
    const double t = std::tan(x.v);
    const double dt = 1.0 + t * t;
    return chain2(t, dt, 2.0 * t * dt, x);
}
template <int N> Dual2<N> sq(const Dual2<N>& x) { return x * x; }

// Plain-double overloads so templated model code works for T = double.
inline double sq(double x) { return x * x; }
inline double inv(double x) { return 1.0 / x; }
using std::cos;
using std::exp;
using std::log;
using std::sin;
using std::sqrt;
using std::tan;

}  // namespace ltoc::ad

namespace ltoc::ad {

// Numeric value of a possibly-dual scalar.
inline double value(double x) { return x; }
template <int N> double value(const Dual<N>& x) { return x.v; }
template <int N> double value(const Dual2<N>& x) { return x.v; }

}  // namespace ltoc::ad
