// Orbital element sets and conversions.
//
// Two parameterizations are used throughout: classical elements
// (a, e, i, raan, argp, ta) for problem definition and reporting, and
// modified equinoctial elements (p, f, g, h, k, L) for the dynamics.
// True longitude L is kept unwrapped (monotone along a trajectory) so
// revolution counts are well defined; it is reduced mod 2pi only at
// conversion boundaries.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "ltoc/ad.hpp"

namespace ltoc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Classical (Keplerian) orbital elements. Angles in radians, a in the
/// length unit of the caller's choice (meters or DU).
struct ClassicalElements {
    double a = 0.0;     ///< semi-major axis
    double e = 0.0;     ///< eccentricity
    double i = 0.0;     ///< inclination
    double raan = 0.0;  ///< longitude of the ascending node
    double argp = 0.0;  ///< argument of periapsis
    double ta = 0.0;    ///< true anomaly
};

/// Modified equinoctial elements. L is unwrapped.
struct EquinoctialElements {
    double p = 0.0;
    double f = 0.0;
    double g = 0.0;
    double h = 0.0;
    double k = 0.0;
    double L = 0.0;
};

/// Physical constants of a transfer scenario (SI).
struct PhysicalConstants {
    double earth_radius = 0.0;  ///< m
    double mu_earth = 0.0;      ///< m^3/s^2
    double g0 = 0.0;            ///< m/s^2
    double m0 = 0.0;            ///< kg
    double isp = 0.0;           ///< s
};

/// Canonical units chosen so the scaled gravitational parameter is 1.
struct ScaleSet {
    double du = 1.0;       ///< length unit, m
    double vu = 1.0;       ///< speed unit, m/s
    double tu = 1.0;       ///< time unit, s
    double au = 1.0;       ///< acceleration unit, m/s^2
    double mu_unit = 1.0;  ///< mass unit, kg
    double fu = 1.0;       ///< force unit, N
};

inline ScaleSet make_scales(const PhysicalConstants& c) {
    if (c.earth_radius <= 0.0 || c.mu_earth <= 0.0 || c.m0 <= 0.0)
        throw std::invalid_argument("make_scales: constants must be positive");
    ScaleSet s;
    s.du = c.earth_radius;
    s.vu = std::sqrt(c.mu_earth / s.du);
    s.tu = s.du / s.vu;
    s.au = s.vu / s.tu;
    s.mu_unit = c.m0;
    s.fu = s.mu_unit * s.au;
    return s;
}

inline EquinoctialElements coe_to_mee(const ClassicalElements& coe) {
    if (coe.a <= 0.0) throw std::domain_error("coe_to_mee: requires a > 0");
    if (coe.e >= 1.0) throw std::domain_error("coe_to_mee: requires e < 1");
    if (std::abs(coe.i - kPi) < 1e-12)
        throw std::domain_error("coe_to_mee: i = pi is singular (tan(i/2))");
    EquinoctialElements mee;
    mee.p = coe.a * (1.0 - coe.e * coe.e);
    mee.f = coe.e * std::cos(coe.argp + coe.raan);
    mee.g = coe.e * std::sin(coe.argp + coe.raan);
    const double t = std::tan(0.5 * coe.i);
    mee.h = t * std::cos(coe.raan);
    mee.k = t * std::sin(coe.raan);
    mee.L = coe.raan + coe.argp + coe.ta;
    return mee;
}

/// Inverse of coe_to_mee. When the node is undefined (h = k = 0) raan is
/// reported as 0; when e = 0 argp is reported as 0, matching the
/// "Undefined" convention of degenerate orbits.
inline ClassicalElements mee_to_coe(const EquinoctialElements& mee) {
    if (mee.p <= 0.0) throw std::domain_error("mee_to_coe: requires p > 0");
    ClassicalElements coe;
    coe.e = std::sqrt(mee.f * mee.f + mee.g * mee.g);
    coe.a = mee.p / (1.0 - coe.e * coe.e);
    const double hk = std::sqrt(mee.h * mee.h + mee.k * mee.k);
    coe.i = 2.0 * std::atan(hk);
    coe.raan = (hk > 0.0) ? std::atan2(mee.k, mee.h) : 0.0;
    if (coe.raan < 0.0) coe.raan += kTwoPi;
    if (coe.e > 0.0) {
        double lon_peri = std::atan2(mee.g, mee.f);  // argp + raan
        coe.argp = lon_peri - coe.raan;
        coe.argp = std::fmod(coe.argp, kTwoPi);
        if (coe.argp < 0.0) coe.argp += kTwoPi;
    } else {
        coe.argp = 0.0;
    }
    coe.ta = mee.L - coe.raan - coe.argp;
    return coe;
}

/// Core MEE -> inertial Cartesian map, templated for differentiation.
/// mee = (p, f, g, h, k, L). Writes position into r[0..2] and velocity
/// into v[0..2].
template <class T>
void mee_to_cartesian_t(const T* mee, double mu, T* r, T* v) {
    using ad::cos;
    using ad::sin;
    using ad::sqrt;
    const T& p = mee[0];
    const T& f = mee[1];
    const T& g = mee[2];
    const T& h = mee[3];
    const T& k = mee[4];
    const T& L = mee[5];

    const T cl = cos(L), sl = sin(L);
    const T alpha2 = h * h - k * k;
    const T s2 = 1.0 + h * h + k * k;
    const T w = 1.0 + f * cl + g * sl;
    const T rmag = p / w;
    const T hk2 = 2.0 * (h * k);

    r[0] = (rmag / s2) * (cl + alpha2 * cl + hk2 * sl);
    r[1] = (rmag / s2) * (sl - alpha2 * sl + hk2 * cl);
    r[2] = (2.0 * (rmag / s2)) * (h * sl - k * cl);

    const T c = sqrt(T(mu) / p) / s2;
    v[0] = -c * (sl + alpha2 * sl - hk2 * cl + g - hk2 * f + alpha2 * g);
    v[1] = -c * (-cl + alpha2 * cl + hk2 * sl - f + hk2 * g + alpha2 * f);
    v[2] = 2.0 * c * (h * cl + k * sl + f * h + g * k);
}

struct CartesianState {
    Eigen::Vector3d r;
    Eigen::Vector3d v;
};

inline CartesianState mee_to_cartesian(const EquinoctialElements& mee, double mu) {
    if (mee.p <= 0.0) throw std::domain_error("mee_to_cartesian: requires p > 0");
    const double w = 1.0 + mee.f * std::cos(mee.L) + mee.g * std::sin(mee.L);
    if (w <= 0.0) throw std::domain_error("mee_to_cartesian: degenerate geometry (w <= 0)");
    const double in[6] = {mee.p, mee.f, mee.g, mee.h, mee.k, mee.L};
    CartesianState out;
    mee_to_cartesian_t(in, mu, out.r.data(), out.v.data());
    return out;
}

/// Wrap an angle difference into (-pi, pi]; convenience for tests and
/// reporting.
inline double wrap_angle_diff(double x) {
    double y = std::remainder(x, kTwoPi);
    if (y <= -kPi) y += kTwoPi;
    return y;
}

}  // namespace ltoc
