// Spacecraft equations of motion in modified equinoctial elements, with
// the thrust perturbation resolved in the rotating radial/transverse/
// normal (RTN) frame. Two forms are provided: time as the independent
// variable (state p,f,g,h,k,L,m) and true longitude as the independent
// variable (state p,f,g,h,k,t,m). The cores are templated so the
// transcription can differentiate them.

#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "ltoc/ad.hpp"
#include "ltoc/elements.hpp"

namespace ltoc {

using StateVec7 = Eigen::Matrix<double, 7, 1>;

/// Trajectory sample state: scaled equinoctial elements plus scaled mass.
struct SpacecraftState {
    EquinoctialElements mee;
    double mass = 1.0;
};

/// Thrust magnitude and RTN direction components (u_r, u_t, u_n).
struct ControlInput {
    double thrust = 0.0;
    Eigen::Vector3d dir = Eigen::Vector3d::Zero();
};

/// Non-two-body acceleration in the RTN frame.
struct Perturbation {
    double radial = 0.0;
    double transverse = 0.0;
    double normal = 0.0;
};

/// Constants of the scaled (or unscaled) dynamics. exhaust_velocity is
/// g0*Isp expressed in the same unit system as the states.
struct MeeDynamicsConstants {
    double mu = 1.0;
    double exhaust_velocity = 1.0;
};

inline Perturbation perturbation(const SpacecraftState& s, const ControlInput& c) {
    if (s.mass <= 0.0) throw std::domain_error("perturbation: mass must be positive");
    const double a = c.thrust / s.mass;
    return Perturbation{a * c.dir[0], a * c.dir[1], a * c.dir[2]};
}

// Time-domain RHS. x = (p, f, g, h, k, L, m), u = (T, u_r, u_t, u_n).
// The independent variable does not appear (the system is autonomous);
// the parameter is kept for interface uniformity with the longitude form.
template <class T>
void mee_rhs_time(T /*t*/, const T* x, const T* u, const MeeDynamicsConstants& c, T* dx) {
    using ad::cos;
    using ad::sin;
    using ad::sqrt;
    const T& p = x[0];
    const T& f = x[1];
    const T& g = x[2];
    const T& h = x[3];
    const T& k = x[4];
    const T& L = x[5];
    const T& m = x[6];

    const T cl = cos(L), sl = sin(L);
    const T w = 1.0 + f * cl + g * sl;
    const T s2 = 1.0 + h * h + k * k;
    const T sp = sqrt(p / c.mu);
    const T acc = u[0] / m;
    const T dr = acc * u[1];
    const T dt = acc * u[2];
    const T dn = acc * u[3];
    const T xi = h * sl - k * cl;
    const T winv = 1.0 / w;

    dx[0] = sp * (2.0 * p) * winv * dt;
    dx[1] = sp * (sl * dr + ((w + 1.0) * cl + f) * winv * dt - g * winv * xi * dn);
    dx[2] = sp * (-cl * dr + ((w + 1.0) * sl + g) * winv * dt + f * winv * xi * dn);
    dx[3] = sp * s2 * (0.5 * winv) * cl * dn;
    dx[4] = sp * s2 * (0.5 * winv) * sl * dn;
    dx[5] = sqrt(c.mu * p) * (w / p) * (w / p) + winv * sp * xi * dn;
    dx[6] = -u[0] / c.exhaust_velocity;
}

// Longitude-domain RHS. x = (p, f, g, h, k, t, m); the independent
// variable is L. Each component is dt/dL times its time derivative.
template <class T>
void mee_rhs_longitude(T L, const T* x, const T* u, const MeeDynamicsConstants& c, T* dx) {
    T xt[7] = {x[0], x[1], x[2], x[3], x[4], L, x[6]};
    T dxt[7];
    mee_rhs_time(L, xt, u, c, dxt);
    const T dtdL = 1.0 / dxt[5];
    for (int i = 0; i < 5; ++i) dx[i] = dxt[i] * dtdL;
    dx[5] = dtdL;
    dx[6] = dxt[6] * dtdL;
}

inline StateVec7 pack_time_state(const SpacecraftState& s) {
    StateVec7 x;
    x << s.mee.p, s.mee.f, s.mee.g, s.mee.h, s.mee.k, s.mee.L, s.mass;
    return x;
}

inline SpacecraftState unpack_time_state(const StateVec7& x) {
    return SpacecraftState{EquinoctialElements{x[0], x[1], x[2], x[3], x[4], x[5]}, x[6]};
}

inline StateVec7 rhs_time(const SpacecraftState& s, const ControlInput& c,
                          const MeeDynamicsConstants& consts) {
    if (s.mee.p <= 0.0) throw std::domain_error("rhs_time: requires p > 0");
    const double w = 1.0 + s.mee.f * std::cos(s.mee.L) + s.mee.g * std::sin(s.mee.L);
    if (w <= 0.0) throw std::domain_error("rhs_time: degenerate geometry (w <= 0)");
    if (s.mass <= 0.0) throw std::domain_error("rhs_time: mass must be positive");
    const StateVec7 x = pack_time_state(s);
    const double u[4] = {c.thrust, c.dir[0], c.dir[1], c.dir[2]};
    StateVec7 dx;
    mee_rhs_time(0.0, x.data(), u, consts, dx.data());
    return dx;
}

/// d(p,f,g,h,k,t,m)/dL at the given state and epoch t.
inline StateVec7 rhs_longitude(const SpacecraftState& s, double t, const ControlInput& c,
                               const MeeDynamicsConstants& consts) {
    const StateVec7 dxdt = rhs_time(s, c, consts);
    if (dxdt[5] <= 0.0)
        throw std::domain_error("rhs_longitude: requires prograde motion (dL/dt > 0)");
    StateVec7 x;
    x << s.mee.p, s.mee.f, s.mee.g, s.mee.h, s.mee.k, t, s.mass;
    const double u[4] = {c.thrust, c.dir[0], c.dir[1], c.dir[2]};
    StateVec7 dx;
    mee_rhs_longitude(s.mee.L, x.data(), u, consts, dx.data());
    return dx;
}

/// Inertial velocity resolved in the RTN frame: (v_r, v_t, 0). The normal
/// component vanishes because the velocity lies in the orbital plane.
inline Eigen::Vector3d velocity_rtn(const EquinoctialElements& mee, double mu) {
    const double c = std::sqrt(mu / mee.p);
    const double vr = c * (mee.f * std::sin(mee.L) - mee.g * std::cos(mee.L));
    const double vt = c * (1.0 + mee.f * std::cos(mee.L) + mee.g * std::sin(mee.L));
    return {vr, vt, 0.0};
}

}  // namespace ltoc
