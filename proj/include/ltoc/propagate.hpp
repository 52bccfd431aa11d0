// Propagation wrappers around the generic integrator for the two
// spacecraft dynamics forms. The control law is an arbitrary function of
// (state, independent variable), total on the span.

#pragma once

#include <functional>

#include "ltoc/dynamics.hpp"
#include "ltoc/integrate.hpp"
#include "ltoc/trajectory.hpp"

namespace ltoc {

using TimeControlLaw = std::function<ControlInput(const SpacecraftState&, double t)>;
using LongitudeControlLaw = std::function<ControlInput(const SpacecraftState&, double L)>;
/// Scalar stopping condition on (state, independent variable); the
/// propagation stops at its first sign change.
using StateEvent = std::function<double(const SpacecraftState&, double)>;

struct PropagateResult {
    OcpTrajectory traj;  ///< x = (p,f,g,h,k,L,m) or (p,f,g,h,k,t,m); u = (T,ur,ut,un)
    bool event_hit = false;
};

namespace detail {

inline Eigen::VectorXd control_to_vec(const ControlInput& c) {
    Eigen::VectorXd u(4);
    u << c.thrust, c.dir[0], c.dir[1], c.dir[2];
    return u;
}

}  // namespace detail

/// Integrate the time-domain dynamics from t0 to t1 (state p,f,g,h,k,L,m).
inline PropagateResult propagate_time(const SpacecraftState& s0, const TimeControlLaw& law,
                                      double t0, double t1, const MeeDynamicsConstants& consts,
                                      const IntegrateOptions& opt = {},
                                      const StateEvent& stop = {}) {
    OdeRhs rhs = [&](double t, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        const SpacecraftState s = unpack_time_state(x);
        const ControlInput c = law(s, t);
        const double u[4] = {c.thrust, c.dir[0], c.dir[1], c.dir[2]};
        dx.resize(7);
        mee_rhs_time(t, x.data(), u, consts, dx.data());
    };
    OdeEvent ev;
    if (stop) ev = [&](double t, const Eigen::VectorXd& x) { return stop(unpack_time_state(x), t); };
    const OdeResult r = integrate_dp54(rhs, t0, pack_time_state(s0), t1, opt, ev);

    PropagateResult out;
    out.event_hit = r.event_hit;
    for (const auto& smp : r.samples) {
        const SpacecraftState s = unpack_time_state(smp.x);
        out.traj.push_back(smp.t, smp.x, detail::control_to_vec(law(s, smp.t)));
    }
    return out;
}

/// Integrate the longitude-domain dynamics from L0 to L1
/// (state p,f,g,h,k,t,m; independent variable L).
inline PropagateResult propagate_longitude(const SpacecraftState& s0, double t0,
                                           const LongitudeControlLaw& law, double L1,
                                           const MeeDynamicsConstants& consts,
                                           const IntegrateOptions& opt = {},
                                           const StateEvent& stop = {}) {
    auto unpack = [](const Eigen::VectorXd& x, double L) {
        SpacecraftState s;
        s.mee = EquinoctialElements{x[0], x[1], x[2], x[3], x[4], L};
        s.mass = x[6];
        return s;
    };
    OdeRhs rhs = [&](double L, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        const SpacecraftState s = unpack(x, L);
        const ControlInput c = law(s, L);
        const double u[4] = {c.thrust, c.dir[0], c.dir[1], c.dir[2]};
        dx.resize(7);
        mee_rhs_longitude(L, x.data(), u, consts, dx.data());
    };
    OdeEvent ev;
    if (stop) ev = [&](double L, const Eigen::VectorXd& x) { return stop(unpack(x, L), L); };

    Eigen::VectorXd x0(7);
    x0 << s0.mee.p, s0.mee.f, s0.mee.g, s0.mee.h, s0.mee.k, t0, s0.mass;
    const OdeResult r = integrate_dp54(rhs, s0.mee.L, x0, L1, opt, ev);

    PropagateResult out;
    out.event_hit = r.event_hit;
    for (const auto& smp : r.samples) {
        const SpacecraftState s = unpack(smp.x, smp.t);
        out.traj.push_back(smp.t, smp.x, detail::control_to_vec(law(s, smp.t)));
    }
    return out;
}

}  // namespace ltoc
