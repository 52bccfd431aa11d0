// Adaptive Dormand-Prince 5(4) integration with dense output and scalar
// event detection. Generic over the state dimension; the guess
// generators and the verification oracles drive it through the wrappers
// in propagate.hpp.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace ltoc {

using OdeRhs = std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;
using OdeEvent = std::function<double(double, const Eigen::VectorXd&)>;

struct IntegrateOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double event_tol = 1e-10;  ///< tolerance on the event-function value
    double max_step = 0.0;     ///< 0 = unlimited
    long max_steps = 2000000;
};

struct OdeSample {
    double t;
    Eigen::VectorXd x;
};

struct OdeResult {
    std::vector<OdeSample> samples;  ///< accepted steps, including t0 and the end point
    bool event_hit = false;
    double event_time = 0.0;
};

namespace detail {

// Dormand-Prince coefficients.
inline constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double kB5[7] = {35.0 / 384,      0.0,         500.0 / 1113, 125.0 / 192,
                                  -2187.0 / 6784, 11.0 / 84,   0.0};
inline constexpr double kB4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                                  -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
// Fourth-order continuous extension of the pair (stage-2 weight is zero).
inline constexpr double kD[7] = {-12715105075.0 / 11282082432.0,
                                 0.0,
                                 87487479700.0 / 32700410799.0,
                                 -10690763975.0 / 1880347072.0,
                                 701980252875.0 / 199316789632.0,
                                 -1453857185.0 / 822651844.0,
                                 69997945.0 / 29380423.0};

struct DenseStep {
    double t0 = 0.0, h = 0.0;
    Eigen::VectorXd x0;
    std::array<Eigen::VectorXd, 7> k;
    Eigen::VectorXd c2, c3, c4, c5;  // nested interpolant coefficients

    // called once per accepted step, after xnew is known
    void finalize(const Eigen::VectorXd& xnew) {
        c2 = xnew - x0;
        c3 = h * k[0] - c2;
        c4 = c2 - h * k[6] - c3;
        c5 = kD[0] * k[0] + kD[2] * k[2] + kD[3] * k[3] + kD[4] * k[4] + kD[5] * k[5] +
             kD[6] * k[6];
        c5 *= h;
    }

    Eigen::VectorXd eval(double t) const {
        const double s = (t - t0) / h;
        return x0 + s * (c2 + (1.0 - s) * (c3 + s * (c4 + (1.0 - s) * c5)));
    }
};

}  // namespace detail

/// Integrate dx/dt = rhs(t, x) from (t0, x0) to t_end (t_end > t0).
/// When an event function is supplied, integration stops at its first
/// sign change, located by bisection on the dense output.
inline OdeResult integrate_dp54(const OdeRhs& rhs, double t0, const Eigen::VectorXd& x0,
                                double t_end, const IntegrateOptions& opt = {},
                                const OdeEvent& event = {}) {
    if (!(t_end > t0)) throw std::invalid_argument("integrate_dp54: requires t_end > t0");
    const Eigen::Index n = x0.size();
    OdeResult res;
    res.samples.push_back({t0, x0});

    Eigen::VectorXd x = x0;
    double t = t0;
    detail::DenseStep dense;
    for (auto& kv : dense.k) kv.resize(n);
    Eigen::VectorXd xtmp(n), xnew(n), xerr(n);

    rhs(t, x, dense.k[0]);

    // initial step: crude second-derivative probe, then clamp
    double h;
    {
        const double d0 = x.cwiseAbs().maxCoeff() + 1.0;
        const double d1 = dense.k[0].cwiseAbs().maxCoeff() + 1e-12;
        h = 0.01 * d0 / d1;
        h = std::min(h, (t_end - t0) / 10.0);
        if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    }

    double e_prev = event ? event(t, x) : 0.0;
    if (event && std::abs(e_prev) <= opt.event_tol) {
        res.event_hit = true;
        res.event_time = t;
        return res;
    }

    long steps = 0;
    while (t < t_end) {
        if (++steps > opt.max_steps)
            throw std::runtime_error("integrate_dp54: step limit exceeded");
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            throw std::runtime_error("integrate_dp54: step size underflow");
        if (t + h > t_end) h = t_end - t;

        // k[0] = f(t, x) is maintained across rejected steps (FSAL on accept)
        for (int s = 1; s < 7; ++s) {
            xtmp = x;
            for (int j = 0; j < s; ++j) xtmp += (h * detail::kA[s][j]) * dense.k[j];
            rhs(t + detail::kC[s] * h, xtmp, dense.k[s]);
        }
        // stage 7 is evaluated at (t + h, x5); xtmp currently holds x5
        xnew = xtmp;
        xerr.setZero();
        for (int s = 0; s < 7; ++s) xerr += (h * (detail::kB5[s] - detail::kB4[s])) * dense.k[s];

        double err = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double sc =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(x[i]), std::abs(xnew[i]));
            const double q = xerr[i] / sc;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            dense.t0 = t;
            dense.h = h;
            dense.x0 = x;
            dense.finalize(xnew);

            const double t_next = t + h;
            if (event) {
                const double e_next = event(t_next, xnew);
                if (e_next == 0.0 || (e_prev < 0.0) != (e_next < 0.0)) {
                    // bisect on the dense output
                    double lo = t, hi = t_next, elo = e_prev;
                    double tm = hi;
                    Eigen::VectorXd xm = xnew;
                    for (int it = 0; it < 200; ++it) {
                        tm = 0.5 * (lo + hi);
                        xm = dense.eval(tm);
                        const double em = event(tm, xm);
                        if (std::abs(em) <= opt.event_tol) break;
                        if ((em < 0.0) == (elo < 0.0)) {
                            lo = tm;
                            elo = em;
                        } else {
                            hi = tm;
                        }
                    }
                    res.samples.push_back({tm, xm});
                    res.event_hit = true;
                    res.event_time = tm;
                    return res;
                }
                e_prev = e_next;
            }

            t = t_next;
            x = xnew;
            res.samples.push_back({t, x});
            dense.k[0] = dense.k[6];  // FSAL
        }

        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    }
    return res;
}

}  // namespace ltoc
