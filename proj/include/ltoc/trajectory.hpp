// Sampled trajectory container shared by the guess generators, the
// transcription and the reporting layer. `t` is the independent variable
// of whichever domain the trajectory lives in (time or true longitude).

#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace ltoc {

struct OcpTrajectory {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> x;
    std::vector<Eigen::VectorXd> u;

    std::size_t size() const { return t.size(); }
    bool empty() const { return t.empty(); }
    double duration() const { return t.empty() ? 0.0 : t.back() - t.front(); }

    void push_back(double ti, Eigen::VectorXd xi, Eigen::VectorXd ui) {
        t.push_back(ti);
        x.push_back(std::move(xi));
        u.push_back(std::move(ui));
    }

    /// Piecewise-linear interpolation of state and control at query point
    /// (clamped to the sampled range).
    void interpolate(double tq, Eigen::VectorXd& xq, Eigen::VectorXd& uq) const {
        if (empty()) throw std::logic_error("OcpTrajectory::interpolate: empty trajectory");
        if (tq <= t.front()) {
            xq = x.front();
            uq = u.front();
            return;
        }
        if (tq >= t.back()) {
            xq = x.back();
            uq = u.back();
            return;
        }
        const auto it = std::upper_bound(t.begin(), t.end(), tq);
        const std::size_t j = static_cast<std::size_t>(it - t.begin());
        const double t0 = t[j - 1], t1 = t[j];
        const double a = (t1 > t0) ? (tq - t0) / (t1 - t0) : 0.0;
        xq = (1.0 - a) * x[j - 1] + a * x[j];
        uq = (1.0 - a) * u[j - 1] + a * u[j];
    }
};

}  // namespace ltoc
