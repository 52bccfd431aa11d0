#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ltoc/solver.hpp"

using namespace ltoc;

namespace {

// small dense helper: builds an NlpProblem from lambdas over VectorXd with a
// dense COO pattern
struct DenseNlp {
    NlpProblem p;

    DenseNlp(int nvars, int ncons) {
        p.num_vars = nvars;
        p.num_cons = ncons;
        p.x_lower = Eigen::VectorXd::Constant(nvars, -1e19);
        p.x_upper = Eigen::VectorXd::Constant(nvars, 1e19);
        p.c_lower = Eigen::VectorXd::Zero(ncons);
        p.c_upper = Eigen::VectorXd::Zero(ncons);
        for (int r = 0; r < ncons; ++r)
            for (int c = 0; c < nvars; ++c) {
                p.jac_rows.push_back(r);
                p.jac_cols.push_back(c);
            }
        for (int i = 0; i < nvars; ++i)
            for (int j = 0; j <= i; ++j) {
                p.hess_rows.push_back(i);
                p.hess_cols.push_back(j);
            }
    }
};

}  // namespace

TEST_CASE("unconstrained quadratic: minimize (x-2)^2") {
    DenseNlp d(1, 0);
    d.p.x_lower[0] = -100.0;
    d.p.x_upper[0] = 100.0;
    d.p.objective = [](const Eigen::VectorXd& x) { return (x[0] - 2.0) * (x[0] - 2.0); };
    d.p.gradient = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
        g.resize(1);
        g[0] = 2.0 * (x[0] - 2.0);
    };
    d.p.constraints = [](const Eigen::VectorXd&, Eigen::VectorXd& c) { c.resize(0); };
    d.p.jacobian = [](const Eigen::VectorXd&, Eigen::VectorXd& v) { v.resize(0); };
    d.p.hessian = [](const Eigen::VectorXd&, double sf, const Eigen::VectorXd&,
                     Eigen::VectorXd& v) {
        v.resize(1);
        v[0] = 2.0 * sf;
    };
    Eigen::VectorXd x0(1);
    x0 << -5.0;
    const NlpSolution sol = solve(d.p, x0);
    REQUIRE(sol.status == SolveStatus::optimal);
    REQUIRE(sol.x[0] == Catch::Approx(2.0).margin(1e-6));
}

TEST_CASE("active bound: minimize -x subject to x <= 3") {
    DenseNlp d(1, 0);
    d.p.x_lower[0] = -5.0;
    d.p.x_upper[0] = 3.0;
    d.p.objective = [](const Eigen::VectorXd& x) { return -x[0]; };
    d.p.gradient = [](const Eigen::VectorXd&, Eigen::VectorXd& g) {
        g.resize(1);
        g[0] = -1.0;
    };
    d.p.constraints = [](const Eigen::VectorXd&, Eigen::VectorXd& c) { c.resize(0); };
    d.p.jacobian = [](const Eigen::VectorXd&, Eigen::VectorXd& v) { v.resize(0); };
    d.p.hessian = [](const Eigen::VectorXd&, double, const Eigen::VectorXd&, Eigen::VectorXd& v) {
        v.resize(1);
        v[0] = 0.0;
    };
    Eigen::VectorXd x0(1);
    x0 << 0.0;
    const NlpSolution sol = solve(d.p, x0);
    REQUIRE(sol.status == SolveStatus::optimal);
    REQUIRE(sol.x[0] == Catch::Approx(3.0).margin(1e-6));
    REQUIRE(sol.z_upper[0] == Catch::Approx(1.0).margin(1e-4));  // active bound multiplier
}

TEST_CASE("equality constrained: minimize x^2+y^2 subject to x+y=1") {
    DenseNlp d(2, 1);
    d.p.c_lower[0] = 1.0;
    d.p.c_upper[0] = 1.0;
    d.p.objective = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
    d.p.gradient = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) { g = 2.0 * x; };
    d.p.constraints = [](const Eigen::VectorXd& x, Eigen::VectorXd& c) {
        c.resize(1);
        c[0] = x[0] + x[1];
    };
    d.p.jacobian = [](const Eigen::VectorXd&, Eigen::VectorXd& v) {
        v.resize(2);
        v << 1.0, 1.0;
    };
    d.p.hessian = [](const Eigen::VectorXd&, double sf, const Eigen::VectorXd&,
                     Eigen::VectorXd& v) {
        v.resize(3);  // lower triangle (0,0),(1,0),(1,1)
        v << 2.0 * sf, 0.0, 2.0 * sf;
    };
    Eigen::VectorXd x0(2);
    x0 << 3.0, -7.0;
    const NlpSolution sol = solve(d.p, x0);
    REQUIRE(sol.status == SolveStatus::optimal);
    REQUIRE(sol.x[0] == Catch::Approx(0.5).margin(1e-7));
    REQUIRE(sol.x[1] == Catch::Approx(0.5).margin(1e-7));

    const KktReport rep = verify_kkt(d.p, sol);
    REQUIRE(rep.stationarity <= 10.0 * 1e-7);
    REQUIRE(rep.feasibility <= 10.0 * 1e-7);
    REQUIRE(rep.complementarity <= 10.0 * 1e-7);
}

TEST_CASE("inequality row via slack: x+y >= 1") {
    DenseNlp d(2, 1);
    d.p.c_lower[0] = 1.0;
    d.p.c_upper[0] = 1e19;
    d.p.objective = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
    d.p.gradient = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) { g = 2.0 * x; };
    d.p.constraints = [](const Eigen::VectorXd& x, Eigen::VectorXd& c) {
        c.resize(1);
        c[0] = x[0] + x[1];
    };
    d.p.jacobian = [](const Eigen::VectorXd&, Eigen::VectorXd& v) {
        v.resize(2);
        v << 1.0, 1.0;
    };
    d.p.hessian = [](const Eigen::VectorXd&, double sf, const Eigen::VectorXd&,
                     Eigen::VectorXd& v) {
        v.resize(3);
        v << 2.0 * sf, 0.0, 2.0 * sf;
    };
    Eigen::VectorXd x0(2);
    x0 << 0.0, 0.0;
    const NlpSolution sol = solve(d.p, x0);
    REQUIRE(sol.status == SolveStatus::optimal);
    REQUIRE(sol.x[0] == Catch::Approx(0.5).margin(1e-6));
    REQUIRE(sol.x[1] == Catch::Approx(0.5).margin(1e-6));
}

TEST_CASE("fixed variable is treated as a parameter") {
    DenseNlp d(2, 0);
    d.p.x_lower << 1.5, -10.0;
    d.p.x_upper << 1.5, 10.0;
    d.p.objective = [](const Eigen::VectorXd& x) {
        return (x[0] - 2.0) * (x[0] - 2.0) + (x[1] - x[0]) * (x[1] - x[0]);
    };
    d.p.gradient = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
        g.resize(2);
        g[0] = 2.0 * (x[0] - 2.0) - 2.0 * (x[1] - x[0]);
        g[1] = 2.0 * (x[1] - x[0]);
    };
    d.p.constraints = [](const Eigen::VectorXd&, Eigen::VectorXd& c) { c.resize(0); };
    d.p.jacobian = [](const Eigen::VectorXd&, Eigen::VectorXd& v) { v.resize(0); };
    d.p.hessian = [](const Eigen::VectorXd&, double sf, const Eigen::VectorXd&,
                     Eigen::VectorXd& v) {
        v.resize(3);
        v << 4.0 * sf, -2.0 * sf, 2.0 * sf;
    };
    Eigen::VectorXd x0(2);
    x0 << 0.0, 0.0;
    const NlpSolution sol = solve(d.p, x0);
    REQUIRE(sol.status == SolveStatus::optimal);
    REQUIRE(sol.x[0] == 1.5);  // stays exactly at the pinned value
    REQUIRE(sol.x[1] == Catch::Approx(1.5).margin(1e-6));
}

TEST_CASE("infeasible constraints detected") {
    DenseNlp d(1, 2);
    // x = 0 and x = 3 simultaneously
    d.p.c_lower << 0.0, 3.0;
    d.p.c_upper << 0.0, 3.0;
    d.p.x_lower[0] = -10.0;
    d.p.x_upper[0] = 10.0;
    d.p.objective = [](const Eigen::VectorXd&) { return 0.0; };
    d.p.gradient = [](const Eigen::VectorXd&, Eigen::VectorXd& g) {
        g.resize(1);
        g.setZero();
    };
    d.p.constraints = [](const Eigen::VectorXd& x, Eigen::VectorXd& c) {
        c.resize(2);
        c << x[0], x[0];
    };
    d.p.jacobian = [](const Eigen::VectorXd&, Eigen::VectorXd& v) {
        v.resize(2);
        v << 1.0, 1.0;
    };
    d.p.hessian = [](const Eigen::VectorXd&, double, const Eigen::VectorXd&, Eigen::VectorXd& v) {
        v.resize(1);
        v[0] = 0.0;
    };
    Eigen::VectorXd x0(1);
    x0 << 1.0;
    SolverOptions opts;
    opts.max_iterations = 100;
    const NlpSolution sol = solve(d.p, x0, opts);
    REQUIRE(sol.status != SolveStatus::optimal);
    REQUIRE(sol.feasibility > 1e-3);
}

TEST_CASE("deterministic: identical inputs give identical results") {
    auto build = []() {
        DenseNlp d(2, 1);
        d.p.c_lower[0] = 1.0;
        d.p.c_upper[0] = 1.0;
        d.p.objective = [](const Eigen::VectorXd& x) {
            return std::pow(x[0] - 0.3, 4) + x[1] * x[1];
        };
        d.p.gradient = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
            g.resize(2);
            g[0] = 4.0 * std::pow(x[0] - 0.3, 3);
            g[1] = 2.0 * x[1];
        };
        d.p.constraints = [](const Eigen::VectorXd& x, Eigen::VectorXd& c) {
            c.resize(1);
            c[0] = x[0] * x[0] + x[1];
        };
        d.p.jacobian = [](const Eigen::VectorXd& x, Eigen::VectorXd& v) {
            v.resize(2);
            v << 2.0 * x[0], 1.0;
        };
        d.p.hessian = [](const Eigen::VectorXd& x, double sf, const Eigen::VectorXd& lam,
                         Eigen::VectorXd& v) {
            v.resize(3);
            v << 12.0 * sf * std::pow(x[0] - 0.3, 2) + 2.0 * lam[0], 0.0, 2.0 * sf;
        };
        return d;
    };
    Eigen::VectorXd x0(2);
    x0 << 0.7, 0.1;
    DenseNlp a = build();
    DenseNlp b = build();
    const NlpSolution sa = solve(a.p, x0);
    const NlpSolution sb = solve(b.p, x0);
    REQUIRE(sa.status == SolveStatus::optimal);
    REQUIRE(sa.iterations == sb.iterations);
    REQUIRE(sa.x == sb.x);  // bitwise identical
    REQUIRE(sa.objective == sb.objective);
}
