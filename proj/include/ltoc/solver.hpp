// Reference NLP backend: a sparse primal-dual interior-point method with
// an l1-penalty line search, inertia-corrected LDLT factorization of the
// regularized KKT system, and a monotone barrier-parameter schedule.
//
// General form handled:
//     min f(x)  s.t.  c_lower <= c(x) <= c_upper,  x_lower <= x <= x_upper
// Inequality rows receive slack variables internally; variables with
// equal bounds are eliminated (treated as parameters). Constraint rows
// are scaled by the inverse of their start-point Jacobian row norms,
// clamped to [1e-2, 1e2].

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include <Eigen/SparseCholesky>

#include "ltoc/nlp.hpp"

namespace ltoc {

struct KktReport {
    double stationarity = 0.0;
    double feasibility = 0.0;
    double complementarity = 0.0;
};

/// Recompute first-order optimality from a returned solution,
/// independently of the solver internals.
inline KktReport verify_kkt(const NlpProblem& nlp, const NlpSolution& sol) {
    KktReport rep;
    Eigen::VectorXd grad(nlp.num_vars);
    nlp.gradient(sol.x, grad);
    Eigen::VectorXd jval(static_cast<Eigen::Index>(nlp.jac_rows.size()));
    nlp.jacobian(sol.x, jval);
    Eigen::VectorXd stat = grad - sol.z_lower + sol.z_upper;
    for (std::size_t k = 0; k < nlp.jac_rows.size(); ++k)
        stat[nlp.jac_cols[k]] += jval[static_cast<Eigen::Index>(k)] * sol.lambda[nlp.jac_rows[k]];
    rep.stationarity = stat.cwiseAbs().maxCoeff();

    Eigen::VectorXd c(nlp.num_cons);
    nlp.constraints(sol.x, c);
    for (int i = 0; i < nlp.num_cons; ++i) {
        rep.feasibility = std::max(rep.feasibility, nlp.c_lower[i] - c[i]);
        rep.feasibility = std::max(rep.feasibility, c[i] - nlp.c_upper[i]);
    }
    for (int i = 0; i < nlp.num_vars; ++i) {
        rep.feasibility = std::max(rep.feasibility, nlp.x_lower[i] - sol.x[i]);
        rep.feasibility = std::max(rep.feasibility, sol.x[i] - nlp.x_upper[i]);
        if (std::isfinite(nlp.x_lower[i]))
            rep.complementarity =
                std::max(rep.complementarity, sol.z_lower[i] * (sol.x[i] - nlp.x_lower[i]));
        if (std::isfinite(nlp.x_upper[i]))
            rep.complementarity =
                std::max(rep.complementarity, sol.z_upper[i] * (nlp.x_upper[i] - sol.x[i]));
    }
    return rep;
}

class InteriorPointSolver : public SolverBackend {
  public:
    SolverCapabilities capabilities() const override { return {true, true}; }

    NlpSolution solve(const NlpProblem& nlp, const Eigen::VectorXd& start,
                      const SolverOptions& opts) override {
        Impl impl(nlp, opts);
        return impl.run(start);
    }

  private:
    static constexpr double kInf = 1e19;

    struct Impl {
        const NlpProblem& nlp;
        SolverOptions opts;
        std::chrono::steady_clock::time_point t_start;

        // variable elimination and slack bookkeeping
        std::vector<int> free_idx;          // internal var -> full var (first nfree entries)
        std::vector<int> col_map;           // full var -> internal var or -1
        Eigen::VectorXd pinned_value;       // full size; valid where pinned
        std::vector<bool> pinned;
        std::vector<int> slack_of_row;      // row -> slack internal index or -1
        int nfree = 0, nslack = 0, n = 0, m = 0;

        Eigen::VectorXd lb, ub;             // internal bounds, relaxed
        std::vector<bool> has_lb, has_ub;
        Eigen::VectorXd row_scale;

        // iterates
        Eigen::VectorXd x, lam, zl, zu;

        // caches at the current point
        double fval = 0.0;
        Eigen::VectorXd grad;               // internal, slack entries zero
        Eigen::VectorXd resid;              // scaled residual, length m
        Eigen::VectorXd jval;               // raw COO values from the callback

        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower> ldlt;
        bool pattern_analyzed = false;
        double delta_w_last = 0.0;

        Impl(const NlpProblem& p, const SolverOptions& o) : nlp(p), opts(o) {}

        static double linf(const Eigen::VectorXd& v) {
            return v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0;
        }

        Eigen::VectorXd full_x(const Eigen::VectorXd& xi) const {
            Eigen::VectorXd xf = pinned_value;
            for (int i = 0; i < nfree; ++i) xf[free_idx[i]] = xi[i];
            return xf;
        }

        // ---- problem setup ------------------------------------------------

        void setup(const Eigen::VectorXd& start) {
            m = nlp.num_cons;
            pinned.assign(nlp.num_vars, false);
            pinned_value = Eigen::VectorXd::Zero(nlp.num_vars);
            col_map.assign(nlp.num_vars, -1);
            for (int i = 0; i < nlp.num_vars; ++i) {
                if (nlp.x_lower[i] == nlp.x_upper[i]) {
                    pinned[i] = true;
                    pinned_value[i] = nlp.x_lower[i];
                } else {
                    col_map[i] = nfree;
                    free_idx.push_back(i);
                    ++nfree;
                }
            }
            slack_of_row.assign(m, -1);
            for (int i = 0; i < m; ++i)
                if (nlp.c_lower[i] < nlp.c_upper[i]) slack_of_row[i] = nfree + nslack++;
            n = nfree + nslack;

            lb.resize(n);
            ub.resize(n);
            has_lb.assign(n, false);
            has_ub.assign(n, false);
            for (int i = 0; i < nfree; ++i) {
                lb[i] = nlp.x_lower[free_idx[i]];
                ub[i] = nlp.x_upper[free_idx[i]];
            }
            for (int r = 0; r < m; ++r) {
                if (slack_of_row[r] < 0) continue;
                lb[slack_of_row[r]] = nlp.c_lower[r];
                ub[slack_of_row[r]] = nlp.c_upper[r];
            }
            const double relax = 1e-8;
            for (int i = 0; i < n; ++i) {
                has_lb[i] = lb[i] > -kInf;
                has_ub[i] = ub[i] < kInf;
                if (has_lb[i]) lb[i] -= relax * std::max(1.0, std::abs(lb[i]));
                if (has_ub[i]) ub[i] += relax * std::max(1.0, std::abs(ub[i]));
            }

            // start point: clip into bounds, push into the interior
            x.resize(n);
            for (int i = 0; i < nfree; ++i) x[i] = start[free_idx[i]];
            {
                Eigen::VectorXd c0(m);
                nlp.constraints(full_x(x), c0);
                for (int r = 0; r < m; ++r)
                    if (slack_of_row[r] >= 0) x[slack_of_row[r]] = c0[r];
            }
            const double kappa = 1e-2;
            for (int i = 0; i < n; ++i) {
                if (has_lb[i] && has_ub[i]) {
                    const double pl = std::min(kappa * std::max(1.0, std::abs(lb[i])),
                                               kappa * (ub[i] - lb[i]));
                    const double pu = std::min(kappa * std::max(1.0, std::abs(ub[i])),
                                               kappa * (ub[i] - lb[i]));
                    x[i] = std::clamp(x[i], lb[i] + pl, ub[i] - pu);
                } else if (has_lb[i]) {
                    x[i] = std::max(x[i], lb[i] + kappa * std::max(1.0, std::abs(lb[i])));
                } else if (has_ub[i]) {
                    x[i] = std::min(x[i], ub[i] - kappa * std::max(1.0, std::abs(ub[i])));
                }
            }

            // row scaling from the start-point Jacobian
            row_scale = Eigen::VectorXd::Ones(m);
            if (opts.row_scaling) {
                Eigen::VectorXd v(static_cast<Eigen::Index>(nlp.jac_rows.size()));
                nlp.jacobian(full_x(x), v);
                Eigen::VectorXd norms = Eigen::VectorXd::Zero(m);
                for (std::size_t k = 0; k < nlp.jac_rows.size(); ++k)
                    norms[nlp.jac_rows[k]] = std::max(
                        norms[nlp.jac_rows[k]], std::abs(v[static_cast<Eigen::Index>(k)]));
                for (int r = 0; r < m; ++r)
                    row_scale[r] = 1.0 / std::clamp(std::max(norms[r], 1e-12), 1e-2, 1e2);
            }

            lam = Eigen::VectorXd::Zero(m);
            zl = Eigen::VectorXd::Zero(n);
            zu = Eigen::VectorXd::Zero(n);
            for (int i = 0; i < n; ++i) {
                if (has_lb[i]) zl[i] = std::min(opts.mu_init / (x[i] - lb[i]), 1e8);
                if (has_ub[i]) zu[i] = std::min(opts.mu_init / (ub[i] - x[i]), 1e8);
            }
        }

        // ---- evaluation ---------------------------------------------------

        void eval_residual(const Eigen::VectorXd& xi, Eigen::VectorXd& out) const {
            Eigen::VectorXd c(m);
            nlp.constraints(full_x(xi), c);
            out.resize(m);
            for (int r = 0; r < m; ++r) {
                const double target = (slack_of_row[r] < 0) ? nlp.c_lower[r] : xi[slack_of_row[r]];
                out[r] = row_scale[r] * (c[r] - target);
            }
        }

        void eval_point() {
            const Eigen::VectorXd xf = full_x(x);
            fval = nlp.objective(xf);
            Eigen::VectorXd gfull(nlp.num_vars);
            nlp.gradient(xf, gfull);
            grad = Eigen::VectorXd::Zero(n);
            for (int i = 0; i < nfree; ++i) grad[i] = gfull[free_idx[i]];
            eval_residual(x, resid);
            jval.resize(static_cast<Eigen::Index>(nlp.jac_rows.size()));
            nlp.jacobian(xf, jval);
        }

        // J^T * y in internal coordinates (including slack columns)
        Eigen::VectorXd jac_transpose_times(const Eigen::VectorXd& y) const {
            Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
            for (std::size_t kk = 0; kk < nlp.jac_rows.size(); ++kk) {
                const int r = nlp.jac_rows[kk];
                const int cfull = nlp.jac_cols[kk];
                const int ci = col_map[cfull];
                if (ci >= 0) out[ci] += row_scale[r] * jval[static_cast<Eigen::Index>(kk)] * y[r];
            }
            for (int r = 0; r < m; ++r)
                if (slack_of_row[r] >= 0) out[slack_of_row[r]] -= row_scale[r] * y[r];
            return out;
        }

        // ---- optimality error ----------------------------------------------

        double error(double mu) const {
            Eigen::VectorXd stat = grad + jac_transpose_times(lam) - zl + zu;
            const double zsum = zl.lpNorm<1>() + zu.lpNorm<1>();
            int nb = 0;
            for (int i = 0; i < n; ++i) nb += (has_lb[i] ? 1 : 0) + (has_ub[i] ? 1 : 0);
            const double smax = 100.0;
            const double sd =
                std::max(smax, (lam.lpNorm<1>() + zsum) / std::max(1, m + nb)) / smax;
            const double sc = std::max(smax, zsum / std::max(1, nb)) / smax;

            double comp = 0.0;
            for (int i = 0; i < n; ++i) {
                if (has_lb[i]) comp = std::max(comp, std::abs((x[i] - lb[i]) * zl[i] - mu));
                if (has_ub[i]) comp = std::max(comp, std::abs((ub[i] - x[i]) * zu[i] - mu));
            }
            const double feas = (m > 0) ? resid.cwiseAbs().maxCoeff() : 0.0;
            return std::max({linf(stat) / sd, feas, comp / sc});
        }

        // ---- barrier merit --------------------------------------------------

        std::optional<double> barrier_objective(const Eigen::VectorXd& xi, double mu) const {
            double phi;
            try {
                phi = nlp.objective(full_x(xi));
            } catch (...) {
                return std::nullopt;
            }
            for (int i = 0; i < n; ++i) {
                if (has_lb[i]) {
                    const double d = xi[i] - lb[i];
                    if (d <= 0.0) return std::nullopt;
                    phi -= mu * std::log(d);
                }
                if (has_ub[i]) {
                    const double d = ub[i] - xi[i];
                    if (d <= 0.0) return std::nullopt;
                    phi -= mu * std::log(d);
                }
            }
            return phi;
        }

        std::optional<double> merit(const Eigen::VectorXd& xi, double mu, double nu,
                                    double* theta_out = nullptr) const {
            const auto phi = barrier_objective(xi, mu);
            if (!phi) return std::nullopt;
            Eigen::VectorXd r;
            try {
                eval_residual(xi, r);
            } catch (...) {
                return std::nullopt;
            }
            if (!r.allFinite() || !std::isfinite(*phi)) return std::nullopt;
            const double theta = r.lpNorm<1>();
            if (theta_out) *theta_out = theta;
            return *phi + nu * theta;
        }

        // ---- KKT system ------------------------------------------------------

        bool factorize(double mu, double* delta_w_used) {
            // Hessian of the Lagrangian in full coordinates
            Eigen::VectorXd lam_full(m);
            for (int r = 0; r < m; ++r) lam_full[r] = row_scale[r] * lam[r];
            Eigen::VectorXd hval(static_cast<Eigen::Index>(nlp.hess_rows.size()));
            nlp.hessian(full_x(x), 1.0, lam_full, hval);

            std::vector<Eigen::Triplet<double>> trip;
            trip.reserve(nlp.hess_rows.size() + nlp.jac_rows.size() + n + m + m);
            for (std::size_t kk = 0; kk < nlp.hess_rows.size(); ++kk) {
                const int i = col_map[nlp.hess_rows[kk]];
                const int j = col_map[nlp.hess_cols[kk]];
                if (i < 0 || j < 0) continue;
                trip.emplace_back(std::max(i, j), std::min(i, j),
                                  hval[static_cast<Eigen::Index>(kk)]);
            }
            for (std::size_t kk = 0; kk < nlp.jac_rows.size(); ++kk) {
                const int r = nlp.jac_rows[kk];
                const int ci = col_map[nlp.jac_cols[kk]];
                if (ci >= 0)
                    trip.emplace_back(n + r, ci,
                                      row_scale[r] * jval[static_cast<Eigen::Index>(kk)]);
            }
            for (int r = 0; r < m; ++r)
                if (slack_of_row[r] >= 0)
                    trip.emplace_back(n + r, slack_of_row[r], -row_scale[r]);

            const double delta_c = 1e-11;
            for (int r = 0; r < m; ++r) trip.emplace_back(n + r, n + r, -delta_c);

            // barrier diagonal placeholder; filled per delta_w attempt below
            Eigen::VectorXd sigma = Eigen::VectorXd::Zero(n);
            for (int i = 0; i < n; ++i) {
                if (has_lb[i]) sigma[i] += zl[i] / (x[i] - lb[i]);
                if (has_ub[i]) sigma[i] += zu[i] / (ub[i] - x[i]);
            }
            (void)mu;

            double delta_w = 0.0;
            for (int attempt = 0; attempt < 40; ++attempt) {
                std::vector<Eigen::Triplet<double>> all = trip;
                for (int i = 0; i < n; ++i)
                    all.emplace_back(i, i, sigma[i] + delta_w);
                Eigen::SparseMatrix<double> K(n + m, n + m);
                K.setFromTriplets(all.begin(), all.end());
                if (!pattern_analyzed) {
                    ldlt.analyzePattern(K);
                    pattern_analyzed = true;
                }
                ldlt.factorize(K);
                bool ok = (ldlt.info() == Eigen::Success);
                if (ok) {
                    int neg = 0;
                    bool degenerate = false;
                    const auto& D = ldlt.vectorD();
                    for (Eigen::Index i = 0; i < D.size(); ++i) {
                        if (!std::isfinite(D[i]) || std::abs(D[i]) < 1e-300) degenerate = true;
                        if (D[i] < 0.0) ++neg;
                    }
                    ok = !degenerate && neg == m;
                }
                if (ok) {
                    delta_w_last = delta_w;
                    *delta_w_used = delta_w;
                    return true;
                }
                if (delta_w == 0.0)
                    delta_w = (delta_w_last == 0.0) ? 1e-4 : std::max(1e-20, delta_w_last / 3.0);
                else
                    delta_w *= 8.0;
                if (delta_w > 1e20) break;
            }
            return false;
        }

        double fraction_to_boundary_x(const Eigen::VectorXd& xi, const Eigen::VectorXd& dx,
                                      double tau) const {
            double a = 1.0;
            for (int i = 0; i < n; ++i) {
                if (has_lb[i] && dx[i] < 0.0)
                    a = std::min(a, -tau * (xi[i] - lb[i]) / dx[i]);
                if (has_ub[i] && dx[i] > 0.0)
                    a = std::min(a, tau * (ub[i] - xi[i]) / dx[i]);
            }
            return a;
        }

        // ---- main loop --------------------------------------------------------

        NlpSolution run(const Eigen::VectorXd& start) {
            NlpSolution sol;
            t_start = std::chrono::steady_clock::now();
            try {
                setup(start);
                eval_point();
            } catch (const std::exception& e) {
                sol.status = SolveStatus::error;
                sol.message = std::string("evaluation failed at start point: ") + e.what();
                sol.x = start;
                return sol;
            }

            const double tol = opts.tolerance;
            double mu = opts.mu_init;
            const double mu_min = tol / 11.0;
            double nu = 1.0;
            int iter = 0;
            int stalls = 0;
            std::string stop_reason = "max iterations";

            while (iter < opts.max_iterations) {
                if (opts.time_budget_s > 0.0) {
                    const double elapsed =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                            .count();
                    if (elapsed > opts.time_budget_s) {
                        stop_reason = "time budget exhausted";
                        break;
                    }
                }
                const double e0 = error(0.0);
                if (e0 <= tol) {
                    stop_reason = "optimal";
                    break;
                }
                if (error(mu) <= 10.0 * mu && mu > mu_min) {
                    mu = std::max(mu_min, std::min(0.2 * mu, std::pow(mu, 1.5)));
                    nu = std::max(1.0, linf(lam) * 1.1);
                    continue;
                }

                double delta_w = 0.0;
                if (!factorize(mu, &delta_w)) {
                    stop_reason = "KKT factorization failed";
                    break;
                }

                // primal-dual right-hand side
                Eigen::VectorXd rhs(n + m);
                {
                    Eigen::VectorXd gphi = grad + jac_transpose_times(lam);
                    for (int i = 0; i < n; ++i) {
                        if (has_lb[i]) gphi[i] -= mu / (x[i] - lb[i]);
                        if (has_ub[i]) gphi[i] += mu / (ub[i] - x[i]);
                    }
                    rhs.head(n) = -gphi;
                    rhs.tail(m) = -resid;
                }
                const Eigen::VectorXd sol_vec = ldlt.solve(rhs);
                const Eigen::VectorXd dx = sol_vec.head(n);
                const Eigen::VectorXd dlam = sol_vec.tail(m);

                Eigen::VectorXd dzl = Eigen::VectorXd::Zero(n), dzu = Eigen::VectorXd::Zero(n);
                for (int i = 0; i < n; ++i) {
                    if (has_lb[i])
                        dzl[i] = mu / (x[i] - lb[i]) - zl[i] - zl[i] / (x[i] - lb[i]) * dx[i];
                    if (has_ub[i])
                        dzu[i] = mu / (ub[i] - x[i]) - zu[i] + zu[i] / (ub[i] - x[i]) * dx[i];
                }

                const double tau = std::max(0.99, 1.0 - mu);
                const double amax = fraction_to_boundary_x(x, dx, tau);
                double az = 1.0;
                for (int i = 0; i < n; ++i) {
                    if (has_lb[i] && dzl[i] < 0.0) az = std::min(az, -tau * zl[i] / dzl[i]);
                    if (has_ub[i] && dzu[i] < 0.0) az = std::min(az, -tau * zu[i] / dzu[i]);
                }

                // l1 merit line search
                nu = std::max(nu, linf(lam + dlam) * 1.1 + 1e-4);
                const double theta0 = resid.lpNorm<1>();
                const double merit0 = *merit(x, mu, nu);
                Eigen::VectorXd gphi = grad;
                for (int i = 0; i < n; ++i) {
                    if (has_lb[i]) gphi[i] -= mu / (x[i] - lb[i]);
                    if (has_ub[i]) gphi[i] += mu / (ub[i] - x[i]);
                }
                const double dmerit = gphi.dot(dx) - nu * theta0;

                double alpha = amax;
                bool accepted = false;
                for (int ls = 0; ls < 40 && alpha > 1e-14; ++ls, alpha *= 0.5) {
                    const Eigen::VectorXd xt = x + alpha * dx;
                    double theta_t = 0.0;
                    const auto mt = merit(xt, mu, nu, &theta_t);
                    if (mt && *mt <= merit0 + 1e-4 * alpha * std::min(dmerit, 0.0)) {
                        x = xt;
                        accepted = true;
                        break;
                    }
                    // one second-order correction on the first rejection
                    if (ls == 0 && mt && theta_t >= theta0) {
                        Eigen::VectorXd rt;
                        try {
                            eval_residual(xt, rt);
                        } catch (...) {
                            continue;
                        }
                        Eigen::VectorXd rhs2(n + m);
                        rhs2.setZero();
                        rhs2.tail(m) = -(alpha * resid + rt);
                        const Eigen::VectorXd cor = ldlt.solve(rhs2);
                        const Eigen::VectorXd dxc = cor.head(n);
                        const double ac = fraction_to_boundary_x(xt, dxc, tau);
                        const Eigen::VectorXd xt2 = xt + ac * dxc;
                        const auto mt2 = merit(xt2, mu, nu);
                        if (mt2 && *mt2 <= merit0 + 1e-4 * alpha * std::min(dmerit, 0.0)) {
                            x = xt2;
                            accepted = true;
                            break;
                        }
                    }
                }

                if (!accepted) {
                    // tiny fallback step along dx keeping strict interiority
                    if (++stalls >= 3) {
                        stop_reason = "line search failed";
                        break;
                    }
                    const double a_tiny = std::min(1e-3, amax);
                    const auto mtiny = merit(x + a_tiny * dx, mu, nu);
                    if (mtiny) x = x + a_tiny * dx;
                    lam += a_tiny * dlam;
                    alpha = a_tiny;
                } else {
                    stalls = 0;
                    lam += alpha * dlam;
                }
                zl += az * dzl;
                zu += az * dzu;

                // keep bound duals compatible with the barrier (IPOPT's kappa_Sigma)
                const double ks = 1e10;
                for (int i = 0; i < n; ++i) {
                    if (has_lb[i]) {
                        const double d = x[i] - lb[i];
                        zl[i] = std::clamp(zl[i], mu / (ks * d), ks * mu / d);
                    }
                    if (has_ub[i]) {
                        const double d = ub[i] - x[i];
                        zu[i] = std::clamp(zu[i], mu / (ks * d), ks * mu / d);
                    }
                }

                try {
                    eval_point();
                } catch (const std::exception& e) {
                    sol.status = SolveStatus::error;
                    sol.message = std::string("evaluation failed: ") + e.what();
                    finalize(sol, iter);
                    return sol;
                }
                ++iter;
                if (opts.verbosity >= 1) {
                    std::ostringstream os;
                    os << "ipm iter " << iter << " mu " << mu << " f " << fval << " |r| "
                       << linf(resid) << " E0 " << error(0.0) << " alpha "
                       << alpha << " dw " << delta_w;
                    log_line(os.str());
                }
            }

            finalize(sol, iter);
            sol.message = stop_reason;
            const double e0 = error(0.0);
            const double feas = (m > 0) ? resid.cwiseAbs().maxCoeff() : 0.0;
            if (e0 <= tol)
                sol.status = SolveStatus::optimal;
            else if (iter >= opts.max_iterations)
                sol.status = SolveStatus::iteration_limit;
            else if (feas <= tol)
                sol.status = SolveStatus::feasible_only;
            else
                sol.status = SolveStatus::infeasible;
            return sol;
        }

        static void log_line(const std::string& s) { std::fputs((s + "\n").c_str(), stderr); }

        void finalize(NlpSolution& sol, int iter) {
            sol.x = full_x(x);
            sol.objective = nlp.objective(sol.x);
            sol.iterations = iter;
            sol.lambda.resize(m);
            for (int r = 0; r < m; ++r) sol.lambda[r] = row_scale[r] * lam[r];
            sol.z_lower = Eigen::VectorXd::Zero(nlp.num_vars);
            sol.z_upper = Eigen::VectorXd::Zero(nlp.num_vars);
            for (int i = 0; i < nfree; ++i) {
                sol.z_lower[free_idx[i]] = zl[i];
                sol.z_upper[free_idx[i]] = zu[i];
            }
            // stationarity residual absorbed by the duals of pinned variables
            {
                Eigen::VectorXd gfull(nlp.num_vars);
                nlp.gradient(sol.x, gfull);
                Eigen::VectorXd jv(static_cast<Eigen::Index>(nlp.jac_rows.size()));
                nlp.jacobian(sol.x, jv);
                Eigen::VectorXd statf = gfull;
                for (std::size_t kk = 0; kk < nlp.jac_rows.size(); ++kk)
                    statf[nlp.jac_cols[kk]] +=
                        jv[static_cast<Eigen::Index>(kk)] * sol.lambda[nlp.jac_rows[kk]];
                for (int i = 0; i < nlp.num_vars; ++i) {
                    if (!pinned[i]) continue;
                    sol.z_lower[i] = std::max(statf[i], 0.0);
                    sol.z_upper[i] = std::max(-statf[i], 0.0);
                }
            }
            sol.feasibility = (m > 0) ? resid.cwiseAbs().maxCoeff() : 0.0;
            Eigen::VectorXd stat = grad + jac_transpose_times(lam) - zl + zu;
            sol.stationarity = (n > 0) ? stat.cwiseAbs().maxCoeff() : 0.0;
        }
    };
};

/// Solve with the reference backend.
inline NlpSolution solve(const NlpProblem& nlp, const Eigen::VectorXd& start,
                         const SolverOptions& opts = {}) {
    InteriorPointSolver s;
    return s.solve(nlp, start, opts);
}

}  // namespace ltoc
