// Sparse NLP problem description, solution record and the solver backend
// contract. The transcription produces an NlpProblem; any backend
// honoring the contract can consume it.
//
//   minimize    f(x)
//   subject to  c_lower <= c(x) <= c_upper   (equality when lower == upper)
//               x_lower <= x   <= x_upper
//
// Jacobian and Lagrangian-Hessian sparsity is fixed coordinate (COO)
// format; duplicate entries are summed on assembly. The Hessian pattern
// covers the lower triangle of sigma_f * H(f) + sum_i lambda_i * H(c_i).

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace ltoc {

enum class ConstraintKind : std::uint8_t { defect, path, event, linkage, time_order, other };

struct NlpProblem {
    int num_vars = 0;
    int num_cons = 0;
    Eigen::VectorXd x_lower, x_upper;
    Eigen::VectorXd c_lower, c_upper;
    std::vector<ConstraintKind> row_kind;  // may be empty; diagnostic only

    std::function<double(const Eigen::VectorXd&)> objective;
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> gradient;
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> constraints;

    std::vector<int> jac_rows, jac_cols;
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> jacobian;

    std::vector<int> hess_rows, hess_cols;  // lower triangle (row >= col)
    std::function<void(const Eigen::VectorXd&, double sigma_f, const Eigen::VectorXd& lambda,
                       Eigen::VectorXd&)>
        hessian;
};

enum class SolveStatus { optimal, feasible_only, iteration_limit, infeasible, error };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::feasible_only: return "feasible-only";
        case SolveStatus::iteration_limit: return "iteration-limit";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::error: return "error";
    }
    return "?";
}

struct NlpSolution {
    Eigen::VectorXd x;
    double objective = 0.0;
    SolveStatus status = SolveStatus::error;
    Eigen::VectorXd lambda;             ///< constraint multipliers
    Eigen::VectorXd z_lower, z_upper;   ///< bound multipliers
    double feasibility = 0.0;           ///< max-norm of scaled constraint violation
    double stationarity = 0.0;
    int iterations = 0;
    std::string message;
};

struct SolverOptions {
    double tolerance = 1e-7;   ///< KKT / feasibility tolerance
    int max_iterations = 3000;
    bool row_scaling = true;
    int verbosity = 0;
    double mu_init = 0.1;
    double time_budget_s = 0.0;  ///< 0 = unlimited
};

struct SolverCapabilities {
    bool exact_hessian = false;
    bool sparse = false;
};

/// Backend contract: given a problem and a starting point (clipped into
/// bounds if outside), return a solution with one of the five statuses.
class SolverBackend {
  public:
    virtual ~SolverBackend() = default;
    virtual SolverCapabilities capabilities() const = 0;
    virtual NlpSolution solve(const NlpProblem& nlp, const Eigen::VectorXd& start,
                              const SolverOptions& opts) = 0;
};

/// Assemble a COO pattern + values into a sparse matrix (duplicates sum).
inline Eigen::SparseMatrix<double> assemble_sparse(int rows, int cols,
                                                   const std::vector<int>& ri,
                                                   const std::vector<int>& ci,
                                                   const Eigen::VectorXd& values) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(ri.size());
    for (std::size_t k = 0; k < ri.size(); ++k)
        trip.emplace_back(ri[k], ci[k], values[static_cast<Eigen::Index>(k)]);
    Eigen::SparseMatrix<double> m(rows, cols);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

}  // namespace ltoc
