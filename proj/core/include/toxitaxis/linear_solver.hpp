#pragma once

// Matrix-free preconditioned conjugate gradients for the screened
// Neumann-Laplace systems the time stepper produces:
//
//   (sigma I - kappa lap_h) x = rhs,   sigma > 0, kappa >= 0.
//
// The operator is symmetric positive definite under the zero-flux closure.
// In 1D the matrix is tridiagonal and the preconditioner is its exact
// Cholesky-style factorization, so PCG converges in one or two iterations;
// in 2D plain CG is used.

#include <stdexcept>
#include <string>
#include <vector>

#include "toxitaxis/grid.hpp"

namespace toxitaxis {

struct SolveStats {
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
};

class LinearSolverError : public std::runtime_error {
  public:
    LinearSolverError(const std::string& msg, double rel_residual)
        : std::runtime_error(msg), rel_residual_(rel_residual) {}
    double rel_residual() const { return rel_residual_; }

  private:
    double rel_residual_;
};

class ScreenedPoissonSolver {
  public:
    explicit ScreenedPoissonSolver(const Grid& grid);

    void set_coefficients(double sigma, double kappa);

    // out = sigma x - kappa lap_h(x)
    void apply(const Field& x, Field& out) const;

    // PCG from the initial guess already stored in x. Runs at least one
    // iteration, stops once the residual 2-norm drops below
    // rel_tol * max(||rhs||, tiny) or stagnates at its roundoff floor.
    // With `strict`, failing the tolerance within the iteration cap throws
    // LinearSolverError carrying the final relative residual.
    SolveStats solve(const Field& rhs, Field& x, double rel_tol, int max_iter,
                     bool strict = false);

    double residual_norm(const Field& rhs, const Field& x) const;

  private:
    void precondition(const Field& r, Field& z) const;

    Grid grid_;
    double sigma_ = 1.0;
    double kappa_ = 0.0;
    // Tridiagonal factorization (1D only): forward-elimination multipliers
    // and pivots for the constant-coefficient Neumann matrix.
    std::vector<double> pivot_;
    std::vector<double> lower_;
    double offdiag_ = 0.0;
    bool use_tridiag_ = false;

    mutable Field residual_, direction_, operator_dir_, precond_;
};

}  // namespace toxitaxis
