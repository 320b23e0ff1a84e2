#include "toxitaxis/linear_solver.hpp"

#include <cmath>

#include "toxitaxis/operators.hpp"

namespace toxitaxis {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
    return static_cast<double>(s);
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

ScreenedPoissonSolver::ScreenedPoissonSolver(const Grid& grid)
    : grid_(grid),
      residual_(grid),
      direction_(grid),
      operator_dir_(grid),
      precond_(grid) {
    validate(grid);
    set_coefficients(1.0, 0.0);
}

void ScreenedPoissonSolver::set_coefficients(double sigma, double kappa) {
    if (!(sigma > 0.0) || !(kappa >= 0.0)) {
        throw std::invalid_argument("screened solver needs sigma > 0 and kappa >= 0");
    }
    sigma_ = sigma;
    kappa_ = kappa;
    use_tridiag_ = grid_.dim == 1 && kappa > 0.0;
    if (!use_tridiag_) return;

    const int n = grid_.cells[0];
    const double w = kappa_ / (grid_.h[0] * grid_.h[0]);
    offdiag_ = -w;
    pivot_.assign(n, 0.0);
    lower_.assign(n, 0.0);
    // Row i diagonal: sigma + w * (#interior faces of cell i).
    pivot_[0] = sigma_ + w;
    for (int i = 1; i < n; ++i) {
        const double diag = sigma_ + (i + 1 < n ? 2.0 * w : w);
        lower_[i] = offdiag_ / pivot_[i - 1];
        pivot_[i] = diag - lower_[i] * offdiag_;
    }
}

void ScreenedPoissonSolver::apply(const Field& x, Field& out) const {
    laplacian_neumann_into(x, out);
    const double* xv = x.values.data();
    double* ov = out.values.data();
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        ov[i] = sigma_ * xv[i] - kappa_ * ov[i];
    }
}

void ScreenedPoissonSolver::precondition(const Field& r, Field& z) const {
    if (!use_tridiag_) {
        z.values = r.values;
        return;
    }
    const int n = grid_.cells[0];
    const double* rv = r.values.data();
    double* zv = z.values.data();
    zv[0] = rv[0];
    for (int i = 1; i < n; ++i) zv[i] = rv[i] - lower_[i] * zv[i - 1];
    zv[n - 1] /= pivot_[n - 1];
    for (int i = n - 2; i >= 0; --i) zv[i] = (zv[i] - offdiag_ * zv[i + 1]) / pivot_[i];
}

double ScreenedPoissonSolver::residual_norm(const Field& rhs, const Field& x) const {
    Field ax(grid_);
    apply(x, ax);
    long double s = 0.0L;
    for (std::size_t i = 0; i < rhs.values.size(); ++i) {
        const double d = rhs.values[i] - ax.values[i];
        s += static_cast<long double>(d) * d;
    }
    return std::sqrt(static_cast<double>(s));
}

SolveStats ScreenedPoissonSolver::solve(const Field& rhs, Field& x, double rel_tol, int max_iter,
                                        bool strict) {
    if (x.values.size() != rhs.values.size()) x = Field(grid_);

    const double rhs_norm = norm2(rhs.values);
    const double tol_abs = rel_tol * std::max(rhs_norm, 1e-300);

    apply(x, residual_);
    for (std::size_t i = 0; i < rhs.values.size(); ++i) {
        residual_.values[i] = rhs.values[i] - residual_.values[i];
    }
    precondition(residual_, precond_);
    direction_.values = precond_.values;
    double rz = dot(residual_.values, precond_.values);
    double res = norm2(residual_.values);

    SolveStats stats;
    double best = res;
    int stalled = 0;
    while (stats.iterations < max_iter) {
        if (rz == 0.0) break;
        apply(direction_, operator_dir_);
        const double d_ad = dot(direction_.values, operator_dir_.values);
        if (!(d_ad > 0.0)) break;
        const double step = rz / d_ad;
        for (std::size_t i = 0; i < x.values.size(); ++i) {
            x.values[i] += step * direction_.values[i];
            residual_.values[i] -= step * operator_dir_.values[i];
        }
        ++stats.iterations;
        res = norm2(residual_.values);
        if (res <= tol_abs) break;
        // CG residual 2-norms grow through whole stretches of the
        // iteration on stiff spectra; only a long streak without a new
        // best marks the roundoff floor.
        if (res < best * (1.0 - 1e-12)) {
            best = res;
            stalled = 0;
        } else if (++stalled >= std::max(50, grid_.cell_count() / 8)) {
            break;
        }
        precondition(residual_, precond_);
        const double rz_next = dot(residual_.values, precond_.values);
        for (std::size_t i = 0; i < direction_.values.size(); ++i) {
            direction_.values[i] = precond_.values[i] + (rz_next / rz) * direction_.values[i];
        }
        rz = rz_next;
    }

    stats.rel_residual = rhs_norm > 0.0 ? res / rhs_norm : res;
    stats.converged = res <= tol_abs;
    if (strict && !stats.converged) {
        throw LinearSolverError("conjugate gradient failed to reach tolerance " +
                                    std::to_string(rel_tol) + " within " +
                                    std::to_string(max_iter) + " iterations",
                                stats.rel_residual);
    }
    return stats;
}

}  // namespace toxitaxis
