#include "toxitaxis/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace toxitaxis {

PowerLaw::PowerLaw(double exponent) : exponent_(exponent), kind_(Kind::generic) {
    if (exponent == 0.0) kind_ = Kind::zero;
    else if (exponent == 0.25) kind_ = Kind::quarter;
    else if (exponent == 0.5) kind_ = Kind::half;
    else if (exponent == 0.75) kind_ = Kind::three_quarter;
    else if (exponent == 1.0) kind_ = Kind::one;
    else if (exponent == 1.5) kind_ = Kind::three_half;
    else if (exponent == 2.0) kind_ = Kind::two;
    else if (exponent == 3.0) kind_ = Kind::three;
}

double PowerLaw::operator()(double x) const {
    switch (kind_) {
        case Kind::zero: return 1.0;
        case Kind::quarter: return std::sqrt(std::sqrt(x));
        case Kind::half: return std::sqrt(x);
        case Kind::three_quarter: {
            const double s = std::sqrt(x);
            return s * std::sqrt(s);
        }
        case Kind::one: return x;
        case Kind::three_half: return x * std::sqrt(x);
        case Kind::two: return x * x;
        case Kind::three: return x * x * x;
        case Kind::generic: return std::pow(x, exponent_);
    }
    return std::pow(x, exponent_);
}

namespace {

void check_shape(const Field& f, const char* what) {
    validate(f.grid);
    if (f.values.size() != static_cast<std::size_t>(f.grid.cell_count())) {
        throw std::invalid_argument(std::string(what) + ": field size does not match grid");
    }
}

void check_nonnegative(const Field& u, const char* what) {
    for (double v : u.values) {
        if (v < 0.0) throw std::invalid_argument(std::string(what) + ": negative species density");
    }
}

}  // namespace

void laplacian_neumann_into(const Field& phi, Field& out) {
    check_shape(phi, "laplacian_neumann");
    out.grid = phi.grid;
    out.values.resize(phi.values.size());
    const Grid& g = phi.grid;
    const int nx = g.cells[0], ny = g.cells[1];
    const double inv_hx2 = 1.0 / (g.h[0] * g.h[0]);
    const double* p = phi.values.data();
    double* o = out.values.data();

    for (int j = 0; j < ny; ++j) {
        const double* row = p + static_cast<std::size_t>(j) * nx;
        double* orow = o + static_cast<std::size_t>(j) * nx;
        double flux_left = 0.0;
        for (int i = 0; i < nx; ++i) {
            const double flux_right = (i + 1 < nx) ? (row[i + 1] - row[i]) : 0.0;
            orow[i] = (flux_right - flux_left) * inv_hx2;
            flux_left = flux_right;
        }
    }
    if (g.dim == 2) {
        const double inv_hy2 = 1.0 / (g.h[1] * g.h[1]);
        for (int i = 0; i < nx; ++i) {
            double flux_down = 0.0;
            for (int j = 0; j < ny; ++j) {
                const std::size_t c = static_cast<std::size_t>(j) * nx + i;
                const double flux_up = (j + 1 < ny) ? (p[c + nx] - p[c]) : 0.0;
                o[c] += (flux_up - flux_down) * inv_hy2;
                flux_down = flux_up;
            }
        }
    }
}

Field laplacian_neumann(const Field& phi) {
    Field out(phi.grid);
    laplacian_neumann_into(phi, out);
    return out;
}

void div_nonlinear_diffusion_into(const Field& u, double alpha, Field& d_scratch, Field& out) {
    check_shape(u, "div_nonlinear_diffusion");
    check_nonnegative(u, "div_nonlinear_diffusion");
    const Grid& g = u.grid;
    out.grid = g;
    out.values.resize(u.values.size());
    d_scratch.grid = g;
    d_scratch.values.resize(u.values.size());

    const PowerLaw pow_alpha(alpha);
    const double* uv = u.values.data();
    double* dv = d_scratch.values.data();
    const std::size_t n = u.values.size();
    for (std::size_t c = 0; c < n; ++c) dv[c] = pow_alpha(1.0 + uv[c]);

    const int nx = g.cells[0], ny = g.cells[1];
    const double inv_hx2 = 1.0 / (g.h[0] * g.h[0]);
    double* o = out.values.data();
    for (int j = 0; j < ny; ++j) {
        const std::size_t off = static_cast<std::size_t>(j) * nx;
        double flux_left = 0.0;
        for (int i = 0; i < nx; ++i) {
            double flux_right = 0.0;
            if (i + 1 < nx) {
                flux_right = 0.5 * (dv[off + i] + dv[off + i + 1]) * (uv[off + i + 1] - uv[off + i]);
            }
            o[off + i] = (flux_right - flux_left) * inv_hx2;
            flux_left = flux_right;
        }
    }
    if (g.dim == 2) {
        const double inv_hy2 = 1.0 / (g.h[1] * g.h[1]);
        for (int i = 0; i < nx; ++i) {
            double flux_down = 0.0;
            for (int j = 0; j < ny; ++j) {
                const std::size_t c = static_cast<std::size_t>(j) * nx + i;
                double flux_up = 0.0;
                if (j + 1 < ny) {
                    flux_up = 0.5 * (dv[c] + dv[c + nx]) * (uv[c + nx] - uv[c]);
                }
                o[c] += (flux_up - flux_down) * inv_hy2;
                flux_down = flux_up;
            }
        }
    }
}

Field div_nonlinear_diffusion(const Field& u, double alpha) {
    Field scratch, out;
    div_nonlinear_diffusion_into(u, alpha, scratch, out);
    return out;
}

void div_chemotactic_flux_into(const Field& u, const Field& v, double beta, double chi,
                               Field& s_scratch, Field& out) {
    check_shape(u, "div_chemotactic_flux");
    check_shape(v, "div_chemotactic_flux");
    if (!(u.grid == v.grid)) {
        throw std::invalid_argument("div_chemotactic_flux: u and v live on different grids");
    }
    check_nonnegative(u, "div_chemotactic_flux");
    const Grid& g = u.grid;
    out.grid = g;
    out.values.resize(u.values.size());
    s_scratch.grid = g;
    s_scratch.values.resize(u.values.size());

    const PowerLaw pow_beta(beta);
    const double* uv = u.values.data();
    const double* vv = v.values.data();
    double* sv = s_scratch.values.data();
    const std::size_t n = u.values.size();
    for (std::size_t c = 0; c < n; ++c) sv[c] = uv[c] * pow_beta(1.0 + uv[c]);

    // Face value G = chi * S(u_donor) * dv/h; the cell update is
    // (G_right - G_left)/h. The mass flux is -G, so for dv > 0 mass moves
    // toward lower v and the donor is the higher-v cell.
    const int nx = g.cells[0], ny = g.cells[1];
    const double inv_hx2 = chi / (g.h[0] * g.h[0]);
    double* o = out.values.data();
    for (int j = 0; j < ny; ++j) {
        const std::size_t off = static_cast<std::size_t>(j) * nx;
        double flux_left = 0.0;
        for (int i = 0; i < nx; ++i) {
            double flux_right = 0.0;
            if (i + 1 < nx) {
                const double dv = vv[off + i + 1] - vv[off + i];
                const double s_donor = dv > 0.0 ? sv[off + i + 1] : sv[off + i];
                flux_right = s_donor * dv;
            }
            o[off + i] = (flux_right - flux_left) * inv_hx2;
            flux_left = flux_right;
        }
    }
    if (g.dim == 2) {
        const double inv_hy2 = chi / (g.h[1] * g.h[1]);
        for (int i = 0; i < nx; ++i) {
            double flux_down = 0.0;
            for (int j = 0; j < ny; ++j) {
                const std::size_t c = static_cast<std::size_t>(j) * nx + i;
                double flux_up = 0.0;
                if (j + 1 < ny) {
                    const double dv = vv[c + nx] - vv[c];
                    const double s_donor = dv > 0.0 ? sv[c + nx] : sv[c];
                    flux_up = s_donor * dv;
                }
                o[c] += (flux_up - flux_down) * inv_hy2;
                flux_down = flux_up;
            }
        }
    }
}

Field div_chemotactic_flux(const Field& u, const Field& v, double beta, double chi) {
    Field scratch, out;
    div_chemotactic_flux_into(u, v, beta, chi, scratch, out);
    return out;
}

double integrate(const Field& phi) {
    check_shape(phi, "integrate");
    long double sum = 0.0L;
    for (double v : phi.values) sum += v;
    return static_cast<double>(sum) * phi.grid.cell_volume();
}

double inner(const Field& a, const Field& b) {
    check_shape(a, "inner");
    if (a.values.size() != b.values.size()) {
        throw std::invalid_argument("inner: size mismatch");
    }
    long double sum = 0.0L;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        sum += static_cast<long double>(a.values[i]) * b.values[i];
    }
    return static_cast<double>(sum) * a.grid.cell_volume();
}

double gradient_sup(const Field& phi) {
    check_shape(phi, "gradient_sup");
    const Grid& g = phi.grid;
    const int nx = g.cells[0], ny = g.cells[1];
    const double* p = phi.values.data();
    double m = 0.0;
    for (int j = 0; j < ny; ++j) {
        const std::size_t off = static_cast<std::size_t>(j) * nx;
        for (int i = 0; i + 1 < nx; ++i) {
            m = std::max(m, std::abs(p[off + i + 1] - p[off + i]) / g.h[0]);
        }
    }
    if (g.dim == 2) {
        for (int j = 0; j + 1 < ny; ++j) {
            const std::size_t off = static_cast<std::size_t>(j) * nx;
            for (int i = 0; i < nx; ++i) {
                m = std::max(m, std::abs(p[off + nx + i] - p[off + i]) / g.h[1]);
            }
        }
    }
    return m;
}

}  // namespace toxitaxis
