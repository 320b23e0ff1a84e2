#pragma once

// Discrete spatial operators on cell-centered fields with zero-flux
// closure. All divergence-form operators are written in conservative
// face-flux form, so they annihilate constants and their discrete
// integral vanishes identically.

#include "toxitaxis/grid.hpp"

namespace toxitaxis {

// Power-law x^e with cheap paths for the exponents the model uses most.
class PowerLaw {
  public:
    explicit PowerLaw(double exponent);
    double exponent() const { return exponent_; }
    double operator()(double x) const;

  private:
    enum class Kind { zero, quarter, half, three_quarter, one, three_half, two, three, generic };
    double exponent_;
    Kind kind_;
};

// Second-order 3-point (1D) / 5-point (2D) Laplacian with mirrored ghosts.
void laplacian_neumann_into(const Field& phi, Field& out);
Field laplacian_neumann(const Field& phi);

// div(D(u) grad u) with D(s) = (1+s)^alpha; face diffusivity is the
// arithmetic mean of the adjacent cell values. Rejects negative u.
void div_nonlinear_diffusion_into(const Field& u, double alpha, Field& d_scratch, Field& out);
Field div_nonlinear_diffusion(const Field& u, double alpha);

// chi * div(S(u) grad v) with S(s) = s (1+s)^beta, donor-cell upwinding:
// the face value of S(u) is taken from the cell the mass leaves. Rejects
// negative u.
void div_chemotactic_flux_into(const Field& u, const Field& v, double beta, double chi,
                               Field& s_scratch, Field& out);
Field div_chemotactic_flux(const Field& u, const Field& v, double beta, double chi);

// Cell-volume-weighted midpoint sum.
double integrate(const Field& phi);
// Cell-volume inner product <a, b>.
double inner(const Field& a, const Field& b);
// Largest face-difference quotient max |phi_P - phi_Q| / h over interior
// faces; the discrete stand-in for the gradient sup norm.
double gradient_sup(const Field& phi);

}  // namespace toxitaxis
