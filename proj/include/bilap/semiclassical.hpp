#pragma once

#include "bilap/core.hpp"

namespace bilap {

double f_neumann(double a);

// throws at the pole (1-a)t^2 = 1
double g_neumann(double t, double a);

// arctan g and arctan(1/g), continuous through the pole
double arctan_g(double t, double a);
double arctan_inv_g(double t, double a);

// int_0^1 t^{d-2} arctan g(t,a) dt, or with arctan(1/g) when inverse is set
QuadResult neumann_integral(int d, double a, bool inverse = false);

double dirichlet_gamma_ratio(int d);

struct ExpansionCoefficients {
    int d = 0;
    BoundaryCondition bc;
    double c0 = 0;  // per unit volume
    double c1 = 0;  // per unit boundary measure
    double quadrature_error = 0;
};

ExpansionCoefficients expansion_coefficients(const BoundaryCondition& bc, int d);

// equivalent Neumann form built on arctan(1/g)
double neumann_c1_inverse_form(int d, double a);

// (2pi)^{-d} ( int_{|xi'|<1} arcsin|xi'|^2 - pi B_{d-1} ) by quadrature
QuadResult dirichlet_c1_quadrature(int d);

// signed factor multiplying C_d^2 B_{d-1}/(d B_d^{1-1/d}) |dOmega|/|Omega| (k/|Omega|)^{3/d}
double second_term_factor(const BoundaryCondition& bc, int d);

double predict_eigenvalue(const BoundaryCondition& bc, int d, const DomainSpec& dom, int k);
double predict_average(int d, const DomainSpec& dom, int k);
double weyl_leading(int d, const DomainSpec& dom, double k);

Spectrum predicted_spectrum(const BoundaryCondition& bc, const DomainSpec& dom, int count);

}  // namespace bilap
