#pragma once

#include <vector>

#include "bilap/core.hpp"

namespace bilap {

struct GammaRoot {
    int n = 0;
    double gamma = 0;
    double r = 0;  // defect |gamma - pi(n+1/2)|
    double lo = 0, hi = 0;
    bool asymptotic = false;
    int sign() const { return n % 2 == 1 ? 1 : -1; }
    double center() const { return kPi * (n + 0.5); }
};

// n-th nonnegative root of cos(g)cosh(g) = 1, gamma_0 = 0
GammaRoot solve_gamma(int n, double tol = 1e-12);

double defect(int n);

// |cos g cosh g - 1| / cosh g, evaluated without overflow
double gamma_residual(double g);

std::vector<BoundReport> proposition_bound_report(int n_max);

}  // namespace bilap
