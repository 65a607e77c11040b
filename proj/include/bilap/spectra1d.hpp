#pragma once

#include <vector>

#include "bilap/core.hpp"
#include "bilap/roots1d.hpp"

namespace bilap {

inline constexpr int kMaxEigenfunctionIndex = 40;

// index of the frequency root behind the n-th eigenvalue, or -1 for pi-multiples
int root_index(OneDPair p, int n);

// n-th eigenvalue on [0,1]
double eigenvalue_1d(OneDPair p, int n);

Spectrum spectrum_1d(OneDPair p, int count, double L = 1.0);

enum class EigenForm { Beam, Sine, Cosine, Constant, Linear, Quadratic };

struct Eigenfunction1D {
    OneDPair pair;
    int n = 1;
    double A = 0;
    double gamma = 0;
    EigenForm form = EigenForm::Beam;
    // beam form: alpha_hat e^{g(x-1)} + beta e^{-g x} + cc cos(g x) + ss sin(g x)
    double alpha_hat = 0, beta = 0, cc = 0, ss = 0;
};

Eigenfunction1D make_eigenfunction(OneDPair p, int n);

// deriv in {0,1,2,3}
double eval_eigenfunction(const Eigenfunction1D& ef, double x, int deriv);

// any derivative order 0..4 (the fourth closes u'''' = Lambda u)
double eigenfunction_derivative(const Eigenfunction1D& ef, double x, int deriv);

// largest boundary-condition residual at x = 0 and x = 1
double boundary_residual(const Eigenfunction1D& ef);

std::vector<BoundReport> identity_check(int n_max);

}  // namespace bilap
