#pragma once

#include <vector>

#include "bilap/core.hpp"

namespace bilap {

enum class ProfileKind { InscribedBall, Mollified };
enum class NormProvenance { ClosedForm, Quadrature };

struct TestFunctionProfile {
    ProfileKind kind = ProfileKind::InscribedBall;
    DomainSpec dom = DomainSpec::square(1.0);
    int d = 2;
    double r = 0;  // ball radius (InscribedBall)
    double h = 0;  // collar width (Mollified)
    int grid_res = 0;
    double l2_sq = 0, grad_l2_sq = 0, lap_l2_sq = 0, sup_sq = 1;
    double rho = 0;
    NormProvenance provenance = NormProvenance::ClosedForm;
    double est_rel_err = 0;
    // sampled sup norms of grad and Laplacian (Mollified only)
    double grad_sup = 0, lap_sup = 0;
    double min_value = 0, max_value = 1;

    double grad_ratio() const { return grad_l2_sq / l2_sq; }
    double lap_ratio() const { return lap_l2_sq / l2_sq; }
};

// which way quadrature error is pushed when a bound is evaluated
enum class Inflate { None, ForLowerBound, ForUpperBound };

TestFunctionProfile inscribed_ball_profile(const DomainSpec& dom);

// radial Gauss quadrature of the same norms, for validation
TestFunctionProfile inscribed_ball_profile_quadrature(const DomainSpec& dom);

TestFunctionProfile mollified_indicator_profile(const DomainSpec& dom, double h, int grid_res = 256);

// pointwise evaluation of the mollified profile on a rectangle: value, gradient, Laplacian
struct ProfileSample {
    double value = 0, gx = 0, gy = 0, lap = 0;
};
ProfileSample mollified_sample(const DomainSpec& dom, double h, double x, double y);

// unit-scale corner function F(u,v) of the d=2 bump and its derivatives
double corner_cdf(double u, double v);
double corner_fu(double u, double v);
double corner_fuu(double u, double v);

double avg_upper_bound(const TestFunctionProfile& p, int k, Inflate mode = Inflate::ForUpperBound);
double riesz_lower_bound(const TestFunctionProfile& p, double z, Inflate mode = Inflate::ForLowerBound);

struct PartitionBound {
    double weighted = 0, unweighted = 0;
};
PartitionBound partition_lower_bound(const TestFunctionProfile& p, double t, Inflate mode = Inflate::ForLowerBound);

double rough_bound(const DomainSpec& dom, int d, double k);

// stated threshold of the explicit bound and the one forced by h(k) <= inradius
double explicit_sum_stated_threshold(const DomainSpec& dom, int d);
double explicit_sum_h_threshold(const DomainSpec& dom, int d, double eps = 1.4142135623730951);
double explicit_sum_threshold(const DomainSpec& dom, int d, double eps = 1.4142135623730951);

double h_of_k(const DomainSpec& dom, int d, double k, double eps = 1.4142135623730951);

struct ExplicitSum {
    double main = 0, second = 0, remainder = 0;
    double h = 0, tube = 0, threshold = 0;
    double total() const { return main + second + remainder; }
};
ExplicitSum explicit_sum_bound(const DomainSpec& dom, int d, double k, double eps = 1.4142135623730951);

// second-term coefficient M_d |dOmega|/|Omega| C_d^{3/2}
double explicit_second_coefficient(const DomainSpec& dom, int d);

struct IndividualBounds {
    double lower = 0;  // for Lambda_k
    double upper = 0;  // for Lambda_{k+1}
    double weyl = 0;
    double envelope_constant = 0;
    double envelope = 0;  // envelope_constant * k^{7/(2d)}
};
IndividualBounds individual_bounds(const DomainSpec& dom, int d, double A, int k, double k0);

struct KrogerLaptev {
    double m_k = 0, S_k = 0, lo = 0, hi = 0;
    double next = 0;  // omega_{k+1}
    bool kl_holds = true;
    bool in_interval = true;
    double young_margin = 0;  // m_k(1-S_k) - (sqrt(next)-sqrt(m_k))^2
};
KrogerLaptev kroeger_laptev_refined(const Spectrum& spec, int d, int k);

struct YoungPair {
    double y = 0, bound = 0;
};
YoungPair young_refined(double p, double x);

struct NavierEnergy {
    double grad = 0, hessian = 0;
};

// prima and seconda; tol widens each check
std::vector<BoundReport> navier_cross_inequalities(const Spectrum& lap_dirichlet, const Spectrum& lap_neumann,
                                                   const std::vector<NavierEnergy>& energies, int n, int m, int N,
                                                   double tol_prima = 0, double tol_seconda = 0);

}  // namespace bilap
