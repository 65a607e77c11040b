#pragma once

#include <vector>

#include "bilap/core.hpp"

namespace bilap {

struct RieszMeanPoint {
    double z = 0;
    double sigma = 1;
    double value = 0;
    int truncation_count = 0;
};

// sum_j (z - w_j)_+^sigma; exact 1D spectra are extended on demand
RieszMeanPoint riesz_mean(const Spectrum& spec, double z, double sigma);

// int_0^z N(t) dt, integrated step by step
double integrated_counting(const Spectrum& spec, double z);

int counting(const Spectrum& spec, double z);

struct TwoSided {
    double lower = 0, upper = 0;
};

TwoSided theorem_bounds_1d(OneDPair p, double z);

enum class Lattice { Integers, HalfIntegers };

struct LemmaTriple {
    double lhs = 0, mid = 0, rhs = 0;
};

LemmaTriple lemma_onedim_bounds(double R, Lattice variant);

double constant_c();
double constant_c_truncated(int n_terms);

std::vector<double> log_grid(double a, double b, int n);
std::vector<double> lin_grid(double a, double b, int n);

std::vector<double> default_fit_grid();
double second_term_fit(OneDPair p, const std::vector<double>& z_grid);

std::vector<BoundReport> riesz_report(OneDPair p, const std::vector<double>& z_grid);
std::vector<BoundReport> lemma_report(const std::vector<double>& R_grid);

}  // namespace bilap
