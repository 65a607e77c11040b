#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bilap/error.hpp"

namespace bilap {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

double gamma_fn(double x);

struct DimensionalConstants {
    int d = 0;
    double B = 0, C = 0, A = 0, Atilde = 0, a = 0, b = 0, c = 0, M = 0;
};

DimensionalConstants dimensional_constants(int d);

// ---- boundary conditions -------------------------------------------------

enum class BcKind { Dirichlet, Navier, KuttlerSigillito, Neumann, Pair1D };

struct OneDPair {
    int i = 0, j = 1;
    bool operator==(const OneDPair&) const = default;
};

class BoundaryCondition {
public:
    static BoundaryCondition dirichlet();
    static BoundaryCondition navier(double a);
    static BoundaryCondition kuttler_sigillito(double a);
    static BoundaryCondition neumann(double a);
    static BoundaryCondition pair(int i, int j);
    static BoundaryCondition pair(OneDPair p) { return pair(p.i, p.j); }

    BcKind kind() const { return kind_; }
    double poisson_ratio() const { return a_; }
    OneDPair pair_indices() const;
    bool is_pair() const { return kind_ == BcKind::Pair1D; }

    // throws unless a lies in (-1/(d-1), 1] (1 only for Navier/KS)
    void validate(int d) const;
    bool is_limit_case() const;
    std::string name() const;

    bool operator==(const BoundaryCondition&) const = default;

private:
    BcKind kind_ = BcKind::Dirichlet;
    double a_ = 0.0;
    OneDPair p_{};
};

const std::vector<OneDPair>& all_pairs();

// ---- domains --------------------------------------------------------------

class DomainSpec {
public:
    static DomainSpec interval(double L);
    static DomainSpec rectangle(double Lx, double Ly);
    static DomainSpec square(double L) { return rectangle(L, L); }

    bool is_interval() const { return ly_ <= 0.0; }
    int dimension() const { return is_interval() ? 1 : 2; }
    double lx() const { return lx_; }
    double ly() const { return ly_; }
    double volume() const;
    double perimeter() const;
    double inradius() const;
    double tube_volume(double h) const;
    std::string name() const;

    bool operator==(const DomainSpec&) const = default;

private:
    double lx_ = 1.0, ly_ = 0.0;
};

// ---- spectra --------------------------------------------------------------

enum class SourceKind { Exact, FiniteDifference, Predicted };

struct SpectrumSource {
    SourceKind kind = SourceKind::Exact;
    int nx = 0, ny = 0;
    std::string tag() const;
};

class Spectrum {
public:
    Spectrum(std::vector<double> values, DomainSpec dom, BoundaryCondition bc, SpectrumSource src);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const DomainSpec& domain() const { return dom_; }
    const BoundaryCondition& bc() const { return bc_; }
    const SpectrumSource& source() const { return src_; }
    int kernel_dim() const { return kernel_dim_; }

private:
    std::vector<double> values_;
    DomainSpec dom_;
    BoundaryCondition bc_;
    SpectrumSource src_;
    int kernel_dim_ = 0;
};

// ---- reports ---------------------------------------------------------------

struct BoundReport {
    std::string check;
    std::string param1, param2;
    double lhs = 0, rhs = 0, margin = 0;
    bool holds = true;
    bool asserted = true;
    std::string ref;
    std::string note;
};

// lhs <= rhs, with margin = rhs - lhs; holds when margin >= -tol
BoundReport check_le(std::string check, std::string p1, std::string p2, double lhs, double rhs,
                     std::string ref, double tol = 0.0, bool asserted = true);

std::string fmt_num(double x);
std::string fmt_int(long long x);

// ---- numerics --------------------------------------------------------------

struct GaussRule {
    std::vector<double> x, w;
};
// n-point rule on [-1,1]
const GaussRule& gauss_legendre(int n);

double gauss_fixed(const std::function<double(double)>& f, double a, double b, int n = 20);

struct QuadResult {
    double value = 0, error = 0;
};
QuadResult gauss_adaptive(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                          int max_depth = 40);

// compensated sum over values in the given order
class NeumaierSum {
public:
    void add(double v);
    double value() const { return s_ + c_; }

private:
    double s_ = 0, c_ = 0;
};

}  // namespace bilap
