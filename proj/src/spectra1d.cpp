#include "bilap/spectra1d.hpp"

#include <algorithm>
#include <cmath>

namespace bilap {

namespace {

void require_pair(OneDPair p) {
    if (p.i < 0 || p.j > 3 || p.i >= p.j) fail(ErrorCode::InvalidArgument, "invalid 1D pair");
}

int kernel_count(OneDPair p) {
    if (p == OneDPair{2, 3}) return 2;
    if (p == OneDPair{0, 3} || p == OneDPair{1, 2} || p == OneDPair{1, 3}) return 1;
    return 0;
}

double pow4(double x) { return (x * x) * (x * x); }

// cos(t + m pi/2) and sin(t + m pi/2) without rounding the shift
double cos_shift(double t, int m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return std::cos(t);
        case 1: return -std::sin(t);
        case 2: return -std::cos(t);
        default: return std::sin(t);
    }
}
double sin_shift(double t, int m) { return cos_shift(t, m - 1); }

}  // namespace

int root_index(OneDPair p, int n) {
    require_pair(p);
    if (n < 1) fail(ErrorCode::InvalidArgument, "eigenvalue index must be >= 1");
    if (p == OneDPair{0, 1}) return n;
    if (p == OneDPair{0, 3} || p == OneDPair{1, 2}) return n - 1;
    if (p == OneDPair{2, 3}) return std::max(n - 2, 0);
    return -1;
}

double eigenvalue_1d(OneDPair p, int n) {
    const int k = root_index(p, n);
    if (k >= 0) return pow4(solve_gamma(k).gamma);
    if (p == OneDPair{0, 2}) return pow4(kPi * n);
    return pow4(kPi * (n - 1));
}

Spectrum spectrum_1d(OneDPair p, int count, double L) {
    require_pair(p);
    if (count < 1) fail(ErrorCode::InvalidArgument, "count must be >= 1");
    if (!(L > 0)) fail(ErrorCode::InvalidArgument, "length must be > 0");
    std::vector<double> v(count);
    const double scale = pow4(L);
    for (int n = 1; n <= count; ++n) v[n - 1] = eigenvalue_1d(p, n) / scale;
    Spectrum s(std::move(v), DomainSpec::interval(L), BoundaryCondition::pair(p), {SourceKind::Exact, 0, 0});
    if (s.kernel_dim() != std::min(kernel_count(p), count)) fail(ErrorCode::Internal, "kernel dimension mismatch");
    return s;
}

Eigenfunction1D make_eigenfunction(OneDPair p, int n) {
    require_pair(p);
    if (n < 1 || n > kMaxEigenfunctionIndex) fail(ErrorCode::InvalidArgument, "eigenfunction index outside 1..40");
    Eigenfunction1D ef;
    ef.pair = p;
    ef.n = n;
    if (p == OneDPair{0, 2}) {
        ef.form = EigenForm::Sine;
        ef.gamma = kPi * n;
        return ef;
    }
    if (p == OneDPair{1, 3}) {
        ef.form = n == 1 ? EigenForm::Constant : EigenForm::Cosine;
        ef.gamma = kPi * (n - 1);
        return ef;
    }
    const int k = root_index(p, n);
    if (k == 0) {
        if (p == OneDPair{0, 3}) ef.form = EigenForm::Quadratic;
        else if (p == OneDPair{2, 3} && n == 2) ef.form = EigenForm::Linear;
        else ef.form = EigenForm::Constant;
        return ef;
    }
    const double g = solve_gamma(k).gamma;
    ef.gamma = g;
    const double sigma = p == OneDPair{0, 3} ? 1.0 : -1.0;
    const double em = std::exp(-g);
    // (A - 1) e^g / 2, free of cancellation
    const double ah = (-em + sigma * std::sin(g) + std::cos(g)) / (1 + em * em - 2 * std::cos(g) * em);
    ef.A = 1 + 2 * em * ah;
    if (p == OneDPair{0, 1}) {
        ef.alpha_hat = ah, ef.beta = (ef.A + 1) / 2, ef.cc = -ef.A, ef.ss = 1;
    } else if (p == OneDPair{0, 3}) {
        ef.alpha_hat = ah, ef.beta = (ef.A + 1) / 2, ef.cc = -ef.A, ef.ss = -1;
    } else if (p == OneDPair{1, 2}) {
        ef.alpha_hat = -ah, ef.beta = (1 + ef.A) / 2, ef.cc = 1, ef.ss = ef.A;
    } else {
        ef.alpha_hat = ah, ef.beta = (ef.A + 1) / 2, ef.cc = ef.A, ef.ss = -1;
    }
    return ef;
}

double eigenfunction_derivative(const Eigenfunction1D& ef, double x, int m) {
    if (m < 0 || m > 4) fail(ErrorCode::InvalidArgument, "derivative order outside 0..4");
    const double g = ef.gamma;
    switch (ef.form) {
        case EigenForm::Constant: return m == 0 ? 1.0 : 0.0;
        case EigenForm::Linear: return m == 0 ? x : (m == 1 ? 1.0 : 0.0);
        case EigenForm::Quadratic:
            if (m == 0) return x * (1 - x);
            if (m == 1) return 1 - 2 * x;
            return m == 2 ? -2.0 : 0.0;
        case EigenForm::Sine: return std::pow(g, m) * sin_shift(g * x, m);
        case EigenForm::Cosine: return std::pow(g, m) * cos_shift(g * x, m);
        case EigenForm::Beam: {
            const double gm = std::pow(g, m);
            const double up = ef.alpha_hat * std::exp(g * (x - 1));
            const double down = (m % 2 ? -1.0 : 1.0) * ef.beta * std::exp(-g * x);
            return gm * (up + down + ef.cc * cos_shift(g * x, m) + ef.ss * sin_shift(g * x, m));
        }
    }
    return 0;
}

double eval_eigenfunction(const Eigenfunction1D& ef, double x, int deriv) {
    if (deriv < 0 || deriv > 3) fail(ErrorCode::InvalidArgument, "derivative order outside 0..3");
    if (!(x >= 0 && x <= 1)) fail(ErrorCode::Domain, "x outside [0,1]");
    return eigenfunction_derivative(ef, x, deriv);
}

double boundary_residual(const Eigenfunction1D& ef) {
    double r = 0;
    for (double x : {0.0, 1.0})
        for (int m : {ef.pair.i, ef.pair.j}) r = std::max(r, std::abs(eigenfunction_derivative(ef, x, m)));
    return r;
}

std::vector<BoundReport> identity_check(int n_max) {
    if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be >= 1");
    std::vector<BoundReport> out;
    auto equal = [&](const char* name, int n, double a, double b) {
        auto r = check_le(name, fmt_int(n), "", a, b, "spectra1d.identity");
        r.holds = a == b;
        out.push_back(r);
    };
    for (int n = 1; n <= n_max; ++n) {
        const double l01 = eigenvalue_1d({0, 1}, n);
        equal("dirichlet_eq_(0,3)", n, l01, eigenvalue_1d({0, 3}, n + 1));
        equal("dirichlet_eq_(1,2)", n, l01, eigenvalue_1d({1, 2}, n + 1));
        equal("dirichlet_eq_(2,3)", n, l01, eigenvalue_1d({2, 3}, n + 2));
        const double v[6] = {l01,
                             eigenvalue_1d({0, 2}, n),
                             eigenvalue_1d({0, 3}, n),
                             eigenvalue_1d({1, 2}, n),
                             eigenvalue_1d({1, 3}, n),
                             eigenvalue_1d({2, 3}, n)};
        const char* names[5] = {"interlace_(0,2)<=(0,1)", "interlace_(0,3)<=(0,2)", "interlace_(1,2)<=(0,3)",
                                "interlace_(1,3)<=(1,2)", "interlace_(2,3)<=(1,3)"};
        for (int k = 0; k < 5; ++k)
            out.push_back(check_le(names[k], fmt_int(n), "", v[k + 1], v[k], "spectra1d.interlacing"));
        out.push_back(check_le("neumann_weyl_bound", fmt_int(n), "", v[5], pow4(kPi * (n - 1)),
                               "spectra1d.neumann_weyl"));
    }
    return out;
}

}  // namespace bilap
