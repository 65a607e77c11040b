#include "bilap/roots1d.hpp"

#include <cmath>
#include <limits>

namespace bilap {

namespace {

constexpr double kAsymptoticCutoff = 700.0;

double sech(double x) {
    x = std::abs(x);
    const double e = std::exp(-x);
    return 2 * e / (1 + e * e);
}

// same sign as cos(g)cosh(g) - 1
double frequency_sign_fn(double g) { return std::cos(g) - sech(g); }

// sin r = sech(A + s r) on (0, pi/2), bisected to full precision
double solve_defect(double A, int s) {
    auto phi = [&](double r) { return std::sin(r) - sech(A + s * r); };
    double lo = 0, hi = kPi / 2;
    if (!(phi(lo) < 0 && phi(hi) > 0)) fail(ErrorCode::Internal, "defect bracket lost its sign change");
    for (int it = 0; it < 4000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (phi(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double gamma_residual(double g) { return std::abs(std::cos(g) - sech(g)); }

GammaRoot solve_gamma(int n, double tol) {
    if (n < 0) fail(ErrorCode::InvalidArgument, "root index must be >= 0");
    if (!(tol > 0) || tol > 1e-6) fail(ErrorCode::InvalidArgument, "tolerance must lie in (0, 1e-6]");
    GammaRoot root;
    root.n = n;
    if (n == 0) return root;
    const double A = root.center();
    const int s = root.sign();
    root.lo = A - kPi / 2;
    root.hi = A + kPi / 2;
    if (A >= kAsymptoticCutoff) {
        root.asymptotic = true;
        root.r = 2 * std::exp(-A);
        root.gamma = A + s * root.r;
        return root;
    }
    double lo = root.lo, hi = root.hi;
    const double flo = frequency_sign_fn(lo), fhi = frequency_sign_fn(hi);
    if (!(flo * fhi < 0)) fail(ErrorCode::Internal, "frequency bracket without sign change");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = frequency_sign_fn(mid);
        if ((fm < 0) == (flo < 0))
            lo = mid;
        else
            hi = mid;
    }
    root.lo = lo;
    root.hi = hi;
    root.r = solve_defect(A, s);
    root.gamma = A + s * root.r;
    // split representation and bisection bracket must agree
    const double slack = tol + 8 * std::numeric_limits<double>::epsilon() * A;
    if (root.gamma < lo - slack || root.gamma > hi + slack) fail(ErrorCode::Internal, "defect inconsistent with root");
    return root;
}

double defect(int n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "defect needs n >= 1");
    return solve_gamma(n).r;
}

std::vector<BoundReport> proposition_bound_report(int n_max) {
    if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be >= 1");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<BoundReport> out;
    double prev = 0;
    for (int n = 1; n <= n_max; ++n) {
        const GammaRoot g = solve_gamma(n);
        const double A = g.center();
        const double sA = sech(A);
        const std::string pn = fmt_int(n);
        auto range = check_le("defect_in_range", pn, "", g.r, kPi / 2, "roots.defect_range");
        range.holds = range.holds && g.r > 0;
        out.push_back(range);
        if (n % 2 == 1) {
            const double up = std::asin(sA);
            out.push_back(check_le("defect_upper_odd", pn, "", g.r, up, "roots.bracket_odd", 16 * eps * up));
            const double low = 0.5 * std::asinh(2 * sA);
            auto r = check_le("defect_lower_odd", pn, "", low, g.r, "roots.bracket_odd", 16 * eps * low, false);
            r.note = "reported only";
            out.push_back(r);
        } else {
            const double low = std::asin(sA);
            out.push_back(check_le("defect_lower_even", pn, "", low, g.r, "roots.bracket_even", 16 * eps * low));
            const double up = std::asin((2 * sA) / (1 + std::sqrt(1 - 4 * sA)));
            out.push_back(check_le("defect_upper_even", pn, "", g.r, up, "roots.bracket_even", 16 * eps * up));
        }
        if (n > 1) {
            auto m = check_le("defect_decreasing", pn, fmt_int(n - 1), g.r, prev, "roots.defect_decreasing");
            m.holds = g.r < prev;
            out.push_back(m);
        }
        // unsigned form of the asymptotic expansion
        const double dev = std::abs(g.r * std::cosh(A) - 1);
        auto a = check_le("defect_asymptotic", pn, "", dev, 2 * sA, "roots.expansion", 64 * eps, false);
        a.note = "unsigned form";
        out.push_back(a);
        if (g.asymptotic) out.back().note += "; asymptotic";
        prev = g.r;
    }
    return out;
}

}  // namespace bilap
