#include <doctest.h>

#include <cmath>
#include <vector>

#include "bilap/eig2d.hpp"
#include "bilap/spectra1d.hpp"

using namespace bilap;

namespace {

// boundary determinant of u'''' = g^4 u with u^(i) = u^(j) = 0 at x = 0, 1, in the
// overflow-free basis e^{g(x-1)}, e^{-gx}, cos gx, sin gx; rows scaled by g^k
double boundary_det(OneDPair p, double g) {
    double m[4][4];
    const int ks[2] = {p.i, p.j};
    for (int end = 0; end < 2; ++end) {
        const double x = end;
        for (int r = 0; r < 2; ++r) {
            const int k = ks[r];
            double* row = m[2 * end + r];
            row[0] = std::exp(g * (x - 1));
            row[1] = (k % 2 ? -1.0 : 1.0) * std::exp(-g * x);
            row[2] = std::cos(g * x + k * kPi / 2);
            row[3] = std::sin(g * x + k * kPi / 2);
        }
    }
    // Gaussian elimination with partial pivoting
    double det = 1;
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (m[piv][c] == 0) return 0;
        if (piv != c) {
            for (int j = 0; j < 4; ++j) std::swap(m[c][j], m[piv][j]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < 4; ++r) {
            const double f = m[r][c] / m[c][c];
            for (int j = c; j < 4; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

std::vector<double> det_roots(OneDPair p, double gmax) {
    std::vector<double> out;
    const double step = 1e-3;
    double a = 0.5, fa = boundary_det(p, a);
    for (double b = a + step; b < gmax; b += step) {
        const double fb = boundary_det(p, b);
        if (fa == 0) out.push_back(a);
        else if ((fa < 0) != (fb < 0)) {
            double lo = a, hi = b;
            for (int i = 0; i < 100; ++i) {
                const double mid = 0.5 * (lo + hi);
                ((boundary_det(p, mid) < 0) == (fa < 0) ? lo : hi) = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        a = b, fa = fb;
    }
    return out;
}

int kernel_dim(OneDPair p) {
    if (p == OneDPair{2, 3}) return 2;
    if (p == OneDPair{0, 1} || p == OneDPair{0, 2}) return 0;
    return 1;
}

}  // namespace

TEST_CASE("all six pairs against the boundary determinant") {
    for (OneDPair p : all_pairs()) {
        CAPTURE(p.i);
        CAPTURE(p.j);
        const auto roots = det_roots(p, 40.0);
        REQUIRE(roots.size() >= 10);
        const int k0 = kernel_dim(p);
        const Spectrum s = spectrum_1d(p, k0 + static_cast<int>(roots.size()));
        CHECK(s.kernel_dim() == k0);
        for (std::size_t r = 0; r < roots.size(); ++r) {
            const double oracle = std::pow(roots[r], 4);
            CHECK(s[k0 + r] == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
}

TEST_CASE("closed forms of the Navier and Kuttler-Sigillito pairs") {
    for (int n = 1; n <= 30; ++n) {
        CHECK(eigenvalue_1d({0, 2}, n) == doctest::Approx(std::pow(kPi * n, 4)).epsilon(1e-15));
        CHECK(eigenvalue_1d({1, 3}, n) == doctest::Approx(std::pow(kPi * (n - 1), 4)).epsilon(1e-15));
    }
}

TEST_CASE("scaling with the interval length") {
    const Spectrum a = spectrum_1d({0, 1}, 5, 1.0), b = spectrum_1d({0, 1}, 5, 2.0);
    for (int i = 0; i < 5; ++i) CHECK(b[i] == doctest::Approx(a[i] / 16).epsilon(1e-15));
}

TEST_CASE("identity and interlacing checks all hold") {
    for (const auto& r : identity_check(40)) CHECK_MESSAGE(r.holds, r.check << " n=" << r.param1);
}

TEST_CASE("eigenfunctions solve the ODE and the boundary conditions") {
    for (OneDPair p : all_pairs()) {
        for (int n = 1; n <= 6; ++n) {
            CAPTURE(p.i);
            CAPTURE(p.j);
            CAPTURE(n);
            const Eigenfunction1D ef = make_eigenfunction(p, n);
            const double L = eigenvalue_1d(p, n);
            double scale = 0;
            for (int i = 0; i <= 20; ++i) scale = std::max(scale, std::abs(eval_eigenfunction(ef, i / 20.0, 0)));
            REQUIRE(scale > 0);
            CHECK(boundary_residual(ef) < 1e-9 * std::max(1.0, std::pow(ef.gamma, 3)) * scale);
            for (double x : {0.1, 0.37, 0.5, 0.81}) {
                // independent fourth difference of the values
                const double h = 2e-3;
                double fd = 0;
                const double c[5] = {1, -4, 6, -4, 1};
                for (int k = 0; k < 5; ++k) fd += c[k] * eval_eigenfunction(ef, x + (k - 2) * h, 0);
                fd /= h * h * h * h;
                const double u = eval_eigenfunction(ef, x, 0);
                // truncation plus the roundoff of the difference quotient
                CHECK(std::abs(fd - L * u) <= 2e-3 * L * scale + 64 * 2.3e-16 * scale / (h * h * h * h));
                CHECK(std::abs(eigenfunction_derivative(ef, x, 4) - L * u) <= 1e-9 * L * scale + 1e-9);
            }
        }
    }
    CHECK_THROWS_AS(make_eigenfunction({0, 1}, 41), Error);
}

TEST_CASE("eigenfunctions of distinct eigenvalues are orthogonal") {
    // (0,3) and (1,2) are adjoint to each other, the other four pairs are self-adjoint
    auto check = [](OneDPair p, OneDPair q) {
        for (int m = 1; m <= 5; ++m)
            for (int n = 1; n <= 5; ++n) {
                if (eigenvalue_1d(p, m) == eigenvalue_1d(q, n)) continue;
                const Eigenfunction1D a = make_eigenfunction(p, m), b = make_eigenfunction(q, n);
                auto prod = [&](double x) { return eval_eigenfunction(a, x, 0) * eval_eigenfunction(b, x, 0); };
                auto na = [&](double x) { return std::pow(eval_eigenfunction(a, x, 0), 2); };
                auto nb = [&](double x) { return std::pow(eval_eigenfunction(b, x, 0), 2); };
                const double ip = gauss_adaptive(prod, 0, 1, 1e-13).value;
                const double norm = std::sqrt(gauss_adaptive(na, 0, 1).value * gauss_adaptive(nb, 0, 1).value);
                CAPTURE(p.i);
                CAPTURE(p.j);
                CAPTURE(q.i);
                CAPTURE(q.j);
                CHECK(std::abs(ip) <= 1e-9 * norm);
            }
    };
    for (OneDPair p : {OneDPair{0, 1}, OneDPair{0, 2}, OneDPair{1, 3}, OneDPair{2, 3}}) check(p, p);
    check({0, 3}, {1, 2});
}

TEST_CASE("finite-difference clamped beam converges to gamma_1^4 at second order") {
    const double exact = eigenvalue_1d({0, 1}, 1);
    double prev_err = 0;
    for (int n : {50, 100, 200}) {
        const auto e = smallest_eigs(assemble_clamped_beam(n), 1, false);
        const double err = std::abs(e.values[0] - exact);
        if (prev_err > 0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.15));
        prev_err = err;
    }
    CHECK(prev_err / exact < 1e-3);
}
