#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bilap/eig2d.hpp"

using namespace bilap;

namespace {

// deterministic fill in [-1, 1]
double fill(int i, int j) { return std::sin(1.3 * i + 0.7 * j * j + 0.1); }

// cyclic Jacobi: slow, simple, independent of the library solvers
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2 * apq);
                const double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a[i * n + i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

// 13-point stencil on a padded array: zero boundary ring, ghost ring mirroring the first interior node
std::vector<double> clamped_reference(const Grid2D& g, const std::vector<double>& u) {
    const int W = g.nx + 4, H = g.ny + 4;
    std::vector<double> p(static_cast<std::size_t>(W) * H, 0.0), lap(p.size(), 0.0);
    auto at = [&](int i, int j) -> double& { return p[(j + 2) * W + (i + 2)]; };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) at(i, j) = u[g.index(i, j)];
    for (int j = 0; j < g.ny; ++j) {
        at(-2, j) = at(0, j);
        at(g.nx + 1, j) = at(g.nx - 1, j);
    }
    for (int i = 0; i < g.nx; ++i) {
        at(i, -2) = at(i, 0);
        at(i, g.ny + 1) = at(i, g.ny - 1);
    }
    auto L = [&](int i, int j) {
        return (at(i - 1, j) - 2 * at(i, j) + at(i + 1, j)) / (g.hx * g.hx) +
               (at(i, j - 1) - 2 * at(i, j) + at(i, j + 1)) / (g.hy * g.hy);
    };
    auto lat = [&](int i, int j) -> double& { return lap[(j + 2) * W + (i + 2)]; };
    for (int j = -1; j <= g.ny; ++j)
        for (int i = -1; i <= g.nx; ++i)
            if ((i >= 0 && i < g.nx) || (j >= 0 && j < g.ny)) lat(i, j) = L(i, j);
    std::vector<double> out(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out[g.index(i, j)] = (lat(i - 1, j) - 2 * lat(i, j) + lat(i + 1, j)) / (g.hx * g.hx) +
                                 (lat(i, j - 1) - 2 * lat(i, j) + lat(i, j + 1)) / (g.hy * g.hy);
    return out;
}

}  // namespace

TEST_CASE("dense, banded and Jacobi eigenvalues agree") {
    const int n = 40, kd = 5;
    std::vector<double> dense(n * n, 0.0), band((kd + 1) * n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = j; i <= std::min(n - 1, j + kd); ++i) {
            const double v = i == j ? 10 + fill(i, j) : fill(i, j);
            dense[i * n + j] = dense[j * n + i] = v;
            band[(i - j) + j * (kd + 1)] = v;
        }
    const auto oracle = jacobi_eigenvalues(dense, n);
    const auto d = smallest_eigs(DiscreteOperator::dense(n, dense, "d"), 12, true);
    const auto b = smallest_eigs(DiscreteOperator::banded(n, kd, band, "b"), 12, true);
    for (int k = 0; k < 12; ++k) {
        CHECK(d.values[k] == doctest::Approx(oracle[k]).epsilon(1e-12));
        CHECK(b.values[k] == doctest::Approx(oracle[k]).epsilon(1e-12));
    }
    // residuals and orthonormality
    const auto op = DiscreteOperator::dense(n, dense, "d");
    for (const auto* e : {&d, &b}) {
        for (int c = 0; c < 12; ++c) {
            std::vector<double> v(n);
            for (int i = 0; i < n; ++i) v[i] = e->vec(i, c);
            const auto Av = op.apply(v);
            double res = 0, nrm = 0;
            for (int i = 0; i < n; ++i) res = std::max(res, std::abs(Av[i] - e->values[c] * v[i])), nrm += v[i] * v[i];
            CHECK(res < 1e-10);
            CHECK(nrm == doctest::Approx(1).epsilon(1e-12));
            for (int c2 = 0; c2 < c; ++c2) {
                double ip = 0;
                for (int i = 0; i < n; ++i) ip += v[i] * e->vec(i, c2);
                CHECK(std::abs(ip) < 1e-10);
            }
            // normalized sign: first significant component positive
            double mx = 0;
            for (double x : v) mx = std::max(mx, std::abs(x));
            for (double x : v)
                if (std::abs(x) > 1e-10 * mx) {
                    CHECK(x > 0);
                    break;
                }
        }
    }
}

TEST_CASE("full dense decomposition against Jacobi") {
    const int n = 17;
    std::vector<double> a(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) a[i * n + j] = a[j * n + i] = fill(i + j, i * j);
    const auto e = dense_symmetric_eigen(a, n, false);
    const auto o = jacobi_eigenvalues(a, n);
    for (int k = 0; k < n; ++k) CHECK(e.values[k] == doctest::Approx(o[k]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("asymmetric input is rejected") {
    std::vector<double> a = {1, 2, 3, 4};
    CHECK_THROWS_AS(smallest_eigs(DiscreteOperator::dense(2, a, "x"), 1), Error);
    try {
        smallest_eigs(DiscreteOperator::dense(2, a, "x"), 1);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSymmetric);
    }
}

TEST_CASE("grid limits") {
    const auto dom = DomainSpec::square(1.0);
    CHECK_NOTHROW(make_grid(dom, 128, 128));
    try {
        make_grid(dom, 130, 130);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Resolution);
    }
    CHECK_THROWS_AS(make_grid(DomainSpec::interval(1), 8, 8), Error);
}

TEST_CASE("clamped operator matches an independent 13-point construction") {
    for (auto [nx, ny] : {std::pair{7, 7}, std::pair{8, 5}, std::pair{12, 9}}) {
        const Grid2D g = make_grid(DomainSpec::rectangle(1.0, 0.8), nx, ny);
        const auto op = assemble_clamped_bilaplacian(g);
        CHECK(op.is_symmetric());
        std::vector<double> u(g.size());
        for (int i = 0; i < g.size(); ++i) u[i] = fill(i, 3);
        const auto a = op.apply(u), b = clamped_reference(g, u);
        double scale = 0;
        for (double x : b) scale = std::max(scale, std::abs(x));
        for (int i = 0; i < g.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12 * scale);
    }
}

TEST_CASE("sector decomposition reproduces the full spectrum") {
    for (auto [nx, ny] : {std::pair{9, 9}, std::pair{10, 7}}) {
        const Grid2D g = make_grid(DomainSpec::rectangle(1.0, 0.9), nx, ny);
        for (FdOperator op : {FdOperator::ClampedBilaplacian, FdOperator::DirichletLaplacian}) {
            const auto full = op == FdOperator::ClampedBilaplacian ? assemble_clamped_bilaplacian(g)
                                                                   : assemble_dirichlet_laplacian(g);
            const auto dense = jacobi_eigenvalues(full.to_dense(), g.size());
            const auto sect = grid_smallest_eigs(g, op, 20, true);
            for (int k = 0; k < 20; ++k) CHECK(sect.values[k] == doctest::Approx(dense[k]).epsilon(1e-11));
            // lifted vectors are eigenvectors of the full operator
            for (int c = 0; c < 20; ++c) {
                std::vector<double> v(g.size());
                for (int i = 0; i < g.size(); ++i) v[i] = sect.vec(i, c);
                const auto Av = full.apply(v);
                double res = 0;
                for (int i = 0; i < g.size(); ++i) res = std::max(res, std::abs(Av[i] - sect.values[c] * v[i]));
                CHECK(res <= 1e-9 * sect.values[c]);
            }
        }
    }
}

TEST_CASE("discrete Laplacian against its closed form on a 64 x 64 grid") {
    const Grid2D g = make_grid(DomainSpec::square(1.0), 64, 64);
    const auto s = fd_spectrum(g, FdOperator::DirichletLaplacian, 30);
    const auto c = discrete_laplacian_spectrum(g, 30);
    for (int k = 0; k < 30; ++k) CHECK(std::abs(s[k] - c[k]) <= 1e-10 * c[k]);
    const int hits = fd_memo_hits();
    fd_spectrum(g, FdOperator::DirichletLaplacian, 10);
    CHECK(fd_memo_hits() == hits + 1);
}

TEST_CASE("exact separable spectra") {
    const auto dom = DomainSpec::square(1.0);
    const auto d = laplacian_spectrum_exact(dom, 4);
    const double p2 = kPi * kPi;
    CHECK(d[0] == doctest::Approx(2 * p2));
    CHECK(d[1] == doctest::Approx(5 * p2));
    CHECK(d[2] == doctest::Approx(5 * p2));
    CHECK(d[3] == doctest::Approx(8 * p2));
    const auto n = neumann_laplacian_spectrum_exact(dom, 4);
    CHECK(n[0] == 0);
    CHECK(n[1] == doctest::Approx(p2));
    CHECK(n[3] == doctest::Approx(2 * p2));
    CHECK(navier1_spectrum_exact(dom, 2)[0] == doctest::Approx(4 * p2 * p2));
}

TEST_CASE("Richardson extrapolation") {
    const std::vector<double> h = {0.1, 0.05, 0.025};
    std::vector<double> v;
    for (double x : h) v.push_back(3.0 + 7.0 * x * x + 2.0 * x * x * x);
    const auto r = richardson(h, v);
    CHECK(std::abs(r.limit - 3.0) < 1e-4);
    CHECK(r.lower() <= 3.0);
    CHECK(r.upper() >= 3.0);
    CHECK(r.observed_order == doctest::Approx(2).epsilon(0.05));
    std::vector<double> exact2 = {3.0 + 7 * 0.01, 3.0 + 7 * 0.0025};
    CHECK(richardson({0.1, 0.05}, exact2).limit == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(richardson({0.05, 0.1}, exact2), Error);
}

TEST_CASE("form energies of a sampled eigenfunction") {
    const Grid2D g = make_grid(DomainSpec::square(1.0), 63, 63);
    std::vector<double> v(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            v[g.index(i, j)] = std::sin(kPi * (i + 1) * g.hx) * std::sin(kPi * (j + 1) * g.hy);
    const auto e = form_energies(v, g);
    CHECK(e.grad == doctest::Approx(2 * kPi * kPi).epsilon(2e-3));
    CHECK(e.lap == doctest::Approx(4 * std::pow(kPi, 4)).epsilon(5e-3));
    CHECK(e.hessian == doctest::Approx(4 * std::pow(kPi, 4)).epsilon(5e-3));
    // constants carried on every node have no energy
    std::vector<double> ones(static_cast<std::size_t>(g.nx + 2) * (g.ny + 2), 1.0);
    const auto c = form_energies(ones, g);
    CHECK(c.grad == doctest::Approx(0).scale(1));
    CHECK(c.lap == doctest::Approx(0).scale(1));
    CHECK_THROWS_AS(form_energies(std::vector<double>(5, 1.0), g), Error);
}

TEST_CASE("clamped unit square: first eigenvalue brackets the reference value") {
    // 1294.9339 from high-accuracy computations of the clamped square plate
    const auto ext = fd_extrapolated(DomainSpec::square(1.0), FdOperator::ClampedBilaplacian, {16, 32, 64}, 6);
    CHECK(ext[0].lower() <= 1294.9339);
    CHECK(ext[0].upper() >= 1294.9339);
    CHECK(std::abs(ext[0].limit - 1294.9339) < 1.0);
    CHECK(ext[0].observed_order == doctest::Approx(2).epsilon(0.2));
    // the second and third modes are a symmetric pair
    CHECK(ext[1].limit == doctest::Approx(ext[2].limit).epsilon(1e-10));
}

TEST_CASE("comparison report: 1D chains hold exactly") {
    const auto rows = comparison_report(DomainSpec::square(1.0), 4, {16, 32, 64}, 50);
    for (const auto& r : rows) CHECK_MESSAGE(r.holds, r.check << " " << r.param1);
}
