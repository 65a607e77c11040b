#include <doctest.h>

#include <cmath>

#include "bilap/eig2d.hpp"
#include "bilap/semiclassical.hpp"

using namespace bilap;

namespace {

// composite midpoint after x = 1 - s^2, which smooths the square-root endpoint
double smooth_endpoint_integral(const std::function<double(double)>& f, int n = 200000) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) / n;
        s += f(1 - u * u) * 2 * u;
    }
    return s / n;
}

}  // namespace

TEST_CASE("f_neumann values") {
    CHECK(f_neumann(0.0) == 1.0);
    CHECK(f_neumann(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(f_neumann(0.5) == doctest::Approx(0.25 + std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("g pole and the continuous arctangent") {
    // (1-a) t^2 = 1 at t = 1 when a = 0
    CHECK_THROWS_AS(g_neumann(1.0, 0.0), Error);
    CHECK_THROWS_AS(g_neumann(1.5, 0.0), Error);
    for (double a : {-0.3, 0.0, 0.5}) {
        for (double t : {0.1, 0.4, 0.7}) {
            const double g = g_neumann(t, a);
            CHECK(std::tan(arctan_g(t, a)) == doctest::Approx(g).epsilon(1e-12));
            CHECK(std::tan(arctan_inv_g(t, a)) == doctest::Approx(1 / g).epsilon(1e-12));
        }
    }
}

TEST_CASE("Neumann integral against an independent midpoint rule") {
    for (double a : {-0.3, 0.0, 0.5, 0.9}) {
        for (int d : {2, 3, 4}) {
            const double lib = neumann_integral(d, a).value;
            const double mid =
                smooth_endpoint_integral([&](double t) { return std::pow(t, d - 2) * arctan_g(t, a); });
            CHECK(lib == doctest::Approx(mid).epsilon(1e-8));
        }
    }
}

TEST_CASE("Neumann c1: direct and inverse forms agree") {
    for (double a : {-0.3, 0.0, 0.5, 0.9})
        for (int d : {2, 3, 4}) {
            const double c1 = expansion_coefficients(BoundaryCondition::neumann(a), d).c1;
            CHECK(std::abs(c1 - neumann_c1_inverse_form(d, a)) < 1e-9);
        }
}

TEST_CASE("Dirichlet c1 closed form against quadrature") {
    for (int d : {2, 3, 4}) {
        const double closed = expansion_coefficients(BoundaryCondition::dirichlet(), d).c1;
        CHECK(std::abs(closed - dirichlet_c1_quadrature(d).value) < 1e-9);
    }
    // d = 2 by hand: (2 pi)^{-2} ( int_{-1}^{1} arcsin x^2 dx - 2 pi )
    const double I = 2 * smooth_endpoint_integral([](double x) { return std::asin(x * x); });
    const double c1 = (I - 2 * kPi) / (4 * kPi * kPi);
    CHECK(expansion_coefficients(BoundaryCondition::dirichlet(), 2).c1 == doctest::Approx(c1).epsilon(1e-8));
}

TEST_CASE("Weyl coefficient and boundary sign pattern") {
    for (int d : {2, 3, 4}) {
        const auto e = expansion_coefficients(BoundaryCondition::navier(0.3), d);
        CHECK(e.c0 == doctest::Approx(dimensional_constants(d).B / std::pow(2 * kPi, d)).epsilon(1e-15));
        const double cd = expansion_coefficients(BoundaryCondition::dirichlet(), d).c1;
        const double cn = e.c1;
        const double ck = expansion_coefficients(BoundaryCondition::kuttler_sigillito(0.3), d).c1;
        CHECK(cd < cn);
        CHECK(cn < 0);
        CHECK(ck == doctest::Approx(-cn).epsilon(1e-15));
    }
    CHECK(dirichlet_gamma_ratio(2) == doctest::Approx(std::tgamma(0.75) / (std::sqrt(kPi) * std::tgamma(1.25))));
    CHECK_THROWS_AS(expansion_coefficients(BoundaryCondition::pair(0, 1), 2), Error);
    CHECK_THROWS_AS(expansion_coefficients(BoundaryCondition::dirichlet(), 1), Error);
}

TEST_CASE("Navier and KS predictions match the squared two-term Laplacian law") {
    // lambda_k ~ 4 pi k +- P sqrt(4 pi k) on the unit square, so Lambda_k ~ 16 pi^2 k^2 +- 16 pi^{3/2} P k^{3/2}
    const auto dom = DomainSpec::square(1.0);
    for (int k : {1, 10, 100, 1000}) {
        const double lead = 16 * kPi * kPi * k * k, second = 16 * std::pow(kPi, 1.5) * 4 * std::pow(k, 1.5);
        CHECK(predict_eigenvalue(BoundaryCondition::navier(1.0), 2, dom, k) ==
              doctest::Approx(lead + second).epsilon(1e-13));
        CHECK(predict_eigenvalue(BoundaryCondition::kuttler_sigillito(1.0), 2, dom, k) ==
              doctest::Approx(lead - second).epsilon(1e-13));
        CHECK(weyl_leading(2, dom, k) == doctest::Approx(lead).epsilon(1e-14));
    }
}

TEST_CASE("two-term prediction improves on Weyl for the exact Navier a=1 spectrum") {
    const auto dom = DomainSpec::square(1.0);
    const Spectrum ex = navier1_spectrum_exact(dom, 600);
    double e_weyl = 0, e_two = 0;
    for (int k = 200; k <= 600; ++k) {
        e_weyl += ex[k - 1] - weyl_leading(2, dom, k);
        e_two += ex[k - 1] - predict_eigenvalue(BoundaryCondition::navier(1.0), 2, dom, k);
    }
    CHECK(std::abs(e_two) < 0.2 * std::abs(e_weyl));
}

TEST_CASE("predicted spectrum is monotone and nonnegative") {
    const auto s = predicted_spectrum(BoundaryCondition::neumann(0.3), DomainSpec::square(1.0), 50);
    CHECK(s[0] >= 0);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] >= s[i - 1]);
    CHECK_THROWS_AS(predict_eigenvalue(BoundaryCondition::dirichlet(), 2, DomainSpec::interval(1), 3), Error);
}
