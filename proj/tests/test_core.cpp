#include <doctest.h>

#include <cmath>
#include <limits>

#include "bilap/core.hpp"

using namespace bilap;

TEST_CASE("gamma function at half integers and integers") {
    CHECK(gamma_fn(2.5) == doctest::Approx(0.75 * std::sqrt(kPi)).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    for (int n = 1; n <= 15; ++n) CHECK(gamma_fn(n) == doctest::Approx(std::tgamma(n)).epsilon(1e-13));
    CHECK(gamma_fn(3.7) == doctest::Approx(std::tgamma(3.7)).epsilon(1e-13));
}

TEST_CASE("dimensional constants in d = 2") {
    const auto k = dimensional_constants(2);
    CHECK(k.B == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(k.C == doctest::Approx(4 * kPi).epsilon(1e-15));
    CHECK(k.M == doctest::Approx(52.0 / 3).epsilon(1e-14));
    CHECK(k.a == doctest::Approx(5 / kPi).epsilon(1e-14));
    CHECK(k.c == doctest::Approx(320.0 / 3).epsilon(1e-14));
    CHECK_THROWS_AS(dimensional_constants(0), Error);
}

TEST_CASE("unit ball volumes") {
    CHECK(dimensional_constants(1).B == doctest::Approx(2).epsilon(1e-14));
    CHECK(dimensional_constants(3).B == doctest::Approx(4 * kPi / 3).epsilon(1e-14));
    CHECK(dimensional_constants(4).B == doctest::Approx(kPi * kPi / 2).epsilon(1e-14));
}

TEST_CASE("boundary condition validation") {
    CHECK_NOTHROW(BoundaryCondition::navier(1.0).validate(2));
    CHECK_NOTHROW(BoundaryCondition::kuttler_sigillito(1.0).validate(3));
    CHECK_THROWS_AS(BoundaryCondition::neumann(1.0).validate(2), Error);
    CHECK_THROWS_AS(BoundaryCondition::navier(-1.0).validate(2), Error);
    CHECK_NOTHROW(BoundaryCondition::navier(-0.4).validate(3));
    CHECK_THROWS_AS(BoundaryCondition::navier(-0.6).validate(3), Error);
    CHECK(BoundaryCondition::pair(0, 2).is_pair());
    CHECK_THROWS_AS(BoundaryCondition::pair(1, 1), Error);
    CHECK(all_pairs().size() == 6);
}

TEST_CASE("domains") {
    const auto r = DomainSpec::rectangle(2.0, 1.0);
    CHECK(r.volume() == 2.0);
    CHECK(r.perimeter() == 6.0);
    CHECK(r.inradius() == 0.5);
    CHECK(r.tube_volume(0.1) == doctest::Approx(2.0 - 1.8 * 0.8));
    CHECK_THROWS_AS(r.tube_volume(0.6), Error);
    CHECK(DomainSpec::interval(3).dimension() == 1);
    CHECK(DomainSpec::square(1).name() == "square:1");
    CHECK_THROWS_AS(DomainSpec::rectangle(-1, 1), Error);
}

TEST_CASE("spectrum invariants") {
    const auto dom = DomainSpec::square(1);
    CHECK_THROWS_AS(Spectrum({2.0, 1.0}, dom, BoundaryCondition::dirichlet(), {}), Error);
    CHECK_THROWS_AS(Spectrum({NAN}, dom, BoundaryCondition::dirichlet(), {}), Error);
    const Spectrum s({0.0, 0.0, 1.0}, dom, BoundaryCondition::neumann(0), {});
    CHECK(s.kernel_dim() == 2);
}

TEST_CASE("check_le semantics") {
    auto r = check_le("x", "", "", 1.0, 2.0, "ref");
    CHECK(r.holds);
    CHECK(r.margin == 1.0);
    r = check_le("x", "", "", 2.0, 1.0, "ref", 0.5);
    CHECK_FALSE(r.holds);
    r = check_le("x", "", "", 2.0, 1.0, "ref", 1.0);
    CHECK(r.holds);
}

TEST_CASE("fmt_num round trips") {
    for (int i = 0; i < 1000; ++i) {
        const double u = std::fmod(i * 0.6180339887498949, 1.0) * 100 - 50;
        const double x = std::exp(u) * (i % 2 ? 1 : -1);
        CHECK(std::stod(fmt_num(x)) == x);
    }
    CHECK(fmt_num(100) == "100");
}

TEST_CASE("Gauss-Legendre is exact on polynomials") {
    for (int n : {2, 5, 10, 20}) {
        const auto& g = gauss_legendre(n);
        double wsum = 0;
        for (double w : g.w) wsum += w;
        CHECK(wsum == doctest::Approx(2).epsilon(1e-14));
        // degree 2n-1 monomial
        const int p = 2 * n - 2;
        const double v = gauss_fixed([p](double x) { return std::pow(x, p); }, -1, 1, n);
        CHECK(v == doctest::Approx(2.0 / (p + 1)).epsilon(1e-13));
    }
}

TEST_CASE("adaptive quadrature") {
    auto q = gauss_adaptive([](double x) { return std::exp(x); }, 0, 1);
    CHECK(q.value == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
    q = gauss_adaptive([](double x) { return std::sqrt(x); }, 0, 1, 1e-12);
    CHECK(std::abs(q.value - 2.0 / 3) < 1e-11);
    q = gauss_adaptive([](double x) { return std::abs(x - 0.3); }, 0, 1, 1e-13);
    CHECK(std::abs(q.value - (0.09 + 0.49) / 2) < 1e-12);
}

TEST_CASE("Neumaier sum recovers cancelled terms") {
    NeumaierSum s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 2.0);
}
