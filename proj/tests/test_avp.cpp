#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bilap/avp.hpp"

using namespace bilap;

namespace {

constexpr double kBump = 3 / kPi;

// radial antiderivative of K (1 - rho^2)^2 rho
double G(double r) { return kBump * (r * r / 2 - r * r * r * r / 2 + r * r * r * r * r * r / 6); }

// indicator of [e, Lx-e] x [e, Ly-e] convolved with the radius-e bump, integrated in polar
// coordinates around (x, y): each ray meets the box in one interval
double polar_mollified(double Lx, double Ly, double e, double x, double y, int n_theta = 20000) {
    const double lo[2] = {e, e}, hi[2] = {Lx - e, Ly - e}, p[2] = {x, y};
    double sum = 0;
    for (int t = 0; t < n_theta; ++t) {
        const double th = 2 * kPi * (t + 0.5) / n_theta;
        const double w[2] = {std::cos(th), std::sin(th)};
        double a = 0, b = 1;
        for (int i = 0; i < 2; ++i) {
            // lo <= p - e r w <= hi
            const double s = -e * w[i];
            if (std::abs(s) < 1e-300) {
                if (p[i] < lo[i] || p[i] > hi[i]) b = -1;
                continue;
            }
            double r1 = (lo[i] - p[i]) / s, r2 = (hi[i] - p[i]) / s;
            if (r1 > r2) std::swap(r1, r2);
            a = std::max(a, r1);
            b = std::min(b, r2);
        }
        if (b > a) sum += G(b) - G(a);
    }
    return sum * 2 * kPi / n_theta;
}

struct Norms {
    double l2 = 0, grad = 0, lap = 0;
};

// midpoint rule on the nine collar blocks of the rectangle
Norms sampled_norms(const DomainSpec& dom, double h, int n) {
    auto edges = [&](double L) {
        std::vector<std::pair<double, double>> cells;
        for (int i = 0; i < n; ++i) cells.push_back({h * i / n, h / n});
        for (int i = 0; i < 4; ++i) cells.push_back({h + (L - 2 * h) * i / 4, (L - 2 * h) / 4});
        for (int i = 0; i < n; ++i) cells.push_back({L - h + h * i / n, h / n});
        return cells;
    };
    const auto cx = edges(dom.lx()), cy = edges(dom.ly());
    Norms out;
    for (const auto& [x0, wx] : cx)
        for (const auto& [y0, wy] : cy) {
            const auto s = mollified_sample(dom, h, x0 + wx / 2, y0 + wy / 2);
            const double w = wx * wy;
            out.l2 += w * s.value * s.value;
            out.grad += w * (s.gx * s.gx + s.gy * s.gy);
            out.lap += w * s.lap * s.lap;
        }
    return out;
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("inscribed ball norms: closed form against radial quadrature") {
    for (const auto& dom : {DomainSpec::square(1.0), DomainSpec::rectangle(2.0, 0.7), DomainSpec::interval(3.0)}) {
        const auto a = inscribed_ball_profile(dom), b = inscribed_ball_profile_quadrature(dom);
        CHECK(a.l2_sq == doctest::Approx(b.l2_sq).epsilon(1e-8));
        CHECK(a.grad_l2_sq == doctest::Approx(b.grad_l2_sq).epsilon(1e-8));
        CHECK(a.lap_l2_sq == doctest::Approx(b.lap_l2_sq).epsilon(1e-8));
        CHECK(a.rho < 1);
    }
    // at d = 2 the Laplacian ratio is the tabulated c_2 / r^4
    const auto sq = inscribed_ball_profile(DomainSpec::square(1.0));
    CHECK(sq.lap_ratio() == doctest::Approx(dimensional_constants(2).c * 16).epsilon(1e-14));
    CHECK(sq.grad_ratio() == doctest::Approx(80.0 / 3).epsilon(1e-14));
    // unit disk, d = 2, by hand: int (1-r^2)^4 2 pi r dr = pi/5
    const auto u = inscribed_ball_profile(DomainSpec::square(2.0));
    CHECK(u.l2_sq == doctest::Approx(kPi / 5).epsilon(1e-14));
    // |grad|^2 = 16 r^2 (1-r^2)^2 -> 16 pi / 12 ... integral 2 pi * 16 * 1/24
    CHECK(u.grad_l2_sq == doctest::Approx(2 * kPi * 16.0 / 24).epsilon(1e-14));
}

TEST_CASE("corner function values") {
    CHECK(corner_cdf(1, 1) == doctest::Approx(1).epsilon(1e-12));
    CHECK(corner_cdf(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(corner_cdf(0, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(corner_cdf(-1, 0.3) == doctest::Approx(0).scale(1));
    // symmetric in its arguments
    CHECK(corner_cdf(0.3, -0.2) == doctest::Approx(corner_cdf(-0.2, 0.3)).epsilon(1e-12));
}

TEST_CASE("mollified profile against a polar convolution oracle") {
    const auto dom = DomainSpec::rectangle(1.0, 0.8);
    const double h = 0.2, e = h / 2;
    const double pts[][2] = {{0.05, 0.05}, {0.02, 0.4}, {0.11, 0.13}, {0.5, 0.4}, {0.97, 0.75}, {0.15, 0.71}, {0.19, 0.03}};
    for (const auto& p : pts) {
        const auto s = mollified_sample(dom, h, p[0], p[1]);
        CHECK(s.value == doctest::Approx(polar_mollified(1.0, 0.8, e, p[0], p[1])).epsilon(1e-7).scale(1));
        // derivatives are consistent with the values
        const double d = 1e-4;
        auto v = [&](double x, double y) { return mollified_sample(dom, h, x, y).value; };
        const double gx = (v(p[0] + d, p[1]) - v(p[0] - d, p[1])) / (2 * d);
        const double gy = (v(p[0], p[1] + d) - v(p[0], p[1] - d)) / (2 * d);
        CHECK(std::abs(s.gx - gx) < 1e-5 / e);
        CHECK(std::abs(s.gy - gy) < 1e-5 / e);
        const double dl = 1e-3;
        const double lap = (v(p[0] + dl, p[1]) + v(p[0] - dl, p[1]) + v(p[0], p[1] + dl) + v(p[0], p[1] - dl) -
                            4 * v(p[0], p[1])) / (dl * dl);
        CHECK(std::abs(s.lap - lap) < 1e-3 / (e * e));
    }
}

TEST_CASE("mollified profile norms against a direct quadrature of samples") {
    for (double h : {0.25, 0.05}) {
        const auto dom = DomainSpec::square(1.0);
        const auto p = mollified_indicator_profile(dom, h);
        const auto q = sampled_norms(dom, h, 300);
        CHECK(p.l2_sq == doctest::Approx(q.l2).epsilon(1e-5));
        CHECK(p.grad_l2_sq == doctest::Approx(q.grad).epsilon(1e-4));
        CHECK(p.lap_l2_sq == doctest::Approx(q.lap).epsilon(1e-3));
        CHECK(p.est_rel_err <= 1e-4);
        CHECK(p.min_value >= -1e-12);
        CHECK(p.max_value <= 1 + 1e-12);
    }
}

TEST_CASE("error classes") {
    const auto sq = DomainSpec::square(1.0);
    CHECK(code_of([&] { mollified_indicator_profile(sq, 0.6); }) == ErrorCode::Domain);
    CHECK(code_of([&] { mollified_indicator_profile(sq, 0.5, 63); }) == ErrorCode::Resolution);
    CHECK(code_of([&] { mollified_indicator_profile(sq, 0.5, 64); }) == ErrorCode::Resolution);
    CHECK(code_of([&] { explicit_sum_bound(sq, 2, 1.0); }) == ErrorCode::Threshold);
    CHECK(code_of([&] { explicit_sum_bound(DomainSpec::interval(1), 1, 1e6); }) == ErrorCode::Unsupported);
    CHECK(code_of([&] { individual_bounds(sq, 2, 10, 3, 5.0); }) == ErrorCode::Threshold);
    TestFunctionProfile fat = inscribed_ball_profile(sq);
    fat.l2_sq = 2 * sq.volume();
    CHECK(code_of([&] { avg_upper_bound(fat, 10); }) == ErrorCode::Precondition);
}

TEST_CASE("explicit-sum thresholds") {
    const auto sq = DomainSpec::square(1.0);
    const double th = explicit_sum_h_threshold(sq, 2);
    // at the h threshold the collar width equals the inradius
    CHECK(h_of_k(sq, 2, th) == doctest::Approx(sq.inradius()).epsilon(1e-12));
    CHECK(explicit_sum_threshold(sq, 2) == std::max(th, explicit_sum_stated_threshold(sq, 2)));
    const double k = std::ceil(explicit_sum_threshold(sq, 2));
    const auto s = explicit_sum_bound(sq, 2, k);
    CHECK(s.total() == doctest::Approx(s.main + s.second + s.remainder));
    CHECK(s.h <= sq.inradius());
    CHECK(s.main == doctest::Approx(16 * kPi * kPi * k * k / 3).epsilon(1e-12));
}

TEST_CASE("rough bound is the inscribed-ball bound without inflation") {
    for (const auto& dom : {DomainSpec::square(1.0), DomainSpec::rectangle(3.0, 1.0)})
        for (int k : {1, 7, 100}) {
            const auto p = inscribed_ball_profile(dom);
            CHECK(rough_bound(dom, 2, k) == doctest::Approx(avg_upper_bound(p, k, Inflate::None)).epsilon(1e-12));
        }
}

TEST_CASE("Riesz and partition bounds vanish below the spectral shift") {
    const auto p = inscribed_ball_profile(DomainSpec::square(1.0));
    const double shift = p.lap_l2_sq / p.l2_sq;
    CHECK(riesz_lower_bound(p, 0.5 * shift) == 0);
    CHECK(riesz_lower_bound(p, 1e9) > 0);
    const auto pb = partition_lower_bound(p, 1e-4);
    CHECK(pb.weighted > 0);
    CHECK(pb.weighted >= pb.unweighted);
}

TEST_CASE("refined Young inequality") {
    CHECK(young_refined(0, 0.7).y == doctest::Approx(0).scale(1));
    CHECK(young_refined(0, 0.7).bound == doctest::Approx(0).scale(1));
    CHECK(young_refined(1, 0).y == -1);
    CHECK(young_refined(1, 0).bound == -1);
    CHECK(young_refined(2, 4).y == doctest::Approx(-54));
    CHECK(young_refined(2, 4).bound == doctest::Approx(-2));
    for (double p : {0.5, 1.0, 3.0})
        for (double x : {0.0, 0.2, 1.0, 2.5, 9.0}) {
            const auto r = young_refined(p, x);
            CHECK(r.y <= r.bound + 1e-12 * (1 + std::abs(r.y)));
        }
}

TEST_CASE("Kroger-Laptev on the 1D Neumann Laplacian squared") {
    // (pi j)^4, j = 0, 1, ... ; Weyl constant pi^2 in d = 1
    std::vector<double> v;
    for (int j = 0; j < 60; ++j) v.push_back(std::pow(kPi * j, 4));
    const Spectrum s(v, DomainSpec::interval(1.0), BoundaryCondition::pair(2, 3), {SourceKind::Exact, 0, 0});
    CHECK(dimensional_constants(1).C == doctest::Approx(kPi * kPi));
    for (int k : {1, 5, 30, 59}) {
        const auto r = kroeger_laptev_refined(s, 1, k);
        double sum = 0;
        for (int j = 0; j < k; ++j) sum += std::pow(double(j), 4);
        CHECK(r.S_k == doctest::Approx(5 * sum / std::pow(double(k), 5)).epsilon(1e-12));
        CHECK(r.kl_holds);
        CHECK(r.in_interval);
        CHECK(r.young_margin >= -1e-9 * r.m_k);
    }
    CHECK(code_of([&] { kroeger_laptev_refined(s, 1, 60); }) == ErrorCode::InsufficientSpectrum);
}
