#include "bilap/semiclassical.hpp"

#include <algorithm>
#include <cmath>

namespace bilap {

namespace {

void require_boundary_dimension(int d) {
    if (d < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1");
    if (d == 1) fail(ErrorCode::Unsupported, "two-term expansion not available for d = 1");
}

double num_g(double t, double a) {
    const double u = 1 + (1 - a) * t * t;
    return std::sqrt(std::max(0.0, 1 - t * t)) * u * u;
}

double den_g(double t, double a) {
    const double v = 1 - (1 - a) * t * t;
    return std::sqrt(1 + t * t) * v * v;
}

double boundary_unit(int d) {
    const double Bm = dimensional_constants(d - 1).B;
    return Bm / (4 * std::pow(2 * kPi, d - 1));
}

void require_dimension_match(int d, const DomainSpec& dom) {
    if (dom.dimension() != d) fail(ErrorCode::InvalidArgument, "dimension does not match the domain");
}

}  // namespace

double f_neumann(double a) { return 4 * a - 1 - 3 * a * a + 2 * (1 - a) * std::sqrt(2 * a * a - 2 * a + 1); }

double g_neumann(double t, double a) {
    if (!(t >= 0 && t <= 1)) fail(ErrorCode::Domain, "t outside [0,1]");
    const double den = den_g(t, a);
    if (den == 0) fail(ErrorCode::Domain, "g has a pole here; use arctan_g");
    return num_g(t, a) / den;
}

double arctan_g(double t, double a) { return std::atan2(num_g(t, a), den_g(t, a)); }

double arctan_inv_g(double t, double a) { return std::atan2(den_g(t, a), num_g(t, a)); }

QuadResult neumann_integral(int d, double a, bool inverse) {
    require_boundary_dimension(d);
    // t = sin(theta) removes the square-root endpoint at t = 1
    auto integrand = [&](double th) {
        const double t = std::sin(th);
        const double v = inverse ? arctan_inv_g(t, a) : arctan_g(t, a);
        return std::pow(t, d - 2) * v * std::cos(th);
    };
    std::vector<double> cuts = {0.0};
    if (a < 0) {
        // split at the pole of g
        const double t0 = 1 / std::sqrt(1 - a);
        cuts.push_back(std::asin(t0));
    }
    cuts.push_back(kPi / 2);
    QuadResult total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const QuadResult q = gauss_adaptive(integrand, cuts[i], cuts[i + 1], 1e-13);
        total.value += q.value;
        total.error += q.error;
    }
    return total;
}

double dirichlet_gamma_ratio(int d) {
    return gamma_fn((d + 1) / 4.0) / (std::sqrt(kPi) * gamma_fn((d + 3) / 4.0));
}

ExpansionCoefficients expansion_coefficients(const BoundaryCondition& bc, int d) {
    require_boundary_dimension(d);
    if (bc.is_pair()) fail(ErrorCode::InvalidArgument, "1D pairs have no d >= 2 expansion");
    bc.validate(d);
    ExpansionCoefficients e;
    e.d = d;
    e.bc = bc;
    e.c0 = std::pow(2 * kPi, -d) * dimensional_constants(d).B;
    const double K = boundary_unit(d);
    switch (bc.kind()) {
        case BcKind::Dirichlet: e.c1 = -K * (1 + dirichlet_gamma_ratio(d)); break;
        case BcKind::Navier: e.c1 = -K; break;
        case BcKind::KuttlerSigillito: e.c1 = K; break;
        case BcKind::Neumann: {
            const double a = bc.poisson_ratio();
            const QuadResult q = neumann_integral(d, a);
            e.c1 = K * (4 * std::pow(f_neumann(a), (1.0 - d) / 4) - 1 - 4 * (d - 1) / kPi * q.value);
            e.quadrature_error = q.error;
            break;
        }
        case BcKind::Pair1D: break;
    }
    return e;
}

double neumann_c1_inverse_form(int d, double a) {
    BoundaryCondition::neumann(a).validate(d);
    const QuadResult q = neumann_integral(d, a, true);
    return boundary_unit(d) * (4 * std::pow(f_neumann(a), (1.0 - d) / 4) - 3 + 4 * (d - 1) / kPi * q.value);
}

QuadResult dirichlet_c1_quadrature(int d) {
    require_boundary_dimension(d);
    const double Bm = dimensional_constants(d - 1).B;
    // radial reduction over the unit ball of R^{d-1}
    auto radial = [&](double rho) { return std::asin(rho * rho) * std::pow(rho, d - 2); };
    const QuadResult q = gauss_adaptive(radial, 0.0, 1.0, 1e-14, 50);
    const double sphere = (d - 1) * Bm;
    const double scale = std::pow(2 * kPi, -d);
    return {scale * (sphere * q.value - kPi * Bm), scale * sphere * q.error};
}

double second_term_factor(const BoundaryCondition& bc, int d) {
    require_boundary_dimension(d);
    bc.validate(d);
    switch (bc.kind()) {
        case BcKind::Dirichlet: return 1 + dirichlet_gamma_ratio(d);
        case BcKind::Navier: return 1;
        case BcKind::KuttlerSigillito: return -1;
        case BcKind::Neumann: {
            const double a = bc.poisson_ratio();
            return -(4 * std::pow(f_neumann(a), (1.0 - d) / 4) - 1 - 4 * (d - 1) / kPi * neumann_integral(d, a).value);
        }
        case BcKind::Pair1D: break;
    }
    fail(ErrorCode::InvalidArgument, "1D pairs have no d >= 2 expansion");
}

double weyl_leading(int d, const DomainSpec& dom, double k) {
    const double C = dimensional_constants(d).C;
    return C * C * std::pow(k / dom.volume(), 4.0 / d);
}

double predict_eigenvalue(const BoundaryCondition& bc, int d, const DomainSpec& dom, int k) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
    require_boundary_dimension(d);
    require_dimension_match(d, dom);
    const auto K = dimensional_constants(d);
    const double Bm = dimensional_constants(d - 1).B;
    const double coef = K.C * K.C * Bm / (d * std::pow(K.B, 1 - 1.0 / d));
    const double kv = k / dom.volume();
    return weyl_leading(d, dom, k) +
           second_term_factor(bc, d) * coef * dom.perimeter() / dom.volume() * std::pow(kv, 3.0 / d);
}

double predict_average(int d, const DomainSpec& dom, int k) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
    require_boundary_dimension(d);
    require_dimension_match(d, dom);
    const auto K = dimensional_constants(d);
    const double Bm = dimensional_constants(d - 1).B;
    const double coef = K.C * K.C * Bm / (d * std::pow(K.B, 1 - 1.0 / d));
    const double kv = k / dom.volume();
    return d / (d + 4.0) * weyl_leading(d, dom, k) +
           d / (d + 3.0) * coef * (1 + dirichlet_gamma_ratio(d)) * dom.perimeter() / dom.volume() *
               std::pow(kv, 3.0 / d);
}

Spectrum predicted_spectrum(const BoundaryCondition& bc, const DomainSpec& dom, int count) {
    if (count < 1) fail(ErrorCode::InvalidArgument, "count must be >= 1");
    std::vector<double> v(count);
    for (int k = 1; k <= count; ++k) v[k - 1] = std::max(0.0, predict_eigenvalue(bc, dom.dimension(), dom, k));
    // negative-coefficient predictions are not monotone at small k
    for (int k = 1; k < count; ++k) v[k] = std::max(v[k], v[k - 1]);
    return Spectrum(std::move(v), dom, bc, {SourceKind::Predicted, 0, 0});
}

}  // namespace bilap
