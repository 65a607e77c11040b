#include "bilap/avp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace bilap {

namespace {

// unit-radius bump normalizations: (d^2+6d+8)/(8 B_d)
constexpr double kBump2 = 3.0 / kPi;
constexpr double kBump1 = 15.0 / 16.0;

double pow_pos(double x, double e) { return x > 0 ? std::pow(x, e) : 0.0; }

int checked_dimension(const DomainSpec& dom, int d) {
    if (d < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1");
    if (d != dom.dimension()) fail(ErrorCode::InvalidArgument, "dimension does not match the domain");
    return d;
}

}  // namespace

// ---- d = 2 corner function ----------------------------------------------------------

double corner_fu(double u, double v) {
    if (std::abs(u) >= 1) return 0;
    const double w2 = 1 - u * u, w = std::sqrt(w2);
    if (v <= -w) return 0;
    if (v >= w) return 16 * kBump2 * w2 * w2 * w / 15;
    const double v2 = v * v;
    return kBump2 * (w2 * w2 * v - 2 * w2 * v2 * v / 3 + v2 * v2 * v / 5 + 8 * w2 * w2 * w / 15);
}

double corner_fuu(double u, double v) {
    if (std::abs(u) >= 1) return 0;
    const double w2 = 1 - u * u, w = std::sqrt(w2);
    if (v <= -w) return 0;
    if (v >= w) return -16 * kBump2 * u * w2 * w / 3;
    return -u * kBump2 * (4 * w2 * v - 4 * v * v * v / 3 + 8 * w2 * w / 3);
}

double corner_cdf(double u, double v) {
    if (u <= -1 || v <= -1) return 0;
    u = std::min(u, 1.0);
    v = std::min(v, 1.0);
    // integrate F_u over s = sin(theta) in [-1, u], split where the column height meets |v|
    const double top = std::asin(u);
    std::vector<double> cuts = {-kPi / 2};
    if (std::abs(v) < 1) {
        const double k = std::acos(std::abs(v));
        for (double c : {-k, k})
            if (c > cuts.back() && c < top) cuts.push_back(c);
    }
    cuts.push_back(top);
    auto f = [v](double th) { return corner_fu(std::sin(th), v) * std::cos(th); };
    double s = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += gauss_fixed(f, cuts[i], cuts[i + 1], 24);
    return s;
}

ProfileSample mollified_sample(const DomainSpec& dom, double h, double x, double y) {
    if (dom.is_interval()) fail(ErrorCode::InvalidArgument, "rectangle domain required");
    if (!(h > 0) || h > dom.inradius()) fail(ErrorCode::Domain, "h outside (0, inradius]");
    const double e = h / 2;
    const double us[2] = {(x - e) / e, (x - (dom.lx() - e)) / e};
    const double vs[2] = {(y - e) / e, (y - (dom.ly() - e)) / e};
    ProfileSample s;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double sg = (i + j) % 2 ? -1.0 : 1.0;
            const double u = us[i], v = vs[j];
            s.value += sg * corner_cdf(u, v);
            s.gx += sg * corner_fu(u, v) / e;
            s.gy += sg * corner_fu(v, u) / e;
            s.lap += sg * (corner_fuu(u, v) + corner_fuu(v, u)) / (e * e);
        }
    return s;
}

// ---- inscribed ball ----------------------------------------------------------------------

TestFunctionProfile inscribed_ball_profile(const DomainSpec& dom) {
    const int d = dom.dimension();
    const double r = dom.inradius();
    if (!(r > 0)) fail(ErrorCode::Domain, "domain has no positive inradius");
    const auto K = dimensional_constants(d);
    const double dd = d;
    TestFunctionProfile p;
    p.kind = ProfileKind::InscribedBall;
    p.dom = dom;
    p.d = d;
    p.r = r;
    p.l2_sq = 384 * std::pow(r, dd) * K.B / ((dd + 2) * (dd + 4) * (dd + 6) * (dd + 8));
    p.grad_l2_sq = p.l2_sq * dd * (dd + 8) / (3 * r * r);
    // d(d+2) agrees with the tabulated 8 + d(d-2) only at d = 2; direct integration gives d(d+2)
    p.lap_l2_sq = p.l2_sq * dd * (dd + 2) * (dd + 6) * (dd + 8) / (6 * r * r * r * r);
    p.sup_sq = 1;
    p.rho = p.l2_sq / (dom.volume() * p.sup_sq);
    p.provenance = NormProvenance::ClosedForm;
    p.min_value = 0;
    p.max_value = 1;
    return p;
}

TestFunctionProfile inscribed_ball_profile_quadrature(const DomainSpec& dom) {
    TestFunctionProfile p = inscribed_ball_profile(dom);
    const int d = p.d;
    const double r = p.r, area = d * dimensional_constants(d).B;
    auto psi = [r](double t) {
        const double q = t * t / (r * r) - 1;
        return q * q;
    };
    auto dpsi = [r](double t) { return 4 * t * (t * t / (r * r) - 1) / (r * r); };
    auto lap = [r, d](double t) { return 4 * d * (t * t / (r * r) - 1) / (r * r) + 8 * t * t / (r * r * r * r); };
    auto radial = [&](auto g) {
        return area * gauss_fixed([&](double t) { return g(t) * std::pow(t, d - 1); }, 0.0, r, 24);
    };
    p.l2_sq = radial([&](double t) { return psi(t) * psi(t); });
    p.grad_l2_sq = radial([&](double t) { return dpsi(t) * dpsi(t); });
    p.lap_l2_sq = radial([&](double t) { return lap(t) * lap(t); });
    p.rho = p.l2_sq / (dom.volume() * p.sup_sq);
    p.provenance = NormProvenance::Quadrature;
    return p;
}

// ---- mollified indicator ------------------------------------------------------------------------

namespace {

struct UnitIntegrals {
    // edge profile: int phi^2, phi'^2, phi''^2 over [-1,1]
    double e[3] = {0, 0, 0}, e_err[3] = {0, 0, 0};
    // corner box [-1,1]^2 (d = 2): int F^2, |grad F|^2, (Lap F)^2
    double c[3] = {0, 0, 0}, c_err[3] = {0, 0, 0};
    double grad_sup = 0, lap_sup = 0, vmin = 1, vmax = 0;
};

struct Trap {
    double fine = 0, coarse = 0;
};

UnitIntegrals unit_integrals(int d, int N) {
    UnitIntegrals U;
    const double step = 2.0 / N;
    auto w1 = [N](int i) { return (i == 0 || i == N) ? 0.5 : 1.0; };
    // edge profile and its derivatives
    auto edge = [d](double s, double out[3]) {
        if (d == 1) {
            const double q = 1 - s * s;
            out[0] = kBump1 * (s - 2 * s * s * s / 3 + s * s * s * s * s / 5 + 8.0 / 15);
            out[1] = kBump1 * q * q;
            out[2] = -4 * kBump1 * s * q;
        } else {
            out[0] = corner_cdf(s, 1.0);
            out[1] = corner_fu(s, 1.0);
            out[2] = corner_fuu(s, 1.0);
        }
    };
    Trap et[3];
    for (int i = 0; i <= N; ++i) {
        double f[3];
        edge(-1 + i * step, f);
        U.vmin = std::min(U.vmin, f[0]);
        U.vmax = std::max(U.vmax, f[0]);
        U.grad_sup = std::max(U.grad_sup, std::abs(f[1]));
        U.lap_sup = std::max(U.lap_sup, std::abs(f[2]));
        for (int q = 0; q < 3; ++q) {
            const double v = f[q] * f[q];
            et[q].fine += w1(i) * step * v;
            if (i % 2 == 0) et[q].coarse += ((i == 0 || i == N) ? 0.5 : 1.0) * 2 * step * v;
        }
    }
    for (int q = 0; q < 3; ++q) {
        U.e[q] = et[q].fine;
        U.e_err[q] = std::abs(et[q].fine - et[q].coarse);
    }
    if (d == 1) return U;
    Trap ct[3];
    for (int j = 0; j <= N; ++j) {
        const double v = -1 + j * step;
        for (int i = 0; i <= N; ++i) {
            const double u = -1 + i * step;
            const double F = corner_cdf(u, v);
            const double fu = corner_fu(u, v), fv = corner_fu(v, u);
            const double lap = corner_fuu(u, v) + corner_fuu(v, u);
            U.vmin = std::min(U.vmin, F);
            U.vmax = std::max(U.vmax, F);
            U.grad_sup = std::max(U.grad_sup, std::hypot(fu, fv));
            U.lap_sup = std::max(U.lap_sup, std::abs(lap));
            const double vals[3] = {F * F, fu * fu + fv * fv, lap * lap};
            const double w = w1(i) * w1(j) * step * step;
            const bool coarse = i % 2 == 0 && j % 2 == 0;
            const double wc = coarse ? w1(i) * w1(j) * 4 * step * step : 0;
            for (int q = 0; q < 3; ++q) {
                ct[q].fine += w * vals[q];
                ct[q].coarse += wc * vals[q];
            }
        }
    }
    for (int q = 0; q < 3; ++q) {
        U.c[q] = ct[q].fine;
        U.c_err[q] = std::abs(ct[q].fine - ct[q].coarse);
    }
    return U;
}

const UnitIntegrals& cached_unit_integrals(int d, int N) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, UnitIntegrals> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(d, N);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, unit_integrals(d, N)).first;
    return it->second;
}

}  // namespace

TestFunctionProfile mollified_indicator_profile(const DomainSpec& dom, double h, int grid_res) {
    const double r = dom.inradius();
    if (!(h > 0) || h > r) fail(ErrorCode::Domain, "h must lie in (0, inradius]");
    if (grid_res < 64 || grid_res % 2) fail(ErrorCode::Resolution, "grid_res must be even and >= 64");
    const int d = dom.dimension();
    const UnitIntegrals& U = cached_unit_integrals(d, grid_res);
    const double e = h / 2;
    TestFunctionProfile p;
    p.kind = ProfileKind::Mollified;
    p.dom = dom;
    p.d = d;
    p.h = h;
    p.grid_res = grid_res;
    double err[3];
    if (d == 1) {
        const double L = dom.lx();
        p.l2_sq = (L - 2 * h) + 2 * e * U.e[0];
        p.grad_l2_sq = 2 * U.e[1] / e;
        p.lap_l2_sq = 2 * U.e[2] / (e * e * e);
        err[0] = 2 * e * U.e_err[0];
        err[1] = 2 * U.e_err[1] / e;
        err[2] = 2 * U.e_err[2] / (e * e * e);
    } else {
        const double Lx = dom.lx(), Ly = dom.ly();
        const double strips = 2 * (Lx - 2 * h) + 2 * (Ly - 2 * h);
        p.l2_sq = (Lx - 2 * h) * (Ly - 2 * h) + strips * e * U.e[0] + 4 * e * e * U.c[0];
        p.grad_l2_sq = strips * U.e[1] / e + 4 * U.c[1];
        p.lap_l2_sq = strips * U.e[2] / (e * e * e) + 4 * U.c[2] / (e * e);
        err[0] = strips * e * U.e_err[0] + 4 * e * e * U.c_err[0];
        err[1] = strips * U.e_err[1] / e + 4 * U.c_err[1];
        err[2] = strips * U.e_err[2] / (e * e * e) + 4 * U.c_err[2] / (e * e);
    }
    p.est_rel_err = std::max({err[0] / p.l2_sq, err[1] / p.grad_l2_sq, err[2] / p.lap_l2_sq});
    if (p.est_rel_err > 1e-4)
        fail(ErrorCode::Resolution, "mollified profile quadrature error " + fmt_num(p.est_rel_err) + " exceeds 1e-4");
    p.provenance = NormProvenance::Quadrature;
    p.sup_sq = 1;
    p.rho = p.l2_sq / dom.volume();
    p.grad_sup = U.grad_sup / e;
    p.lap_sup = U.lap_sup / (e * e);
    p.min_value = std::min(0.0, U.vmin);
    p.max_value = std::max(1.0, U.vmax);
    if (U.vmin < -1e-12 || U.vmax > 1 + 1e-12) fail(ErrorCode::Internal, "mollified profile leaves [0,1]");
    return p;
}

// ---- bounds -----------------------------------------------------------------------------------------

namespace {

struct Norms {
    double l2, grad, lap;
};

Norms inflated(const TestFunctionProfile& p, Inflate mode) {
    const double e = p.est_rel_err;
    switch (mode) {
        case Inflate::ForLowerBound: return {p.l2_sq * (1 - e), p.grad_l2_sq * (1 + e), p.lap_l2_sq * (1 + e)};
        case Inflate::ForUpperBound: return {p.l2_sq * (1 + e), p.grad_l2_sq * (1 - e), p.lap_l2_sq * (1 - e)};
        case Inflate::None: break;
    }
    return {p.l2_sq, p.grad_l2_sq, p.lap_l2_sq};
}

}  // namespace

double avg_upper_bound(const TestFunctionProfile& p, int k, Inflate mode) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
    const Norms n = inflated(p, mode);
    const double V = p.dom.volume();
    const double rho = n.l2 / (V * p.sup_sq);
    if (!(rho < 1)) fail(ErrorCode::Precondition, "rho(phi) must be < 1");
    const int d = p.d;
    const double C = dimensional_constants(d).C, kv = k / V;
    return d / (d + 4.0) * C * C * std::pow(kv, 4.0 / d) * std::pow(rho, -4.0 / d) +
           2 * (n.grad / n.l2) * C * std::pow(kv, 2.0 / d) * std::pow(rho, -2.0 / d) + n.lap / n.l2;
}

double riesz_lower_bound(const TestFunctionProfile& p, double z, Inflate mode) {
    if (!(z > 0)) fail(ErrorCode::InvalidArgument, "z must be > 0");
    const Norms n = inflated(p, mode);
    const int d = p.d;
    const double w = std::pow(2 * kPi, -d) * dimensional_constants(d).B;
    const double s = z - n.lap / n.l2;
    return 4.0 / (d + 4) * w * n.l2 * pow_pos(s, d / 4.0 + 1) - 2 * w * n.grad * pow_pos(s, d / 4.0 + 0.5);
}

PartitionBound partition_lower_bound(const TestFunctionProfile& p, double t, Inflate mode) {
    if (!(t > 0)) fail(ErrorCode::InvalidArgument, "t must be > 0");
    const Norms n = inflated(p, mode);
    const int d = p.d;
    const double w = std::pow(2 * kPi, -d) * dimensional_constants(d).B;
    const double g1 = gamma_fn(2 + d / 4.0), g2 = gamma_fn(1.5 + d / 4.0);
    const double decay = std::exp(-n.lap / n.l2 * t);
    const double V = p.dom.volume();
    PartitionBound b;
    b.weighted = 4.0 / (d + 4) * w * g1 * n.l2 * decay * std::pow(t, -d / 4.0) -
                 2 * w * g2 * n.grad * decay * std::pow(t, 0.5 - d / 4.0);
    const double lead = 4.0 / (d + 4) * w * g1 * std::pow(t, -d / 4.0);
    b.unweighted = lead * V - lead * ((t * n.lap + V * p.sup_sq - n.l2) / p.sup_sq) -
                   2 * w * g2 * (n.grad / n.l2) * std::pow(t, 0.5 - d / 4.0);
    return b;
}

double rough_bound(const DomainSpec& dom, int d, double k) {
    checked_dimension(dom, d);
    if (!(k >= 1)) fail(ErrorCode::InvalidArgument, "k must be >= 1");
    const auto K = dimensional_constants(d);
    const double V = dom.volume(), kv = k / V, r = dom.inradius();
    return (d / (d + 4.0) * K.C * K.C * std::pow(K.a * V, 4.0 / d) * std::pow(kv, 4.0 / d) +
            2 * K.C * std::pow(K.b * V, 2.0 / d) * std::pow(kv, 2.0 / d) + K.c) /
           (r * r * r * r);
}

double explicit_sum_stated_threshold(const DomainSpec& dom, int d) {
    checked_dimension(dom, d);
    const auto K = dimensional_constants(d);
    return dom.volume() * std::pow(std::sqrt(double(d)) * K.A / (2 * std::sqrt(K.C) * dom.inradius()), d);
}

double explicit_sum_h_threshold(const DomainSpec& dom, int d, double eps) {
    checked_dimension(dom, d);
    const auto K = dimensional_constants(d);
    return dom.volume() * std::pow(std::sqrt((d + 4) / 4.0) * K.A * eps / (std::sqrt(K.C) * dom.inradius()), d);
}

double explicit_sum_threshold(const DomainSpec& dom, int d, double eps) {
    return std::max(explicit_sum_stated_threshold(dom, d), explicit_sum_h_threshold(dom, d, eps));
}

double h_of_k(const DomainSpec& dom, int d, double k, double eps) {
    checked_dimension(dom, d);
    if (!(k > 0)) fail(ErrorCode::InvalidArgument, "k must be > 0");
    if (!(eps > 0)) fail(ErrorCode::InvalidArgument, "eps must be > 0");
    const auto K = dimensional_constants(d);
    return std::sqrt((d + 4) / 4.0) * K.A / std::sqrt(K.C) * std::pow(k / dom.volume(), -1.0 / d) * eps;
}

double explicit_second_coefficient(const DomainSpec& dom, int d) {
    checked_dimension(dom, d);
    const auto K = dimensional_constants(d);
    return K.M * dom.perimeter() / dom.volume() * std::pow(K.C, 1.5);
}

ExplicitSum explicit_sum_bound(const DomainSpec& dom, int d, double k, double eps) {
    checked_dimension(dom, d);
    if (d < 2) fail(ErrorCode::Unsupported, "explicit sum bound needs d >= 2");
    ExplicitSum s;
    s.threshold = explicit_sum_threshold(dom, d, eps);
    if (!(k >= s.threshold))
        fail(ErrorCode::Threshold, "k = " + fmt_num(k) + " below threshold " + fmt_num(s.threshold));
    const auto K = dimensional_constants(d);
    const double V = dom.volume(), P = dom.perimeter(), kv = k / V;
    const double C = K.C, A2 = K.A * K.A, At2 = K.Atilde * K.Atilde;
    s.h = h_of_k(dom, d, k, eps);
    s.tube = dom.tube_volume(s.h);
    const double h = s.h, w = s.tube, rest = V - w;
    s.main = d / (d + 4.0) * C * C * std::pow(kv, 4.0 / d);
    const double plateau = d <= 3 ? 2.0 / (d + 4) * C * C * std::pow(kv, 4.0 / d) * (2 * V / rest) * (w / rest)
                                  : 4.0 / (d + 4) * C * C * std::pow(kv, 4.0 / d) * (w / rest);
    const double total = s.main + plateau + 2 * A2 * w / (h * h * rest) * C * std::pow(kv, 2.0 / d) * std::pow(V / rest, 2.0 / d) +
                         At2 * w / (h * h * h * h * rest);
    const double bracket = eps + 2 / eps + 4.0 / (d + 4) * At2 / (A2 * A2) / (eps * eps * eps);
    s.second = std::sqrt(4.0 / (d + 4)) * K.A * std::pow(C, 1.5) * std::pow(kv, 3.0 / d) * P / V * bracket;
    s.remainder = total - s.main - s.second;
    return s;
}

IndividualBounds individual_bounds(const DomainSpec& dom, int d, double A, int k, double k0) {
    checked_dimension(dom, d);
    if (!(A > 0)) fail(ErrorCode::InvalidArgument, "A must be > 0");
    if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
    if (k < k0) fail(ErrorCode::Threshold, "k = " + fmt_int(k) + " below k0 = " + fmt_num(k0));
    const double C2 = std::pow(dimensional_constants(d).C, 2), V = dom.volume();
    const double v4 = std::pow(V, 4.0 / d), v3 = std::pow(V, 3.0 / d), dd = d;
    const double kk = k;
    const double c7 = 6 * (dd + 1) / (dd * (dd + 4)) * C2 / v4 + 2 * A / v3;
    const double c3lo = C2 / (dd * (dd + 4) * v4) + (dd + 3) / dd * A / v3;
    const double c3hi = 9 * C2 / (dd * (dd + 4) * v4) + (dd + 3) / dd * A / v3;
    const double c5 = 1.5 * (9 + 12 * dd) / (4 * dd * dd) / v3;
    const double c2lo = 9 * A / (16 * dd * dd) / v3, c2hi = 81 * A / (16 * dd * dd) / v3;
    IndividualBounds b;
    b.weyl = C2 * std::pow(kk / V, 4.0 / d);
    const double p7 = std::pow(kk, 3.5 / d), p3 = std::pow(kk, 3.0 / d), p5 = std::pow(kk, 2.5 / d),
                 p2 = std::pow(kk, 2.0 / d);
    b.lower = b.weyl - c7 * p7 + c3lo * p3 - c5 * p5 + c2lo * p2;
    b.upper = b.weyl + c7 * p7 + c3hi * p3 + c5 * p5 + c2hi * p2;
    b.envelope_constant = c7 + c3hi + c5 + c2hi;
    b.envelope = b.envelope_constant * p7;
    return b;
}

// ---- Neumann refinement ------------------------------------------------------------------------------

KrogerLaptev kroeger_laptev_refined(const Spectrum& spec, int d, int k) {
    if (d < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1");
    if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
    if (spec.size() < static_cast<std::size_t>(k) + 1)
        fail(ErrorCode::InsufficientSpectrum, "spectrum needs at least k+1 entries");
    const double C = dimensional_constants(d).C, V = spec.domain().volume();
    KrogerLaptev r;
    r.m_k = C * C * std::pow(k / V, 4.0 / d);
    NeumaierSum sum;
    for (int j = 0; j < k; ++j) sum.add(spec[j]);
    r.S_k = (d + 4.0) / d * sum.value() / k / r.m_k;
    r.next = spec[k];
    r.kl_holds = r.S_k <= 1;
    r.young_margin = r.m_k * (1 - r.S_k) - std::pow(std::sqrt(r.next) - std::sqrt(r.m_k), 2);
    if (r.kl_holds) {
        const double q = std::sqrt(1 - r.S_k);
        r.lo = r.m_k * (1 - q) * (1 - q);
        r.hi = r.m_k * (1 + q) * (1 + q);
        r.in_interval = r.lo <= r.next && r.next <= r.hi;
    } else {
        r.lo = r.hi = std::numeric_limits<double>::quiet_NaN();
        r.in_interval = false;
    }
    return r;
}

YoungPair young_refined(double p, double x) {
    if (!(p >= 0) || !(x >= 0)) fail(ErrorCode::InvalidArgument, "p and x must be >= 0");
    const double s = 1 - std::sqrt(x);
    return {(p + 1) * x - p - std::pow(x, p + 1), -p * s * s};
}

// ---- Navier cross inequalities ---------------------------------------------------------------------------

std::vector<BoundReport> navier_cross_inequalities(const Spectrum& lap_dirichlet, const Spectrum& lap_neumann,
                                                   const std::vector<NavierEnergy>& energies, int n, int m, int N,
                                                   double tol_prima, double tol_seconda) {
    if (n < 1 || m < 1 || N < 0) fail(ErrorCode::InvalidArgument, "need n, m >= 1 and N >= 0");
    if (static_cast<std::size_t>(N) > energies.size())
        fail(ErrorCode::InsufficientSpectrum, "N exceeds the available energies");
    if (lap_dirichlet.size() < static_cast<std::size_t>(n) + 1 || lap_neumann.size() < static_cast<std::size_t>(m) + 1)
        fail(ErrorCode::InsufficientSpectrum, "spectra too short for n, m");
    const double ln = lap_dirichlet[n], mm = lap_neumann[m];
    NeumaierSum l1, r1, l2, r2;
    for (int j = 0; j < n; ++j) l1.add(ln - lap_dirichlet[j]);
    for (int j = 1; j < m; ++j) l2.add((mm - lap_neumann[j]) * lap_neumann[j]);
    for (int k = 0; k < N; ++k) {
        r1.add(ln - energies[k].grad);
        r2.add(mm * energies[k].grad - energies[k].hessian);
    }
    const std::string p1 = "n=" + fmt_int(n) + ";m=" + fmt_int(m), p2 = "N=" + fmt_int(N);
    return {check_le("navier.prima", p1, p2, r1.value(), l1.value(), "navier.prima", tol_prima),
            check_le("navier.seconda", p1, p2, r2.value(), l2.value(), "navier.seconda", tol_seconda)};
}

}  // namespace bilap
