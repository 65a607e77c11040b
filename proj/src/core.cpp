#include "bilap/core.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

namespace bilap {

double gamma_fn(double x) {
    static constexpr std::array<double, 9> p = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (!(x > 0.0) && std::floor(x) == x) fail(ErrorCode::Domain, "gamma pole");
    if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
    const double z = x - 1.0;
    double s = p[0];
    for (int i = 1; i < 9; ++i) s += p[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * s;
}

DimensionalConstants dimensional_constants(int d) {
    if (d < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1");
    const double dd = d;
    DimensionalConstants k;
    k.d = d;
    k.B = std::pow(kPi, dd / 2) / gamma_fn(1 + dd / 2);
    k.C = 4 * kPi * kPi * std::pow(k.B, -2.0 / dd);
    k.A = std::sqrt(8 * dd * (dd + 2) * (dd + 4) / (dd + 6));
    k.Atilde = std::sqrt(64 * dd * dd * (dd + 4) * (dd + 4) * std::pow(dd / (dd + 2), dd));
    k.a = (dd + 2) * (dd + 4) * (dd + 6) * (dd + 8) / (384 * k.B);
    k.b = k.a * std::pow(dd * (dd + 8) / 3, dd / 2);
    k.c = (8 + dd * (dd - 2)) * (dd + 6) * (dd + 8) / 6;
    k.M = 8 * std::sqrt(dd * (dd + 2) / (dd + 6)) *
          (2 + (dd + 6) * (dd + 6) / ((dd + 2) * (dd + 2) * (dd + 4)) * std::pow(dd / (dd + 2), dd));
    return k;
}

// ---- boundary conditions ---------------------------------------------------

BoundaryCondition BoundaryCondition::dirichlet() { return {}; }

BoundaryCondition BoundaryCondition::navier(double a) {
    BoundaryCondition b;
    b.kind_ = BcKind::Navier;
    b.a_ = a;
    return b;
}

BoundaryCondition BoundaryCondition::kuttler_sigillito(double a) {
    BoundaryCondition b;
    b.kind_ = BcKind::KuttlerSigillito;
    b.a_ = a;
    return b;
}

BoundaryCondition BoundaryCondition::neumann(double a) {
    BoundaryCondition b;
    b.kind_ = BcKind::Neumann;
    b.a_ = a;
    return b;
}

BoundaryCondition BoundaryCondition::pair(int i, int j) {
    if (i < 0 || j > 3 || i >= j) fail(ErrorCode::InvalidArgument, "invalid 1D pair");
    BoundaryCondition b;
    b.kind_ = BcKind::Pair1D;
    b.p_ = {i, j};
    return b;
}

OneDPair BoundaryCondition::pair_indices() const {
    if (kind_ != BcKind::Pair1D) fail(ErrorCode::InvalidArgument, "not a 1D pair");
    return p_;
}

void BoundaryCondition::validate(int d) const {
    if (kind_ == BcKind::Pair1D) {
        if (d != 1) fail(ErrorCode::InvalidArgument, "1D pair used with d != 1");
        return;
    }
    if (kind_ == BcKind::Dirichlet) return;
    if (d < 2) fail(ErrorCode::InvalidDimension, "Poisson-ratio conditions need d >= 2");
    const double lo = -1.0 / (d - 1);
    if (!(a_ > lo) || a_ > 1.0) fail(ErrorCode::Domain, "Poisson ratio out of range");
    if (a_ == 1.0 && kind_ == BcKind::Neumann) fail(ErrorCode::Domain, "a = 1 not admitted for Neumann");
}

bool BoundaryCondition::is_limit_case() const {
    return (kind_ == BcKind::Navier || kind_ == BcKind::KuttlerSigillito) && a_ == 1.0;
}

std::string BoundaryCondition::name() const {
    switch (kind_) {
        case BcKind::Dirichlet: return "dirichlet";
        case BcKind::Navier: return "navier(a=" + fmt_num(a_) + ")";
        case BcKind::KuttlerSigillito: return "ks(a=" + fmt_num(a_) + ")";
        case BcKind::Neumann: return "neumann(a=" + fmt_num(a_) + ")";
        case BcKind::Pair1D: return "pair(" + std::to_string(p_.i) + "," + std::to_string(p_.j) + ")";
    }
    return "?";
}

const std::vector<OneDPair>& all_pairs() {
    static const std::vector<OneDPair> v = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return v;
}

// ---- domains -----------------------------------------------------------------

DomainSpec DomainSpec::interval(double L) {
    if (!(L > 0) || !std::isfinite(L)) fail(ErrorCode::InvalidArgument, "interval length must be > 0");
    DomainSpec d;
    d.lx_ = L;
    d.ly_ = 0.0;
    return d;
}

DomainSpec DomainSpec::rectangle(double Lx, double Ly) {
    if (!(Lx > 0) || !(Ly > 0) || !std::isfinite(Lx) || !std::isfinite(Ly))
        fail(ErrorCode::InvalidArgument, "rectangle sides must be > 0");
    DomainSpec d;
    d.lx_ = Lx;
    d.ly_ = Ly;
    return d;
}

double DomainSpec::volume() const { return is_interval() ? lx_ : lx_ * ly_; }

double DomainSpec::perimeter() const { return is_interval() ? 2.0 : 2.0 * (lx_ + ly_); }

double DomainSpec::inradius() const { return is_interval() ? lx_ / 2 : std::min(lx_, ly_) / 2; }

double DomainSpec::tube_volume(double h) const {
    if (!(h >= 0) || h > inradius()) fail(ErrorCode::Domain, "tube width outside [0, inradius]");
    if (is_interval()) return 2 * h;
    return lx_ * ly_ - (lx_ - 2 * h) * (ly_ - 2 * h);
}

std::string DomainSpec::name() const {
    if (is_interval()) return "interval:" + fmt_num(lx_);
    if (lx_ == ly_) return "square:" + fmt_num(lx_);
    return "rect:" + fmt_num(lx_) + "x" + fmt_num(ly_);
}

// ---- spectra -------------------------------------------------------------------

std::string SpectrumSource::tag() const {
    switch (kind) {
        case SourceKind::Exact: return "exact";
        case SourceKind::Predicted: return "predicted";
        case SourceKind::FiniteDifference: return "fd" + std::to_string(nx) + "x" + std::to_string(ny);
    }
    return "?";
}

Spectrum::Spectrum(std::vector<double> values, DomainSpec dom, BoundaryCondition bc, SpectrumSource src)
    : values_(std::move(values)), dom_(dom), bc_(bc), src_(src) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) fail(ErrorCode::InvalidArgument, "non-finite eigenvalue");
        if (i > 0 && values_[i] < values_[i - 1]) fail(ErrorCode::InvalidArgument, "spectrum not nondecreasing");
    }
    kernel_dim_ = static_cast<int>(std::count(values_.begin(), values_.end(), 0.0));
}

// ---- reports -------------------------------------------------------------------

BoundReport check_le(std::string check, std::string p1, std::string p2, double lhs, double rhs,
                     std::string ref, double tol, bool asserted) {
    BoundReport r;
    r.check = std::move(check);
    r.param1 = std::move(p1);
    r.param2 = std::move(p2);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.holds = r.margin >= -tol;
    r.asserted = asserted;
    r.ref = std::move(ref);
    return r;
}

std::string fmt_num(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string fmt_int(long long x) { return std::to_string(x); }

// ---- quadrature ------------------------------------------------------------------

namespace {

GaussRule build_rule(int n) {
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
        }
        g.x[i] = -x;
        g.x[n - 1 - i] = x;
        g.w[i] = g.w[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
    }
    return g;
}

QuadResult adapt(const std::function<double(double)>& f, double a, double b, double whole, double tol,
                 int depth) {
    const double m = 0.5 * (a + b);
    const double left = gauss_fixed(f, a, m), right = gauss_fixed(f, m, b);
    const double diff = std::abs(left + right - whole);
    if (diff <= tol || depth <= 0) return {left + right, diff};
    const QuadResult l = adapt(f, a, m, left, tol / 2, depth - 1);
    const QuadResult r = adapt(f, m, b, right, tol / 2, depth - 1);
    return {l.value + r.value, l.error + r.error};
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "Gauss rule needs n >= 1");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

double gauss_fixed(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& g = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < n; ++i) s += g.w[i] * f(c + h * g.x[i]);
    return s * h;
}

QuadResult gauss_adaptive(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
    return adapt(f, a, b, gauss_fixed(f, a, b), tol, max_depth);
}

void NeumaierSum::add(double v) {
    const double t = s_ + v;
    if (std::abs(s_) >= std::abs(v))
        c_ += (s_ - t) + v;
    else
        c_ += (v - t) + s_;
    s_ = t;
}

}  // namespace bilap
