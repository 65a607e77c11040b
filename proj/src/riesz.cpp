#include "bilap/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bilap/spectra1d.hpp"

namespace bilap {

namespace {

constexpr std::size_t kCompensatedThreshold = 10000;

bool extendable(const Spectrum& s) {
    return s.bc().is_pair() && s.source().kind == SourceKind::Exact;
}

// spectrum guaranteed to contain every eigenvalue below z
Spectrum covering(const Spectrum& spec, double z) {
    if (!spec.values().empty() && spec.values().back() >= z) return spec;
    if (!extendable(spec)) fail(ErrorCode::InsufficientSpectrum, "spectrum does not reach the threshold");
    int count = std::max<int>(16, static_cast<int>(spec.size()));
    for (;;) {
        Spectrum s = spectrum_1d(spec.bc().pair_indices(), count, spec.domain().lx());
        if (s.values().back() >= z) return s;
        if (count > (1 << 22)) fail(ErrorCode::InsufficientSpectrum, "threshold too large to extend");
        count *= 2;
    }
}

}  // namespace

RieszMeanPoint riesz_mean(const Spectrum& spec, double z, double sigma) {
    if (!(z >= 0)) fail(ErrorCode::InvalidArgument, "z must be >= 0");
    if (!(sigma > 0)) fail(ErrorCode::InvalidArgument, "sigma must be > 0");
    const Spectrum s = covering(spec, z);
    const auto& v = s.values();
    const std::size_t n = std::lower_bound(v.begin(), v.end(), z) - v.begin();
    RieszMeanPoint out{z, sigma, 0.0, static_cast<int>(n)};
    if (n > kCompensatedThreshold) {
        NeumaierSum acc;
        for (std::size_t i = 0; i < n; ++i) acc.add(std::pow(z - v[i], sigma));
        out.value = acc.value();
    } else {
        double acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc += sigma == 1.0 ? z - v[i] : std::pow(z - v[i], sigma);
        out.value = acc;
    }
    return out;
}

double integrated_counting(const Spectrum& spec, double z) {
    const Spectrum s = covering(spec, z);
    const auto& v = s.values();
    const std::size_t n = std::lower_bound(v.begin(), v.end(), z) - v.begin();
    NeumaierSum acc;
    for (std::size_t k = 1; k <= n; ++k) {
        const double right = k < n ? v[k] : z;
        acc.add(static_cast<double>(k) * (right - v[k - 1]));
    }
    return acc.value();
}

int counting(const Spectrum& spec, double z) {
    const Spectrum s = covering(spec, z);
    const auto& v = s.values();
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), z) - v.begin());
}

TwoSided theorem_bounds_1d(OneDPair p, double z) {
    if (!(z > 0)) fail(ErrorCode::InvalidArgument, "z must be > 0");
    const double w = std::pow(z, 0.25);
    const double main = 4.0 / (5.0 * kPi) * z * w;
    const double pi = kPi, pi2 = pi * pi, pi3 = pi2 * pi, pi4 = pi2 * pi2;
    if (p == OneDPair{0, 2} || p == OneDPair{1, 3}) {
        const double shift = p == OneDPair{0, 2} ? -0.5 * z : 0.5 * z;
        return {main + shift - pi / 3 * w * w * w, main + shift + pi / 6 * w * w * w + pi2 / 12 * w * w};
    }
    double shift = 0;
    if (p == OneDPair{0, 1}) shift = -z;
    else if (p == OneDPair{2, 3}) shift = z;
    else if (!(p == OneDPair{0, 3} || p == OneDPair{1, 2})) fail(ErrorCode::InvalidArgument, "invalid 1D pair");
    const double c = constant_c();
    const double lo = main + shift - 11 * pi / 6 * w * w * w - 1.5 * pi2 * w * w - 127 * pi3 / 240 * w - c;
    const double hi = main + shift + pi / 6 * w * w * w + 1.5 * pi2 * w * w + pi3 / 30 * w + pi4 / 8 + c;
    return {lo, hi};
}

LemmaTriple lemma_onedim_bounds(double R, Lattice variant) {
    if (!(R >= 0)) fail(ErrorCode::InvalidArgument, "R must be >= 0");
    const double R2 = R * R, R3 = R2 * R, R4 = R2 * R2, R5 = R4 * R;
    const double off = variant == Lattice::Integers ? 0.0 : 0.5;
    double sum = 0;
    for (int n = 1;; ++n) {
        const double t = n + off;
        if (t >= R) break;
        sum += R4 - t * t * t * t;
    }
    LemmaTriple out;
    if (variant == Lattice::Integers) {
        out.mid = sum - 0.8 * R5 + 0.5 * R4;
        out.lhs = -R3 / 3;
        out.rhs = R3 / 6 + R2 / 12;
    } else {
        out.mid = sum - 0.8 * R5 + R4;
        out.lhs = -11.0 / 6 * R3 - 1.5 * R2 - 127.0 / 240 * R;
        out.rhs = R3 / 6 + 1.5 * R2 + R / 30 + 0.125;
    }
    return out;
}

double constant_c_truncated(int n_terms) {
    const double pi = kPi, pi2 = pi * pi, pi3 = pi2 * pi, pi4 = pi2 * pi2;
    double s = 0;
    for (int n = 1; n <= n_terms; ++n) {
        const double m = n + 0.5, e = std::exp(-pi * n);
        s += 4 * (pi * e * m * m * m + pi3 * e * e * e * m) + 6 * pi2 * e * e * m * m + pi4 * e * e * e * e;
    }
    return s;
}

double constant_c() {
    const double pi = kPi, pi2 = pi * pi, pi3 = pi2 * pi, pi4 = pi2 * pi2;
    double s = 0;
    for (int n = 1; n < 1000; ++n) {
        const double m = n + 0.5, e = std::exp(-pi * n);
        const double term =
            4 * (pi * e * m * m * m + pi3 * e * e * e * m) + 6 * pi2 * e * e * m * m + pi4 * e * e * e * e;
        s += term;
        if (term < 1e-16) break;
    }
    return s;
}

std::vector<double> log_grid(double a, double b, int n) {
    if (!(a > 0) || !(b >= a) || n < 1) fail(ErrorCode::InvalidArgument, "bad log grid");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = n == 1 ? a : a * std::pow(b / a, static_cast<double>(i) / (n - 1));
    if (n > 1) g.back() = b;
    return g;
}

std::vector<double> lin_grid(double a, double b, int n) {
    if (!(b >= a) || n < 1) fail(ErrorCode::InvalidArgument, "bad linear grid");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return g;
}

std::vector<double> default_fit_grid() { return log_grid(1e4, 1e9, 32); }

double second_term_fit(OneDPair p, const std::vector<double>& z_grid) {
    if (z_grid.size() < 8) fail(ErrorCode::InvalidArgument, "fit grid needs at least 8 points");
    for (std::size_t i = 1; i < z_grid.size(); ++i)
        if (!(z_grid[i] > z_grid[i - 1])) fail(ErrorCode::InvalidArgument, "fit grid must increase");
    if (z_grid.back() < 1e6) fail(ErrorCode::InvalidArgument, "fit grid must reach 1e6");
    const Spectrum spec = spectrum_1d(p, 64);
    // ordinary least squares of y on (1, z)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(z_grid.size());
    for (double z : z_grid) {
        const double y = riesz_mean(spec, z, 1.0).value - 4.0 / (5.0 * kPi) * std::pow(z, 1.25);
        sx += z, sy += y, sxx += z * z, sxy += z * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<BoundReport> riesz_report(OneDPair p, const std::vector<double>& z_grid) {
    std::vector<BoundReport> out;
    const Spectrum spec = spectrum_1d(p, 64);
    const std::string pp = "(" + fmt_int(p.i) + "," + fmt_int(p.j) + ")";
    for (double z : z_grid) {
        const double r = riesz_mean(spec, z, 1.0).value;
        const TwoSided b = theorem_bounds_1d(p, z);
        // relative rounding slack of the polynomial envelopes
        const double tol = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, z * std::pow(z, 0.25));
        auto lo = check_le("riesz1d_lower", pp, fmt_num(z), b.lower, r, "riesz1d.two_sided", tol);
        auto hi = check_le("riesz1d_upper", pp, fmt_num(z), r, b.upper, "riesz1d.two_sided", tol);
        lo.note = hi.note = "coefficients read as pi^3/30 and pi^4/8";
        out.push_back(lo);
        out.push_back(hi);
    }
    return out;
}

std::vector<BoundReport> lemma_report(const std::vector<double>& R_grid) {
    std::vector<BoundReport> out;
    for (double R : R_grid) {
        for (Lattice v : {Lattice::Integers, Lattice::HalfIntegers}) {
            const LemmaTriple t = lemma_onedim_bounds(R, v);
            const std::string name = v == Lattice::Integers ? "integers" : "half_integers";
            const double tol = 64 * std::numeric_limits<double>::epsilon() * std::pow(std::max(R, 1.0), 5);
            out.push_back(check_le("lemma_" + name + "_lower", fmt_num(R), "", t.lhs, t.mid, "lemma.onedim." + name, tol));
            out.push_back(check_le("lemma_" + name + "_upper", fmt_num(R), "", t.mid, t.rhs, "lemma.onedim." + name, tol));
        }
    }
    return out;
}

}  // namespace bilap
