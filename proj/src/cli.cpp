#include "bilap/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bilap/acceptance.hpp"
#include "bilap/avp.hpp"
#include "bilap/eig2d.hpp"
#include "bilap/riesz.hpp"
#include "bilap/roots1d.hpp"
#include "bilap/semiclassical.hpp"
#include "bilap/spectra1d.hpp"

namespace bilap::cli {
namespace {

using nlohmann::json;

const std::vector<std::pair<std::string, Command>> kCommands = {
    {"roots", Command::Roots},
    {"spectrum1d", Command::Spectrum1d},
    {"riesz1d", Command::Riesz1d},
    {"lemma-onedim", Command::LemmaOnedim},
    {"constants", Command::Constants},
    {"predict", Command::Predict},
    {"avp", Command::Avp},
    {"kroeger-laptev", Command::KroegerLaptev},
    {"eig2d", Command::Eig2d},
    {"compare", Command::Compare},
    {"all", Command::All},
};

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double to_real(const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        bad("not a number: '" + s + "'");
    }
    if (pos != s.size() || !std::isfinite(v)) bad("not a number: '" + s + "'");
    return v;
}

int to_int(const std::string& s) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        bad("not an integer: '" + s + "'");
    }
    if (pos != s.size() || v < -1000000000L || v > 1000000000L) bad("not an integer: '" + s + "'");
    return static_cast<int>(v);
}

// value row: carries data, asserts nothing
BoundReport value_row(std::string check, std::string p1, std::string p2, double v, std::string ref) {
    BoundReport r = check_le(std::move(check), std::move(p1), std::move(p2), v, v, std::move(ref), 0, false);
    r.note = "value";
    return r;
}

std::string pair_label(OneDPair p) { return "(" + fmt_int(p.i) + "," + fmt_int(p.j) + ")"; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt_num(v);
}

json num_json(double v) {
    if (std::isfinite(v)) return v;
    return num(v);
}

std::string utc_stamp() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---- configuration --------------------------------------------------------------------------

DomainSpec domain_or(const RunConfig& c, const DomainSpec& fallback) {
    return c.domain ? *c.domain : fallback;
}

DomainSpec planar_domain(const RunConfig& c) {
    const DomainSpec d = domain_or(c, DomainSpec::square(1.0));
    if (d.is_interval()) bad(command_name(c.command) + " needs a square or rect domain");
    return d;
}

// 1D pair from --pair, or the pair an --bc name selects on an interval
std::vector<OneDPair> pairs_of(const RunConfig& c, std::vector<OneDPair> fallback) {
    if (c.pair) return {*c.pair};
    if (c.bc) {
        if (*c.bc == "dirichlet") return {{0, 1}};
        if (*c.bc == "navier") return {{0, 2}};
        if (*c.bc == "ks") return {{1, 3}};
        if (*c.bc == "neumann") return {{2, 3}};
    }
    return fallback;
}

BoundaryCondition bc_of(const RunConfig& c, int d) {
    const std::string name = c.bc.value_or("dirichlet");
    const double a = c.a.value_or(0.0);
    BoundaryCondition bc = BoundaryCondition::dirichlet();
    if (name == "navier") bc = BoundaryCondition::navier(a);
    else if (name == "ks") bc = BoundaryCondition::kuttler_sigillito(a);
    else if (name == "neumann") bc = BoundaryCondition::neumann(a);
    try {
        bc.validate(d);
    } catch (const Error& e) {
        bad(e.what());
    }
    return bc;
}

std::vector<int> ks_or(const RunConfig& c, int lo, int hi) {
    if (!c.k.empty()) return c.k;
    std::vector<int> v;
    for (int k = lo; k <= hi; ++k) v.push_back(k);
    return v;
}

int max_of(const std::vector<int>& v) { return *std::max_element(v.begin(), v.end()); }

std::vector<int> grids_or(const RunConfig& c, std::vector<int> fallback) {
    return c.grids.empty() ? fallback : c.grids;
}

// ---- subcommands ------------------------------------------------------------------------------

struct Ctx {
    const RunConfig& cfg;
    std::ostream& log;
    Report& rep;

    Spectrum fd(const Grid2D& g, FdOperator op, int count) {
        CacheEvent ev;
        Spectrum s = cached_fd_spectrum(g, op, count, cfg.cache_dir, &ev);
        if (!ev.warning.empty()) log << "warning: " << ev.warning << "; recomputed\n";
        json line = {{"event", "fd_spectrum"}, {"key", ev.key}, {"count", count},
                     {"cache", cfg.cache_dir.empty() ? "off" : (ev.hit ? "hit" : "miss")}, {"seconds", ev.seconds}};
        log << line.dump() << "\n";
        rep.cache_events.push_back(ev);
        return s;
    }

    std::vector<RichardsonEstimate> extrapolated(const DomainSpec& dom, FdOperator op, const std::vector<int>& grids,
                                                 int count) {
        for (int n : grids) fd(make_grid(dom, n, n), op, count);
        return fd_extrapolated(dom, op, grids, count);
    }
};

void add(std::vector<BoundReport>& out, const std::vector<BoundReport>& more) {
    out.insert(out.end(), more.begin(), more.end());
}

void cmd_roots(Ctx& c, Report* companion) {
    if (c.cfg.n < 1 || c.cfg.n > 100000) bad("--n must lie in 1..100000");
    for (int n = 1; n <= c.cfg.n; ++n) {
        const GammaRoot g = solve_gamma(n);
        auto r = check_le("gamma_residual", fmt_int(n), num(g.gamma), gamma_residual(g.gamma), 1e-9,
                          "roots.frequency_equation");
        c.rep.rows.push_back(r);
    }
    if (companion) {
        companion->command = "roots.proposition";
        companion->rows = proposition_bound_report(c.cfg.n);
    }
}

void cmd_spectrum1d(Ctx& c) {
    const auto ks = ks_or(c.cfg, 1, 20);
    const double L = domain_or(c.cfg, DomainSpec::interval(1.0)).lx();
    for (OneDPair p : pairs_of(c.cfg, all_pairs())) {
        const Spectrum s = spectrum_1d(p, max_of(ks) + 1, L);
        for (int k : ks) {
            if (k < 1) bad("--k values must be >= 1");
            c.rep.rows.push_back(
                check_le("eigenvalue_ordering", pair_label(p), fmt_int(k), s[k - 1], s[k], "spectrum1d.ordering"));
        }
    }
    add(c.rep.rows, identity_check(std::min(max_of(ks), kMaxEigenfunctionIndex)));
}

void cmd_riesz1d(Ctx& c) {
    const auto zs = c.cfg.z.empty() ? log_grid(1.0, 1e8, 200) : c.cfg.z;
    for (double z : zs)
        if (!(z > 0)) bad("--z values must be > 0");
    for (OneDPair p : pairs_of(c.cfg, all_pairs())) {
        const auto rows = riesz_report(p, zs);
        // one row per z: lhs the mean, rhs the upper bound, margin the smaller side
        for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
            const BoundReport &lo = rows[i], &hi = rows[i + 1];
            BoundReport r = hi;
            r.check = "riesz1d_two_sided";
            r.margin = std::min(lo.margin, hi.margin);
            r.holds = lo.holds && hi.holds;
            r.note = "lower=" + num(lo.lhs);
            c.rep.rows.push_back(r);
        }
    }
}

void cmd_lemma(Ctx& c) {
    const auto Rs = c.cfg.z.empty() ? lin_grid(0.0, 200.0, 500) : c.cfg.z;
    for (double R : Rs)
        if (!(R >= 0)) bad("lemma radii must be >= 0");
    c.rep.rows = lemma_report(Rs);
}

void cmd_constants(Ctx& c) {
    for (int d = 1; d <= 4; ++d) {
        const auto k = dimensional_constants(d);
        const std::string pd = "d=" + fmt_int(d);
        const std::pair<const char*, double> vals[] = {{"B", k.B}, {"C", k.C}, {"A", k.A}, {"Atilde", k.Atilde},
                                                       {"a", k.a}, {"b", k.b}, {"c", k.c}, {"M", k.M}};
        for (auto [name, v] : vals) c.rep.rows.push_back(value_row(std::string("constant.") + name, pd, "", v, "constants"));
    }
    const double a = c.cfg.a.value_or(0.0);
    c.rep.rows.push_back(value_row("f", "a=" + num(a), "", f_neumann(a), "semiclassical.f"));
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const bool pole = (1 - a) * t * t == 1;
        if (!pole) c.rep.rows.push_back(value_row("g", "a=" + num(a), "t=" + num(t), g_neumann(t, a), "semiclassical.g"));
        c.rep.rows.push_back(value_row("arctan_g", "a=" + num(a), "t=" + num(t), arctan_g(t, a), "semiclassical.g"));
    }
    std::vector<std::string> kinds = {"dirichlet", "navier", "ks", "neumann"};
    if (c.cfg.bc) kinds = {*c.cfg.bc};
    for (int d = 2; d <= 4; ++d) {
        for (const auto& kind : kinds) {
            RunConfig tmp = c.cfg;
            tmp.bc = kind;
            const BoundaryCondition bc = bc_of(tmp, d);
            const auto e = expansion_coefficients(bc, d);
            c.rep.rows.push_back(value_row("c0", bc.name(), "d=" + fmt_int(d), e.c0, "semiclassical.c0"));
            c.rep.rows.push_back(value_row("c1", bc.name(), "d=" + fmt_int(d), e.c1, "semiclassical.c1"));
        }
        if (std::find(kinds.begin(), kinds.end(), "neumann") != kinds.end()) {
            const double c1 = expansion_coefficients(bc_of([&] { RunConfig t = c.cfg; t.bc = "neumann"; return t; }(), d), d).c1;
            c.rep.rows.push_back(check_le("neumann_c1_two_forms", "a=" + num(a), "d=" + fmt_int(d),
                                          std::abs(c1 - neumann_c1_inverse_form(d, a)), 1e-9,
                                          "semiclassical.neumann_c1"));
        }
        if (std::find(kinds.begin(), kinds.end(), "dirichlet") != kinds.end()) {
            const double c1 = expansion_coefficients(BoundaryCondition::dirichlet(), d).c1;
            c.rep.rows.push_back(check_le("dirichlet_c1_vs_quadrature", "", "d=" + fmt_int(d),
                                          std::abs(c1 - dirichlet_c1_quadrature(d).value), 1e-9,
                                          "semiclassical.dirichlet_c1"));
        }
    }
    auto r = check_le("f(0)==1", "a=0", "", std::abs(f_neumann(0.0) - 1.0), 0.0, "semiclassical.f");
    r.holds = f_neumann(0.0) == 1.0;
    c.rep.rows.push_back(r);
}

void cmd_predict(Ctx& c) {
    const DomainSpec dom = planar_domain(c.cfg);
    const BoundaryCondition bc = bc_of(c.cfg, 2);
    for (int k : ks_or(c.cfg, 1, 20)) {
        if (k < 1) bad("--k values must be >= 1");
        c.rep.rows.push_back(value_row("two_term_eigenvalue", bc.name(), fmt_int(k), predict_eigenvalue(bc, 2, dom, k),
                                       "semiclassical.two_term"));
        c.rep.rows.push_back(
            value_row("two_term_average", bc.name(), fmt_int(k), predict_average(2, dom, k), "semiclassical.average"));
        c.rep.rows.push_back(value_row("weyl", bc.name(), fmt_int(k), weyl_leading(2, dom, k), "semiclassical.weyl"));
    }
}

void cmd_avp(Ctx& c) {
    const DomainSpec dom = planar_domain(c.cfg);
    const int d = 2;
    const auto ks = ks_or(c.cfg, 1, 30);
    const auto grids = grids_or(c.cfg, {32, 64, 128});
    if (grids.size() < 2) bad("avp needs at least two grids");
    for (int k : ks)
        if (k < 1) bad("--k values must be >= 1");
    const int K = max_of(ks);
    const int count = K + 1;
    const auto ext = c.extrapolated(dom, FdOperator::ClampedBilaplacian, grids, count);
    const double C = dimensional_constants(d).C, V = dom.volume(), r = dom.inradius();
    const TestFunctionProfile ball = inscribed_ball_profile(dom);
    std::vector<double> lo_sum(count + 1, 0), hi_sum(count + 1, 0);
    for (int j = 1; j <= count; ++j) {
        lo_sum[j] = lo_sum[j - 1] + ext[j - 1].lower();
        hi_sum[j] = hi_sum[j - 1] + ext[j - 1].upper();
    }
    const double k0 = explicit_sum_stated_threshold(dom, d);
    const double kt = explicit_sum_threshold(dom, d);
    const double A = explicit_second_coefficient(dom, d);
    for (int k : ks) {
        const std::string pk = fmt_int(k);
        const double avg_lo = lo_sum[k] / k, avg_hi = hi_sum[k] / k;
        const std::vector<double> hs = c.cfg.h.empty() ? std::vector<double>{std::min(h_of_k(dom, d, k), r)} : c.cfg.h;
        c.rep.rows.push_back(check_le("avg<=ball_bound", pk, "", avg_lo, avg_upper_bound(ball, k), "avp.general"));
        for (double h : hs) {
            if (!(h > 0) || h > r) bad("--h values must lie in (0, inradius]");
            const TestFunctionProfile m = mollified_indicator_profile(dom, h);
            c.rep.rows.push_back(
                check_le("avg<=mollified_bound", pk, "h=" + num(h), avg_lo, avg_upper_bound(m, k), "avp.general"));
        }
        c.rep.rows.push_back(check_le("avg<=rough_bound", pk, "", avg_lo, rough_bound(dom, d, k), "avp.rough"));
        c.rep.rows.push_back(check_le("levine_protter<=avg", pk, "",
                                      d / (d + 4.0) * C * C * std::pow(k / V, 4.0 / d), avg_hi, "avp.levine_protter"));
        if (k >= kt) {
            const ExplicitSum e = explicit_sum_bound(dom, d, k);
            c.rep.rows.push_back(check_le("sum<=explicit_bound", pk, "", lo_sum[k], e.total(), "avp.explicit_sum"));
        }
        if (k >= k0 && k + 1 <= count) {
            const IndividualBounds b = individual_bounds(dom, d, A, k, k0);
            c.rep.rows.push_back(check_le("lower<=Lambda_k", pk, "", b.lower, ext[k - 1].upper(), "avp.individual"));
            c.rep.rows.push_back(check_le("Lambda_k+1<=upper", pk, "", ext[k].lower(), b.upper, "avp.individual"));
        }
    }

    // Riesz mean from the upper band ends, below the last resolved eigenvalue
    const double z_cap = ext[count - 1].lower();
    const auto zs = c.cfg.z.empty() ? lin_grid(z_cap / 8, z_cap, 8) : c.cfg.z;
    for (double z : zs) {
        if (!(z > 0)) bad("--z values must be > 0");
        NeumaierSum rm;
        for (const auto& e : ext) rm.add(std::max(0.0, z - e.upper()));
        auto row = check_le("riesz_lower<=R1", "ball", num(z), riesz_lower_bound(ball, z), rm.value(), "avp.riesz");
        if (z > z_cap) {
            row.asserted = false;
            row.note = "z beyond resolved spectrum";
        }
        c.rep.rows.push_back(row);
    }

    const auto ts = c.cfg.t.empty() ? std::vector<double>{1e-3, 1e-4} : c.cfg.t;
    for (double t : ts) {
        if (!(t > 0)) bad("--t values must be > 0");
        NeumaierSum tr;
        for (const auto& e : ext) tr.add(std::exp(-e.upper() * t));
        const PartitionBound b = partition_lower_bound(ball, t);
        c.rep.rows.push_back(check_le("partition_unweighted<=trace", "ball", num(t), b.unweighted, tr.value(),
                                      "avp.partition"));
        c.rep.rows.push_back(
            check_le("partition_weighted<=trace", "ball", num(t), b.weighted, tr.value(), "avp.partition"));
    }

    // cross inequalities with clamped-plate eigenvectors as trial functions, two coarsest grids
    const int N = std::min(K, 10);
    const Spectrum lapD = laplacian_spectrum_exact(dom, N + 1);
    const Spectrum lapN = neumann_laplacian_spectrum_exact(dom, N + 1);
    std::vector<std::vector<NavierEnergy>> en(2);
    for (int gi = 0; gi < 2; ++gi) {
        const Grid2D g = make_grid(dom, grids[gi], grids[gi]);
        const EigenPairs e = grid_smallest_eigs(g, FdOperator::ClampedBilaplacian, N, true);
        for (int col = 0; col < N; ++col) {
            std::vector<double> v(g.size());
            for (int i = 0; i < g.size(); ++i) v[i] = e.vec(i, col);
            const FormEnergies fe = form_energies(v, g);
            en[gi].push_back({fe.grad, fe.hessian});
        }
    }
    const double mm = lapN[N];
    double gap1 = 0, gap2 = 0;
    for (int k = 0; k < N; ++k) {
        gap1 += std::abs(en[1][k].grad - en[0][k].grad);
        gap2 += std::abs(mm * (en[1][k].grad - en[0][k].grad) - (en[1][k].hessian - en[0][k].hessian));
    }
    add(c.rep.rows, navier_cross_inequalities(lapD, lapN, en[1], N, N, N, 3 * gap1, 3 * gap2));
}

void cmd_kl(Ctx& c) {
    const auto ks = ks_or(c.cfg, 1, 500);
    const double L = domain_or(c.cfg, DomainSpec::interval(1.0)).lx();
    for (OneDPair p : pairs_of(c.cfg, {{2, 3}})) {
        const Spectrum s = spectrum_1d(p, max_of(ks) + 1, L);
        for (int k : ks) {
            if (k < 1) bad("--k values must be >= 1");
            const KrogerLaptev kl = kroeger_laptev_refined(s, 1, k);
            const std::string pk = fmt_int(k), pp = pair_label(p);
            auto r = check_le("S_k<=1", pp, pk, kl.S_k, 1.0, "kl.refined");
            r.note = "extrapolated to d=1";
            c.rep.rows.push_back(r);
            if (kl.kl_holds) {
                const double tol = 16 * std::numeric_limits<double>::epsilon() * kl.next;
                c.rep.rows.push_back(check_le("lo<=next", pp, pk, kl.lo, kl.next, "kl.refined", tol));
                c.rep.rows.push_back(check_le("next<=hi", pp, pk, kl.next, kl.hi, "kl.refined", tol));
            }
        }
    }
    double worst = -INFINITY;
    for (auto [p, x] : young_sample_points(10000)) {
        const YoungPair y = young_refined(p, x);
        worst = std::max(worst, (y.y - y.bound) / ((p + 1) * x + p + std::pow(x, p + 1)));
    }
    c.rep.rows.push_back(check_le("young_refined_max_excess", "10000 points", "", worst,
                                  64 * std::numeric_limits<double>::epsilon(), "kl.technical_lemma"));
}

void cmd_eig2d(Ctx& c) {
    const DomainSpec dom = planar_domain(c.cfg);
    const auto ks = ks_or(c.cfg, 1, 10);
    const auto grids = grids_or(c.cfg, {32, 64, 128});
    for (int k : ks)
        if (k < 1) bad("--k values must be >= 1");
    const int K = max_of(ks);
    for (int n : grids) {
        const Grid2D g = make_grid(dom, n, n);
        if (K > g.size()) bad("--k exceeds the grid size");
        const Spectrum s = c.fd(g, FdOperator::ClampedBilaplacian, K);
        const Spectrum lap = fd_spectrum(g, FdOperator::DirichletLaplacian, K);
        const auto closed = discrete_laplacian_spectrum(g, K);
        const std::string pg = fmt_int(n) + "x" + fmt_int(n);
        for (int k : ks) {
            c.rep.rows.push_back(value_row("fd_clamped", pg, fmt_int(k), s[k - 1], "eig2d.fd"));
            c.rep.rows.push_back(check_le("laplacian_vs_closed_form", pg, fmt_int(k), std::abs(lap[k - 1] - closed[k - 1]),
                                          1e-10 * closed[k - 1], "eig2d.discrete_laplacian"));
        }
    }
    if (grids.size() >= 2) {
        const auto ext = fd_extrapolated(dom, FdOperator::ClampedBilaplacian, grids, K);
        for (int k : ks) {
            const auto& e = ext[k - 1];
            auto r = check_le("richardson_band", fmt_int(k), "order=" + num(e.observed_order), e.lower(), e.upper(),
                              "eig2d.richardson", 0, false);
            r.note = "limit=" + num(e.limit);
            c.rep.rows.push_back(r);
        }
    }
}

void cmd_compare(Ctx& c) {
    const DomainSpec dom = planar_domain(c.cfg);
    const auto grids = grids_or(c.cfg, {32, 64, 128});
    const int K = c.cfg.k.empty() ? 10 : max_of(c.cfg.k);
    if (K < 1) bad("--k must be >= 1");
    for (int n : grids) c.fd(make_grid(dom, n, n), FdOperator::ClampedBilaplacian, K);
    c.rep.rows = comparison_report(dom, K, grids, 50);
}

void cmd_all(Ctx& c) {
    AcceptanceOptions opt;
    opt.grids = grids_or(c.cfg, {32, 64, 128});
    opt.before_fd = [&](const std::vector<int>& grids, int count) {
        for (int n : grids) c.fd(make_grid(DomainSpec::square(1.0), n, n), FdOperator::ClampedBilaplacian, count);
    };
    opt.on_result = [&](const CriterionResult& r) {
        json line = {{"event", "criterion"}, {"id", r.id}, {"pass", r.pass}, {"seconds", r.seconds},
                     {"budget", r.budget}, {"detail", r.detail}};
        c.log << line.dump() << "\n";
    };
    for (const auto& r : run_acceptance(opt)) {
        long long failed = 0;
        for (const auto& row : r.rows) failed += row.asserted && !row.holds;
        if (r.rows.empty()) failed = 1;  // the criterion threw
        auto row = check_le("criterion_" + fmt_int(r.id), r.name, fmt_int(static_cast<long long>(r.rows.size())) + " checks",
                            static_cast<double>(failed), 0.0, "acceptance");
        c.rep.rows.push_back(row);
    }
}

}  // namespace

std::string command_name(Command c) {
    for (const auto& [name, cmd] : kCommands)
        if (cmd == c) return name;
    return "?";
}

std::vector<double> parse_real_range(const std::string& s) {
    if (s.empty()) bad("empty range");
    if (s.find(':') != std::string::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 3) bad("range must be a:b:Nlog or a:b:Nlin, got '" + s + "'");
        const double a = to_real(parts[0]), b = to_real(parts[1]);
        const std::string& spec = parts[2];
        if (spec.size() < 4) bad("range count must end in log or lin: '" + s + "'");
        const std::string kind = spec.substr(spec.size() - 3);
        const int n = to_int(spec.substr(0, spec.size() - 3));
        if (n < 1) bad("range count must be >= 1");
        if (b < a) bad("range end below start: '" + s + "'");
        if (kind == "log") {
            if (!(a > 0)) bad("log range needs a > 0");
            return log_grid(a, b, n);
        }
        if (kind == "lin") return lin_grid(a, b, n);
        bad("range count must end in log or lin: '" + s + "'");
    }
    std::vector<double> v;
    for (const auto& p : split(s, ',')) v.push_back(to_real(p));
    return v;
}

std::vector<int> parse_int_range(const std::string& s) {
    if (s.empty()) bad("empty range");
    if (s.find(':') != std::string::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 2) bad("integer range must be a:b, got '" + s + "'");
        const int a = to_int(parts[0]), b = to_int(parts[1]);
        if (b < a) bad("range end below start: '" + s + "'");
        if (static_cast<long>(b) - a > 1000000) bad("integer range too long");
        std::vector<int> v;
        for (int k = a; k <= b; ++k) v.push_back(k);
        return v;
    }
    return parse_int_list(s);
}

std::vector<int> parse_int_list(const std::string& s) {
    if (s.empty()) bad("empty list");
    std::vector<int> v;
    for (const auto& p : split(s, ',')) v.push_back(to_int(p));
    return v;
}

DomainSpec parse_domain(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) bad("domain must be interval:L, square:L or rect:LxW");
    const std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
    try {
        if (kind == "interval") return DomainSpec::interval(to_real(rest));
        if (kind == "square") return DomainSpec::square(to_real(rest));
        if (kind == "rect") {
            const auto parts = split(rest, 'x');
            if (parts.size() != 2) bad("rect needs LxW");
            return DomainSpec::rectangle(to_real(parts[0]), to_real(parts[1]));
        }
    } catch (const Error& e) {
        bad(e.what());
    }
    bad("unknown domain kind '" + kind + "'");
}

OneDPair parse_pair(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) bad("pair must be i,j");
    const OneDPair p{to_int(parts[0]), to_int(parts[1])};
    for (OneDPair q : all_pairs())
        if (q == p) return p;
    bad("pair must be one of (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)");
}

RunConfig parse_command_line(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a.rfind("--seedless=", 0) == 0) bad("--seedless takes no value");
    }
    CLI::App app{"bilap: bilaplacian spectral checks"};
    app.set_help_flag("--help");
    app.fallthrough();
    app.require_subcommand(1);
    std::map<std::string, std::string> raw;
    const char* keys[] = {"config", "out", "format", "domain", "bc", "a", "pair",
                          "k", "z", "t", "h", "grids", "cache", "n"};
    for (const char* k : keys) app.add_option(std::string("--") + k, raw[k]);
    bool seedless = false;
    app.add_flag("--seedless", seedless, "reserved; no randomness is used anywhere");
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, cmd] : kCommands) subs[name] = app.add_subcommand(name);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw;
    } catch (const CLI::ParseError& e) {
        bad(e.what());
    }

    RunConfig cfg;
    for (const auto& [name, cmd] : kCommands)
        if (subs[name]->parsed()) cfg.command = cmd;

    // config file fills whatever the flags left unset
    if (!raw["config"].empty()) {
        std::ifstream f(raw["config"]);
        if (!f) bad("cannot read config " + raw["config"]);
        json j;
        try {
            j = json::parse(f);
        } catch (const std::exception& e) {
            bad(std::string("bad config JSON: ") + e.what());
        }
        if (!j.is_object()) bad("config must be a JSON object");
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string key = it.key();
            if (key == "command") continue;
            if (std::find(std::begin(keys), std::end(keys), key) == std::end(keys) || key == "config")
                bad("unknown config key '" + key + "'");
            if (app.count("--" + key)) continue;
            if (it->is_string()) raw[key] = it->get<std::string>();
            else if (it->is_number()) raw[key] = it->dump();
            else bad("config key '" + key + "' must be a string or number");
        }
    }

    if (!raw["domain"].empty()) cfg.domain = parse_domain(raw["domain"]);
    if (!raw["bc"].empty()) {
        const std::string b = raw["bc"];
        if (b != "dirichlet" && b != "navier" && b != "ks" && b != "neumann")
            bad("--bc must be dirichlet, navier, ks or neumann");
        cfg.bc = b;
    }
    if (!raw["a"].empty()) cfg.a = to_real(raw["a"]);
    if (!raw["pair"].empty()) cfg.pair = parse_pair(raw["pair"]);
    if (!raw["k"].empty()) cfg.k = parse_int_range(raw["k"]);
    if (!raw["z"].empty()) cfg.z = parse_real_range(raw["z"]);
    if (!raw["t"].empty()) cfg.t = parse_real_range(raw["t"]);
    if (!raw["h"].empty()) cfg.h = parse_real_range(raw["h"]);
    if (!raw["grids"].empty()) {
        cfg.grids = parse_int_list(raw["grids"]);
        for (std::size_t i = 0; i < cfg.grids.size(); ++i) {
            if (cfg.grids[i] < 4) bad("grid resolutions must be >= 4");
            if (max_sector_size(cfg.grids[i], cfg.grids[i]) > kDefaultMaxUnknowns)
                bad("grid " + fmt_int(cfg.grids[i]) + " exceeds the eigensolver limit");
            if (i && cfg.grids[i] <= cfg.grids[i - 1]) bad("--grids must increase");
        }
    }
    if (!raw["n"].empty()) cfg.n = to_int(raw["n"]);
    cfg.out = raw["out"];
    cfg.cache_dir = raw["cache"];
    const std::string fmt = raw["format"];
    if (fmt == "json") cfg.format = Format::Json;
    else if (fmt == "csv") cfg.format = Format::Csv;
    else if (fmt.empty()) cfg.format = cfg.out.size() > 5 && cfg.out.substr(cfg.out.size() - 5) == ".json" ? Format::Json : Format::Csv;
    else bad("--format must be csv or json");
    return cfg;
}

std::string render_csv(const Report& r, const std::string& stamp) {
    std::ostringstream o;
    o << "# bilap " << r.command << " generated " << stamp << "\n";
    o << "check,param1,param2,lhs,rhs,margin,holds,paper_ref\n";
    for (const auto& row : r.rows) {
        const std::string check = row.asserted ? row.check : row.check + ":reported";
        o << csv_field(check) << ',' << csv_field(row.param1) << ',' << csv_field(row.param2) << ',' << num(row.lhs)
          << ',' << num(row.rhs) << ',' << num(row.margin) << ',' << (row.holds ? "true" : "false") << ','
          << csv_field(row.ref) << '\n';
    }
    return o.str();
}

std::string render_json(const Report& r, const std::string& stamp) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"check", row.check}, {"param1", row.param1}, {"param2", row.param2},
                        {"lhs", num_json(row.lhs)}, {"rhs", num_json(row.rhs)}, {"margin", num_json(row.margin)},
                        {"holds", row.holds}, {"asserted", row.asserted}, {"paper_ref", row.ref},
                        {"note", row.note}});
    }
    json cache = json::array();
    for (const auto& e : r.cache_events)
        cache.push_back({{"key", e.key}, {"hit", e.hit}, {"seconds", e.seconds}});
    const json j = {{"command", r.command}, {"generated", stamp}, {"rows", rows}, {"cache", cache}};
    return j.dump(1) + "\n";
}

int exit_code(const std::vector<BoundReport>& rows) {
    for (const auto& r : rows)
        if (r.asserted && !r.holds) return 1;
    return 0;
}

Report execute(const RunConfig& cfg, std::ostream& log, Report* companion) {
    Report rep;
    rep.command = command_name(cfg.command);
    Ctx c{cfg, log, rep};
    switch (cfg.command) {
        case Command::Roots: cmd_roots(c, companion); break;
        case Command::Spectrum1d: cmd_spectrum1d(c); break;
        case Command::Riesz1d: cmd_riesz1d(c); break;
        case Command::LemmaOnedim: cmd_lemma(c); break;
        case Command::Constants: cmd_constants(c); break;
        case Command::Predict: cmd_predict(c); break;
        case Command::Avp: cmd_avp(c); break;
        case Command::KroegerLaptev: cmd_kl(c); break;
        case Command::Eig2d: cmd_eig2d(c); break;
        case Command::Compare: cmd_compare(c); break;
        case Command::All: cmd_all(c); break;
    }
    return rep;
}

namespace {

std::string companion_path(const std::string& out) {
    const std::filesystem::path p(out);
    return (p.parent_path() / (p.stem().string() + ".proposition" + p.extension().string())).string();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << text;
    if (!f) throw ConfigError("write failed for " + path);
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_command_line(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << "usage: bilap <roots|spectrum1d|riesz1d|lemma-onedim|constants|predict|avp|kroeger-laptev|eig2d|"
               "compare|all> [--config PATH] [--out PATH] [--format csv|json] [--domain interval:L|square:L|rect:LxW] "
               "[--bc dirichlet|navier|ks|neumann] [--a FLOAT] [--pair i,j] [--k RANGE] [--z RANGE] [--t RANGE] "
               "[--h RANGE] [--grids LIST] [--n N] [--cache DIR] [--seedless]\n";
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        Report companion;
        const Report rep = execute(cfg, err, &companion);
        const std::string stamp = utc_stamp();
        auto render = [&](const Report& r) {
            return cfg.format == Format::Json ? render_json(r, stamp) : render_csv(r, stamp);
        };
        if (cfg.out.empty()) {
            out << render(rep);
        } else {
            write_text(cfg.out, render(rep));
            if (!companion.rows.empty()) write_text(companion_path(cfg.out), render(companion));
        }
        return std::max(exit_code(rep.rows), exit_code(companion.rows));
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        // invalid parameters surfaced by the library are configuration errors
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace bilap::cli
