#include "bilap/cache.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bilap {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

const char* kind_name(BcKind k) {
    switch (k) {
        case BcKind::Dirichlet: return "dirichlet";
        case BcKind::Navier: return "navier";
        case BcKind::KuttlerSigillito: return "ks";
        case BcKind::Neumann: return "neumann";
        case BcKind::Pair1D: return "pair";
    }
    return "?";
}

BoundaryCondition bc_from(const json& j) {
    const std::string k = j.at("kind").get<std::string>();
    const double a = j.at("a").get<double>();
    if (k == "dirichlet") return BoundaryCondition::dirichlet();
    if (k == "navier") return BoundaryCondition::navier(a);
    if (k == "ks") return BoundaryCondition::kuttler_sigillito(a);
    if (k == "neumann") return BoundaryCondition::neumann(a);
    if (k == "pair") return BoundaryCondition::pair(j.at("i").get<int>(), j.at("j").get<int>());
    fail(ErrorCode::InvalidArgument, "unknown bc kind " + k);
}

SourceKind source_from(const std::string& s) {
    if (s == "exact") return SourceKind::Exact;
    if (s == "fd") return SourceKind::FiniteDifference;
    if (s == "predicted") return SourceKind::Predicted;
    fail(ErrorCode::InvalidArgument, "unknown source kind " + s);
}

const char* source_name(SourceKind k) {
    switch (k) {
        case SourceKind::Exact: return "exact";
        case SourceKind::FiniteDifference: return "fd";
        case SourceKind::Predicted: return "predicted";
    }
    return "?";
}

}  // namespace

std::string spectrum_cache_key(const Spectrum& spec, const std::string& label) {
    std::string k = spec.domain().name() + "|" + spec.bc().name() + "|" + spec.source().tag();
    if (!label.empty()) k += "|" + label;
    return k;
}

std::string cache_file_name(const std::string& key) {
    std::string s;
    for (char c : key) s += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_';
    char hex[20];
    std::snprintf(hex, sizeof hex, "%016" PRIx64, fnv1a(key));
    return s + "-" + hex + ".json";
}

std::string cache_spectrum(const Spectrum& spec, const std::string& dir, const std::string& label) {
    fs::create_directories(dir);
    const std::string key = spectrum_cache_key(spec, label);
    const fs::path path = fs::path(dir) / cache_file_name(key);
    json bc = {{"kind", kind_name(spec.bc().kind())}, {"a", spec.bc().poisson_ratio()}};
    if (spec.bc().is_pair()) bc["i"] = spec.bc().pair_indices().i, bc["j"] = spec.bc().pair_indices().j;
    const json head = {
        {"key", key},
        {"domain", {{"lx", spec.domain().lx()}, {"ly", spec.domain().ly()}}},
        {"bc", bc},
        {"source", {{"kind", source_name(spec.source().kind)}, {"nx", spec.source().nx}, {"ny", spec.source().ny}}},
        {"label", label},
    };
    // values are written by hand so every one carries 17 significant digits
    std::string text = head.dump();
    text.pop_back();
    text += ",\"values\":[";
    char buf[40];
    for (std::size_t i = 0; i < spec.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", spec[i]);
        text += buf;
    }
    text += "]}\n";
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) fail(ErrorCode::InvalidArgument, "cannot write cache file " + tmp.string());
        f << text;
    }
    fs::rename(tmp, path);
    return path.string();
}

CacheLoad load_spectrum(const std::string& dir, const std::string& key) {
    CacheLoad out;
    out.path = (fs::path(dir) / cache_file_name(key)).string();
    std::ifstream f(out.path, std::ios::binary);
    if (!f) return out;
    try {
        std::stringstream ss;
        ss << f.rdbuf();
        const json j = json::parse(ss.str());
        if (j.at("key").get<std::string>() != key) {
            out.warning = "cache file " + out.path + " holds a different key";
            return out;
        }
        const auto& d = j.at("domain");
        const double ly = d.at("ly").get<double>();
        const DomainSpec dom = ly > 0 ? DomainSpec::rectangle(d.at("lx").get<double>(), ly)
                                      : DomainSpec::interval(d.at("lx").get<double>());
        const auto& s = j.at("source");
        SpectrumSource src{source_from(s.at("kind").get<std::string>()), s.at("nx").get<int>(), s.at("ny").get<int>()};
        std::vector<double> v = j.at("values").get<std::vector<double>>();
        if (v.empty()) {
            out.warning = "cache file " + out.path + " has no values";
            return out;
        }
        Spectrum spec(std::move(v), dom, bc_from(j.at("bc")), src);
        if (spectrum_cache_key(spec, j.value("label", "")) != key) {
            out.warning = "cache file " + out.path + " does not match its key";
            return out;
        }
        out.spectrum = std::move(spec);
    } catch (const std::exception& e) {
        out.warning = "corrupt cache file " + out.path + ": " + e.what();
    }
    return out;
}

Spectrum cached_fd_spectrum(const Grid2D& g, FdOperator op, int count, const std::string& dir, CacheEvent* event) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string label = fd_operator_name(op);
    const Spectrum probe({0.0}, g.dom, BoundaryCondition::dirichlet(), {SourceKind::FiniteDifference, g.nx, g.ny});
    const std::string key = spectrum_cache_key(probe, label);
    CacheEvent ev;
    ev.key = key;
    if (!dir.empty()) {
        CacheLoad l = load_spectrum(dir, key);
        ev.warning = l.warning;
        if (l.spectrum && static_cast<int>(l.spectrum->size()) >= count) {
            fd_memo_seed(g, op, l.spectrum->values());
            ev.hit = true;
        }
    }
    Spectrum s = fd_spectrum(g, op, count);
    if (!dir.empty() && !ev.hit) {
        const auto all = fd_memo_values(g, op);
        cache_spectrum(Spectrum(all, g.dom, BoundaryCondition::dirichlet(), {SourceKind::FiniteDifference, g.nx, g.ny}),
                       dir, label);
    }
    ev.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (event) *event = ev;
    return s;
}

}  // namespace bilap
