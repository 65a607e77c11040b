#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bilap/cache.hpp"
#include "bilap/core.hpp"

namespace bilap::cli {

enum class Command {
    Roots,
    Spectrum1d,
    Riesz1d,
    LemmaOnedim,
    Constants,
    Predict,
    Avp,
    KroegerLaptev,
    Eig2d,
    Compare,
    All,
};

enum class Format { Csv, Json };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::All;
    std::optional<DomainSpec> domain;
    std::optional<std::string> bc;  // dirichlet | navier | ks | neumann
    std::optional<double> a;
    std::optional<OneDPair> pair;
    std::vector<int> k;
    std::vector<double> z, t, h;
    std::vector<int> grids;
    int n = 20;
    std::string out;
    Format format = Format::Csv;
    std::string cache_dir;
};

std::string command_name(Command c);

// "a:b:Nlog", "a:b:Nlin" or a comma list
std::vector<double> parse_real_range(const std::string& s);
// "a:b" inclusive, a single integer, or a comma list
std::vector<int> parse_int_range(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);
// interval:L | square:L | rect:LxW
DomainSpec parse_domain(const std::string& s);
OneDPair parse_pair(const std::string& s);

// flags override keys of the --config JSON file; throws ConfigError
RunConfig parse_command_line(int argc, const char* const* argv);

struct Report {
    std::string command;
    std::vector<BoundReport> rows;
    std::vector<CacheEvent> cache_events;
};

std::string render_csv(const Report& r, const std::string& stamp);
std::string render_json(const Report& r, const std::string& stamp);

// 1 when any asserted row fails, else 0
int exit_code(const std::vector<BoundReport>& rows);

// runs the subcommand; `companion` receives the Proposition report of `roots`
Report execute(const RunConfig& cfg, std::ostream& log, Report* companion = nullptr);

// full front end: parse, execute, write; returns the process exit code
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bilap::cli
