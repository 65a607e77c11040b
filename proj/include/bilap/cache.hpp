#pragma once

#include <optional>
#include <string>

#include "bilap/core.hpp"
#include "bilap/eig2d.hpp"

namespace bilap {

// domain | bc | source (carries the resolution) | optional operator label
std::string spectrum_cache_key(const Spectrum& spec, const std::string& label = "");

// sanitized key plus a 64-bit FNV-1a hash of the full key
std::string cache_file_name(const std::string& key);

// writes <dir>/<cache_file_name(key)> and returns its path; creates dir if needed
std::string cache_spectrum(const Spectrum& spec, const std::string& dir, const std::string& label = "");

struct CacheLoad {
    std::optional<Spectrum> spectrum;
    std::string path;
    std::string warning;  // set when a file exists but cannot be used
};

CacheLoad load_spectrum(const std::string& dir, const std::string& key);

struct CacheEvent {
    std::string key;
    bool hit = false;
    double seconds = 0;
    std::string warning;
};

// FD spectrum through the on-disk cache; an empty dir disables persistence
Spectrum cached_fd_spectrum(const Grid2D& g, FdOperator op, int count, const std::string& dir,
                            CacheEvent* event = nullptr);

}  // namespace bilap
