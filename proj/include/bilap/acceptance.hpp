#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bilap/core.hpp"

namespace bilap {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double budget = 0;    // seconds
    double worst = 0;     // smallest margin seen (negative means a violation)
    std::string detail;
    std::vector<BoundReport> rows;
    bool in_budget() const { return seconds <= budget; }
};

struct AcceptanceOptions {
    std::vector<int> grids{32, 64, 128};
    // called once per criterion as it finishes
    std::function<void(const CriterionResult&)> on_result;
    // called before the FD spectra are first needed; may seed the memo from disk
    std::function<void(const std::vector<int>&, int)> before_fd;
};

// FD modes prefetched on every grid (heat trace needs the most)
inline constexpr int kAcceptanceModes = 200;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

// a single criterion, 1..12
CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});

// deterministic (p, x) points in [0,10]^2 from the 2D additive recurrence
std::vector<std::pair<double, double>> young_sample_points(int count);

}  // namespace bilap
