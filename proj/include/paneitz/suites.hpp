#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paneitz/check.hpp"

// Named batches of checks, shared by the command line verifier, the
// acceptance runner and the Python module.
namespace paneitz {

struct SuiteConfig {
    std::vector<std::string> suites;  // section2 covariance linearization energy solver models fourdim | all
    std::vector<int> n;               // boundary dimensions; empty means per-suite defaults
    std::vector<int> sizes = {17, 33};
    int draws = 1;                    // seeded draws per dimension
    std::uint64_t seed = 7;
    std::optional<double> tol;        // absolute floor for refinement checks
    int jobs = 1;
};

const std::vector<std::string>& suite_names();
// Expands "all" and rejects unknown names (std::invalid_argument).
std::vector<std::string> resolve_suites(const std::vector<std::string>& names);

// One named suite. Reports come back in a fixed order for a fixed config.
std::vector<CheckReport> run_suite(const std::string& name, const SuiteConfig& cfg);

// Every suite in cfg.suites; independent tasks run on up to cfg.jobs threads
// and are merged in submission order. Throws std::invalid_argument on an
// empty or unknown suite list.
std::vector<CheckReport> run_suites(const SuiteConfig& cfg);

// Seed of draw `draw` in dimension n, as used by the draw-based suites.
std::uint64_t suite_draw_seed(std::uint64_t seed, int n, int draw);

// Relative error |a - b| / max(|b|, tiny).
double relative_error(double a, double b);

}  // namespace paneitz
