#pragma once

#include <string>
#include <vector>

#include "paneitz/check.hpp"
#include "paneitz/suites.hpp"

namespace paneitz {

inline constexpr int kReportSchemaVersion = 1;

// {schema_version, config_echo, checks, summary{total, passed}}. The body is
// a pure function of the config and the reports; wall times go under a
// separate "timing" key only when requested.
std::string report_json(const SuiteConfig& cfg, const std::vector<CheckReport>& checks, bool with_timing = true);
// One row per check and refinement level.
std::string report_csv(const std::vector<CheckReport>& checks);

bool all_pass(const std::vector<CheckReport>& checks);

}  // namespace paneitz
