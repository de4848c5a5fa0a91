// Batch verifier: runs named check suites and writes a JSON or CSV report.
//
//   paneitz-verify [--config FILE] [--suite a,b] [--n 2,3] [--sizes 17,33]
//                  [--seed S] [--draws K] [--tol T] [--out PATH]
//                  [--format json|csv] [--jobs J]
//
// The config file holds key=value lines with the same names; flags win.
// Exit status: 0 all checks pass, 1 some check failed (report written),
// 2 bad usage or config (nothing written).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "paneitz/report.hpp"
#include "paneitz/suites.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"Run conformal-geometry verification suites and write a report"};
    paneitz::SuiteConfig cfg;
    std::string suite_help = "suites to run:";
    for (const auto& s : paneitz::suite_names()) suite_help += " " + s;
    suite_help += " all";
    double tol = 0.0;
    std::string out, format = "json";

    app.set_config("--config", "", "key=value configuration file");
    app.add_option("--suite", cfg.suites, suite_help)->delimiter(',');
    app.add_option("--n", cfg.n, "boundary dimensions (default per suite)")->delimiter(',');
    app.add_option("--sizes", cfg.sizes, "nodes per axis for each refinement level")->delimiter(',')->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed of the random draws")->capture_default_str();
    app.add_option("--draws", cfg.draws, "draws per dimension")->check(CLI::PositiveNumber)->capture_default_str();
    auto* tol_opt = app.add_option("--tol", tol, "absolute floor for refinement checks")->check(CLI::PositiveNumber);
    app.add_option("--out", out, "report path (default $PANEITZ_REPORT_DIR/paneitz_report.<format>)");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "concurrent tasks")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (*tol_opt) cfg.tol = tol;
    for (int n : cfg.n)
        if (n < 2) {
            std::cerr << "error: boundary dimension must be at least 2\n";
            return 2;
        }
    for (int N : cfg.sizes)
        if (N < 10) {
            std::cerr << "error: grid sizes must be at least 10 nodes per axis\n";
            return 2;
        }

    try {
        cfg.suites = paneitz::resolve_suites(cfg.suites);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    fs::path path = out;
    if (out.empty()) {
        const char* dir = std::getenv("PANEITZ_REPORT_DIR");
        path = fs::path(dir && *dir ? dir : ".") / ("paneitz_report." + format);
    }

    std::vector<paneitz::CheckReport> checks;
    try {
        checks = paneitz::run_suites(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) {
        std::cerr << "error: cannot write " << path << "\n";
        return 2;
    }
    os << (format == "csv" ? paneitz::report_csv(checks) : paneitz::report_json(cfg, checks));

    std::size_t passed = 0;
    for (const auto& c : checks) {
        passed += c.pass;
        if (!c.pass) std::cerr << "FAIL " << c.id << "\n";
    }
    std::cout << passed << "/" << checks.size() << " checks passed; report: " << path.string() << "\n";
    return paneitz::all_pass(checks) ? 0 : 1;
}
