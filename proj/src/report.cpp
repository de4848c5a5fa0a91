#include "paneitz/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace paneitz {

namespace {

nlohmann::ordered_json number(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

nlohmann::ordered_json to_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["topic"] = r.topic;
    j["sizes"] = r.sizes;
    auto res = nlohmann::ordered_json::array();
    for (double x : r.residuals) res.push_back(number(x));
    j["residuals"] = res;
    j["order"] = number(r.order);
    j["min_order"] = r.min_order;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    auto vals = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.values) vals[k] = number(v);
    j["values"] = vals;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace

bool all_pass(const std::vector<CheckReport>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string report_json(const SuiteConfig& cfg, const std::vector<CheckReport>& checks, bool with_timing) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    nlohmann::ordered_json echo;
    echo["suites"] = resolve_suites(cfg.suites);
    echo["n"] = cfg.n;
    echo["sizes"] = cfg.sizes;
    echo["draws"] = cfg.draws;
    echo["seed"] = cfg.seed;
    echo["tol"] = cfg.tol ? nlohmann::ordered_json(*cfg.tol) : nlohmann::ordered_json(nullptr);
    j["config_echo"] = echo;
    auto arr = nlohmann::ordered_json::array();
    std::size_t passed = 0;
    for (const auto& c : checks) {
        arr.push_back(to_json(c));
        passed += c.pass;
    }
    j["checks"] = arr;
    j["summary"] = {{"total", checks.size()}, {"passed", passed}};
    if (with_timing) {
        nlohmann::ordered_json t;
        double total = 0;
        auto per = nlohmann::ordered_json::object();
        for (const auto& c : checks) {
            per[c.id] = c.wall_ms;
            total += c.wall_ms;
        }
        t["jobs"] = cfg.jobs;
        t["total_ms"] = total;
        t["checks_ms"] = per;
        j["timing"] = t;
    }
    return j.dump(2) + "\n";
}

std::string report_csv(const std::vector<CheckReport>& checks) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "id,topic,level,size,residual,order,min_order,tolerance,pass\n";
    for (const auto& c : checks) {
        const std::size_t levels = std::max<std::size_t>(c.residuals.size(), 1);
        for (std::size_t i = 0; i < levels; ++i) {
            os << csv_field(c.id) << ',' << csv_field(c.topic) << ',' << i << ',';
            if (i < c.sizes.size()) os << c.sizes[i];
            os << ',';
            if (i < c.residuals.size()) os << c.residuals[i];
            os << ',' << c.order << ',' << c.min_order << ',' << c.tolerance << ',' << (c.pass ? "true" : "false") << '\n';
        }
    }
    return os.str();
}

}  // namespace paneitz
