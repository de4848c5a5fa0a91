#pragma once

#include <string>
#include <utility>
#include <vector>

namespace paneitz {

// Outcome of one verification. For refinement studies residuals[i] belongs to
// sizes[i]; the observed order is log2(r_coarse / r_fine) between the last two.
struct CheckReport {
    std::string id;
    std::string topic;
    std::vector<int> sizes;
    std::vector<double> residuals;
    double order = 0.0;
    double min_order = 0.0;  // 0 for tolerance checks
    double tolerance = 0.0;
    bool pass = false;
    double wall_ms = 0.0;
    std::vector<std::pair<std::string, double>> values;
    std::string note;
};

inline constexpr double kAbsFloor = 1e-8;

// Pass if the observed order reaches min_order or the finest residual is
// below the absolute floor.
CheckReport refinement_check(std::string id, std::string topic, std::vector<int> sizes,
                             std::vector<double> residuals, double min_order = 2.0,
                             double floor = kAbsFloor);

// Pass if residual <= tol.
CheckReport tolerance_check(std::string id, std::string topic, double residual, double tol);

double observed_order(double coarse, double fine);

}  // namespace paneitz
