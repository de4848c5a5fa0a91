#include "paneitz/check.hpp"

#include <cmath>
#include <limits>

namespace paneitz {

double observed_order(double coarse, double fine) {
    if (fine <= 0.0) return std::numeric_limits<double>::infinity();
    if (coarse <= 0.0) return 0.0;
    return std::log2(coarse / fine);
}

CheckReport refinement_check(std::string id, std::string topic, std::vector<int> sizes,
                             std::vector<double> residuals, double min_order, double floor) {
    CheckReport r;
    r.id = std::move(id);
    r.topic = std::move(topic);
    r.sizes = std::move(sizes);
    r.residuals = std::move(residuals);
    r.min_order = min_order;
    r.tolerance = floor;
    const std::size_t m = r.residuals.size();
    bool finite = true;
    for (double v : r.residuals) finite = finite && std::isfinite(v);
    if (m >= 2) r.order = observed_order(r.residuals[m - 2], r.residuals[m - 1]);
    const double last = m ? r.residuals[m - 1] : std::numeric_limits<double>::quiet_NaN();
    r.pass = finite && m > 0 && (last < floor || (m >= 2 && r.order >= min_order));
    if (std::isinf(r.order)) r.order = 99.0;
    return r;
}

CheckReport tolerance_check(std::string id, std::string topic, double residual, double tol) {
    CheckReport r;
    r.id = std::move(id);
    r.topic = std::move(topic);
    r.residuals = {residual};
    r.tolerance = tol;
    r.pass = std::isfinite(residual) && residual <= tol;
    return r;
}

}  // namespace paneitz
