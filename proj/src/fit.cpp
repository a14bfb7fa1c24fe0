#include "qsim/fit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qsim/errors.hpp"

namespace qsim::harness {

FitResult fit_power_law(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) {
        throw validation_error("power-law fit needs at least 3 points");
    }
    std::set<double> distinct;
    for (const auto& [n, cost] : points) {
        if (!(n > 0.0) || !(cost > 0.0)) {
            throw validation_error("power-law fit needs strictly positive points");
        }
        distinct.insert(n);
    }
    if (distinct.size() < 3) {
        throw validation_error("power-law fit needs 3 distinct sizes");
    }

    const double count = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [n, cost] : points) {
        const double x = std::log(n);
        const double y = std::log(cost);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = count * sxx - sx * sx;
    FitResult fit;
    fit.exponent = (count * sxy - sx * sy) / denom;
    fit.log_intercept = (sy - fit.exponent * sx) / count;

    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / count;
    for (const auto& [n, cost] : points) {
        const double y = std::log(cost);
        const double predicted = fit.log_intercept + fit.exponent * std::log(n);
        ss_res += (y - predicted) * (y - predicted);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

std::vector<std::pair<double, double>> apply_burn_in(
    std::span<const std::pair<double, double>> points, double min_n) {
    std::vector<std::pair<double, double>> kept;
    std::copy_if(points.begin(), points.end(), std::back_inserter(kept),
                 [min_n](const auto& p) { return p.first >= min_n; });
    return kept;
}

} // namespace qsim::harness
