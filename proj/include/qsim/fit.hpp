// fit.hpp
// Log-log least-squares power-law fitting for scaling experiments.

#pragma once

#include <span>
#include <utility>
#include <vector>

namespace qsim::harness {

struct FitResult {
    double exponent = 0.0;
    double log_intercept = 0.0; // natural log of the prefactor
    double r_squared = 0.0;
};

// Least-squares line through (ln n, ln cost). Requires at least 3 points
// with distinct n; every n and cost must be strictly positive.
FitResult fit_power_law(std::span<const std::pair<double, double>> points);

// Drops points with n < min_n (small-size transients). Raw points should
// always be emitted unfiltered; this only shapes the fit input.
std::vector<std::pair<double, double>> apply_burn_in(
    std::span<const std::pair<double, double>> points, double min_n = 16.0);

} // namespace qsim::harness
