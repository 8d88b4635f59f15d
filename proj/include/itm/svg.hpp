#pragma once

// Self-contained SVG plots for reports.

#include <string>

#include "itm/circle.hpp"
#include "itm/measure.hpp"

namespace itm::svg {

std::string density_histogram(const Measure& mu, const std::string& title);
/// Also used for the conjugacy h, which is the CDF of the invariant measure.
std::string cdf_curve(const Measure& mu, const std::string& title);
/// One bar per iterate, the arcs of that iterate drawn along [0,1).
std::string arcs_bars(const std::vector<ArcSet>& rows, const std::string& title);

}  // namespace itm::svg
