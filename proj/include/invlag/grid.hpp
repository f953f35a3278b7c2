#pragma once

#include <vector>

namespace invlag {

/// n evenly spaced values from lo to hi inclusive (n >= 1; n == 1 yields lo).
std::vector<double> linspace(double lo, double hi, int n);

} // namespace invlag
