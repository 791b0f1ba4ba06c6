#pragma once

#include <functional>

// Independent reference computations for the test suites. Nothing here may
// call into the production kernel formulas it is used to check.
namespace oracle {

/// Lanczos approximation of Gamma(x) for x > 0, ~1e-15 relative on [0.5, 3.5].
double gamma(double x);

/// Composite Simpson rule with n (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, int n);

} // namespace oracle
