#pragma once

#include <functional>

namespace emtime {

inline constexpr double kDefaultTolerance = 1e-8;

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

struct SimpsonOptions {
    double tol = kDefaultTolerance;
    int min_depth = 2;
    int max_depth = 48;
};

/// Adaptive composite Simpson rule. An interval is accepted once the two-panel
/// and one-panel estimates differ by at most 15x its share of the tolerance;
/// the accepted value carries the Richardson correction and the reported error
/// sums |S2 - S1| / 15 plus a floating-point rounding floor.
///
/// Throws QuadratureError when the integrand returns a non-finite value or
/// the error budget is exceeded at max_depth.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const SimpsonOptions& options = {});

} // namespace emtime
