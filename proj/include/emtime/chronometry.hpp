#pragma once

// Emergent-time functionals: the rate dtau/dt of an observer's clock relative
// to coordinate time under motion, gravity and cosmic expansion, and the
// integrals of those rates.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "emtime/quadrature.hpp"

namespace emtime {

/// sqrt(1 - v^2/c^2). Requires 0 <= v < c.
double sr_factor(double v, double c = 1.0);

/// sqrt(1 - 2GM/(r c^2)). Requires r > 2GM/c^2.
double schwarzschild_factor(double gm, double r, double c = 1.0);

/// normalization * sqrt(1 - 2GM/r_B) * duration for a static observer (c = 1).
double emergent_time_schwarzschild(double gm, double r_b, double duration, double normalization = 1.0);

/// Integral of dt / a(t) over [t0, t1].
QuadratureResult emergent_time_flrw(const std::function<double(double)>& scale_factor, double t0, double t1,
                                    double tol = kDefaultTolerance);

/// Closed form of the integral of exp(-H t) over [0, T]: (1 - exp(-H T)) / H.
double emergent_time_exponential(double hubble, double duration);

/// Diagonal metric components g_00..g_33 evaluated along a worldline at coordinate time t.
using MetricDiagonal = std::function<std::array<double, 4>(double)>;
/// Coordinate velocities dx^mu/dt with x^0 = c t, so component 0 is c.
using CoordinateVelocity = std::function<std::array<double, 4>(double)>;

/// (-1, 1, 1, 1) in Cartesian coordinates (ct, x, y, z).
MetricDiagonal minkowski_metric();

/// Schwarzschild in (ct, r, theta, phi) at the equator theta = pi/2.
MetricDiagonal schwarzschild_metric(double gm, std::function<double(double)> radius, double c = 1.0);

/// (c, v, 0, 0): motion along one spatial axis at speed v(t).
CoordinateVelocity axial_velocity(std::function<double(double)> speed, double c = 1.0);

/// (1/c) * integral of sqrt(-g_mu_nu u^mu u^nu) dt. Spacelike or null
/// samples raise DomainError.
QuadratureResult emergent_time_metric(const MetricDiagonal& metric, const CoordinateVelocity& velocity,
                                      double t0, double t1, double tol = kDefaultTolerance, double c = 1.0);

/// Either a constant or samples on a time grid, linearly interpolated.
class Profile {
public:
    Profile() = default;
    static Profile constant(double value);
    static Profile tabulated(std::vector<double> times, std::vector<double> values);

    double operator()(double t) const;
    bool is_constant() const noexcept { return times_.empty(); }
    const std::vector<double>& knots() const noexcept { return times_; }
    double min() const;
    double max() const;

private:
    double constant_ = 0.0;
    std::vector<double> times_;
    std::vector<double> values_;
};

struct WorldlineSpec {
    Profile speed = Profile::constant(0.0);
    Profile radius = Profile::constant(1.0);
    double gm = 0.0;
    double hubble = 0.0;
    double c = 1.0;
    double t0 = 0.0;
    double t1 = 1.0;
};

/// The three subtracted contributions of the unified radicand
/// 1 - 2GM/(r c^2) - v^2/c^2 - H^2 r^2/c^2.
struct RadicandTerms {
    double gravitational = 0.0;
    double kinematic = 0.0;
    double cosmological = 0.0;

    double radicand() const noexcept { return 1.0 - gravitational - kinematic - cosmological; }
    /// Names the term(s) responsible for a negative radicand.
    std::string dominant() const;
};

RadicandTerms unified_terms(const WorldlineSpec& spec, double t);

/// Checks the parameter invariants and samples the radicand on a 1024-point
/// grid plus endpoints. Throws DomainError naming the offending term.
void validate(const WorldlineSpec& spec);

struct EmergentTimeSeries {
    std::vector<double> t_grid;
    std::vector<double> tau_values;
    std::vector<double> cumulative_error; // error bound on tau_values[i]
    double quadrature_error_estimate = 0.0;
};

/// Cumulative emergent time of a worldline sampled on `samples` evenly spaced
/// coordinate times. The total error estimate is kept within `tol`.
EmergentTimeSeries emergent_time_unified(const WorldlineSpec& spec, double tol = kDefaultTolerance,
                                         std::size_t samples = 101);

/// Cumulative integral of dt / a(t) on an explicit coordinate grid.
EmergentTimeSeries flrw_series(const std::function<double(double)>& scale_factor,
                               const std::vector<double>& t_grid, double tol = kDefaultTolerance);

/// tau(t) = rate * (t - t_grid[0]).
EmergentTimeSeries constant_rate_series(double rate, const std::vector<double>& t_grid);

/// n evenly spaced points from a to b inclusive.
std::vector<double> linspace(double a, double b, std::size_t n);

} // namespace emtime
