#include "emtime/chronometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "emtime/error.hpp"

namespace emtime {

namespace {

constexpr std::size_t kValidationSamples = 1024;

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + " must be finite");
}

void require_interval(double t0, double t1) {
    require_finite(t0, "t0");
    require_finite(t1, "t1");
    if (t1 < t0) throw InvalidArgument("interval end " + num(t1) + " precedes start " + num(t0));
}

// Grid of validation samples: kValidationSamples evenly spaced interior
// points plus both endpoints.
template <class Fn>
void for_each_sample(double t0, double t1, Fn&& fn) {
    fn(t0);
    for (std::size_t i = 1; i <= kValidationSamples; ++i) {
        fn(t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(kValidationSamples + 1));
    }
    fn(t1);
}

// Emergent time on a sub-interval; tabulation knots split the integration so
// each piece is smooth.
QuadratureResult integrate_pieces(const std::function<double(double)>& rate, double a, double b,
                                  const std::vector<double>& knots, double tol) {
    std::vector<double> cuts{a};
    for (double k : knots) {
        if (k > a && k < b) cuts.push_back(k);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    QuadratureResult total;
    const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const QuadratureResult r = adaptive_simpson(rate, cuts[i], cuts[i + 1], {.tol = piece_tol});
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.evaluations += r.evaluations;
    }
    return total;
}

} // namespace

double sr_factor(double v, double c) {
    require_finite(v, "speed");
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("speed of light must be positive");
    if (v < 0.0) throw InvalidArgument("speed must be nonnegative, got " + num(v));
    if (v >= c) {
        throw DomainError("kinematic term: speed " + num(v) + " is not below c = " + num(c) +
                              "; proper time is undefined",
                          "kinematic");
    }
    const double beta = v / c;
    return std::sqrt((1.0 - beta) * (1.0 + beta));
}

double schwarzschild_factor(double gm, double r, double c) {
    require_finite(gm, "GM");
    require_finite(r, "r");
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("speed of light must be positive");
    if (gm < 0.0) throw InvalidArgument("GM must be nonnegative, got " + num(gm));
    if (!(r > 0.0)) throw InvalidArgument("radial coordinate must be positive, got " + num(r));
    const double compactness = 2.0 * gm / (r * c * c);
    if (compactness >= 1.0) {
        throw DomainError("gravitational term: r = " + num(r) + " is at or inside the horizon 2GM/c^2 = " +
                              num(2.0 * gm / (c * c)),
                          "gravitational");
    }
    return std::sqrt(1.0 - compactness);
}

double emergent_time_schwarzschild(double gm, double r_b, double duration, double normalization) {
    require_finite(duration, "duration");
    require_finite(normalization, "normalization");
    if (duration < 0.0) throw InvalidArgument("duration must be nonnegative");
    if (!(normalization > 0.0)) throw InvalidArgument("normalization must be positive");
    return normalization * schwarzschild_factor(gm, r_b, 1.0) * duration;
}

QuadratureResult emergent_time_flrw(const std::function<double(double)>& scale_factor, double t0, double t1,
                                    double tol) {
    require_interval(t0, t1);
    auto checked = [&](double t) {
        const double a = scale_factor(t);
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw DomainError("scale factor a(t) = " + num(a) + " is not positive at t = " + num(t), "scale factor");
        }
        return a;
    };
    for_each_sample(t0, t1, checked);
    return adaptive_simpson([&](double t) { return 1.0 / checked(t); }, t0, t1, {.tol = tol});
}

double emergent_time_exponential(double hubble, double duration) {
    require_finite(hubble, "H");
    require_finite(duration, "duration");
    if (!(hubble > 0.0)) throw InvalidArgument("Hubble rate must be positive, got " + num(hubble));
    if (duration < 0.0) throw InvalidArgument("duration must be nonnegative");
    return -std::expm1(-hubble * duration) / hubble;
}

MetricDiagonal minkowski_metric() {
    return [](double) { return std::array<double, 4>{-1.0, 1.0, 1.0, 1.0}; };
}

MetricDiagonal schwarzschild_metric(double gm, std::function<double(double)> radius, double c) {
    return [gm, c, radius = std::move(radius)](double t) {
        const double r = radius(t);
        const double lapse = 1.0 - 2.0 * gm / (r * c * c);
        return std::array<double, 4>{-lapse, 1.0 / lapse, r * r, r * r};
    };
}

CoordinateVelocity axial_velocity(std::function<double(double)> speed, double c) {
    return [c, speed = std::move(speed)](double t) { return std::array<double, 4>{c, speed(t), 0.0, 0.0}; };
}

QuadratureResult emergent_time_metric(const MetricDiagonal& metric, const CoordinateVelocity& velocity,
                                      double t0, double t1, double tol, double c) {
    require_interval(t0, t1);
    if (!(c > 0.0)) throw InvalidArgument("speed of light must be positive");
    auto radicand = [&](double t) {
        const auto g = metric(t);
        const auto u = velocity(t);
        double s = 0.0;
        for (std::size_t mu = 0; mu < 4; ++mu) s -= g[mu] * u[mu] * u[mu];
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw DomainError("worldline is not timelike at t = " + num(t) + " (-g u u = " + num(s) + ")", "metric");
        }
        return s;
    };
    for_each_sample(t0, t1, radicand);
    return adaptive_simpson([&](double t) { return std::sqrt(radicand(t)) / c; }, t0, t1, {.tol = tol});
}

Profile Profile::constant(double value) {
    require_finite(value, "profile value");
    Profile p;
    p.constant_ = value;
    return p;
}

Profile Profile::tabulated(std::vector<double> times, std::vector<double> values) {
    if (times.size() != values.size()) throw InvalidArgument("tabulated profile: times and values differ in length");
    if (times.size() < 2) throw InvalidArgument("tabulated profile: need at least 2 samples");
    for (std::size_t i = 0; i < times.size(); ++i) {
        require_finite(times[i], "profile time");
        require_finite(values[i], "profile value");
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw InvalidArgument("tabulated profile: times must be strictly increasing");
        }
    }
    Profile p;
    p.times_ = std::move(times);
    p.values_ = std::move(values);
    return p;
}

double Profile::operator()(double t) const {
    if (is_constant()) return constant_;
    if (t < times_.front() || t > times_.back()) {
        throw InvalidArgument("tabulated profile evaluated at t = " + num(t) + " outside [" + num(times_.front()) +
                              ", " + num(times_.back()) + "]");
    }
    auto hi = std::upper_bound(times_.begin(), times_.end(), t);
    if (hi == times_.end()) return values_.back();
    const std::size_t j = static_cast<std::size_t>(hi - times_.begin());
    const double w = (t - times_[j - 1]) / (times_[j] - times_[j - 1]);
    return (1.0 - w) * values_[j - 1] + w * values_[j];
}

double Profile::min() const {
    return is_constant() ? constant_ : *std::min_element(values_.begin(), values_.end());
}

double Profile::max() const {
    return is_constant() ? constant_ : *std::max_element(values_.begin(), values_.end());
}

std::string RadicandTerms::dominant() const {
    const std::array<std::pair<const char*, double>, 3> terms{
        {{"gravitational", gravitational}, {"kinematic", kinematic}, {"cosmological", cosmological}}};
    std::string names;
    for (const auto& [name, value] : terms) {
        if (value >= 1.0) names += names.empty() ? name : std::string("+") + name;
    }
    if (!names.empty()) return names;
    const auto* largest = &terms[0];
    for (const auto& term : terms) {
        if (term.second > largest->second) largest = &term;
    }
    return largest->first;
}

RadicandTerms unified_terms(const WorldlineSpec& spec, double t) {
    const double c2 = spec.c * spec.c;
    const double v = spec.speed(t);
    RadicandTerms terms;
    terms.kinematic = v * v / c2;
    if (spec.gm != 0.0 || spec.hubble != 0.0) {
        const double r = spec.radius(t);
        if (!(r > 0.0)) {
            throw DomainError("radial coordinate r = " + num(r) + " is not positive at t = " + num(t),
                              "gravitational");
        }
        terms.gravitational = 2.0 * spec.gm / (r * c2);
        terms.cosmological = spec.hubble * spec.hubble * r * r / c2;
    }
    return terms;
}

namespace {

double checked_radicand(const WorldlineSpec& spec, double t) {
    const RadicandTerms terms = unified_terms(spec, t);
    const double radicand = terms.radicand();
    if (radicand < 0.0 || !std::isfinite(radicand)) {
        const std::string term = terms.dominant();
        throw DomainError(term + " term makes the radicand negative at t = " + num(t) + " (2GM/(rc^2) = " +
                              num(terms.gravitational) + ", v^2/c^2 = " + num(terms.kinematic) +
                              ", H^2 r^2/c^2 = " + num(terms.cosmological) + ", radicand = " + num(radicand) + ")",
                          term);
    }
    return radicand;
}

std::vector<double> merged_knots(const WorldlineSpec& spec) {
    std::vector<double> knots = spec.speed.knots();
    knots.insert(knots.end(), spec.radius.knots().begin(), spec.radius.knots().end());
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    return knots;
}

} // namespace

void validate(const WorldlineSpec& spec) {
    require_interval(spec.t0, spec.t1);
    require_finite(spec.gm, "GM");
    require_finite(spec.hubble, "H");
    if (!(spec.c > 0.0) || !std::isfinite(spec.c)) throw InvalidArgument("speed of light must be positive");
    if (spec.gm < 0.0) throw InvalidArgument("GM must be nonnegative");
    if (spec.hubble < 0.0) throw InvalidArgument("Hubble rate must be nonnegative");
    for (const Profile* p : {&spec.speed, &spec.radius}) {
        if (!p->is_constant() && (p->knots().front() > spec.t0 || p->knots().back() < spec.t1)) {
            throw InvalidArgument("tabulated profile does not cover [t0, t1]");
        }
    }
    for_each_sample(spec.t0, spec.t1, [&](double t) { checked_radicand(spec, t); });
}

EmergentTimeSeries emergent_time_unified(const WorldlineSpec& spec, double tol, std::size_t samples) {
    if (samples < 2) throw InvalidArgument("emergent_time_unified: need at least 2 samples");
    if (!(tol > 0.0)) throw InvalidArgument("emergent_time_unified: tolerance must be positive");
    validate(spec);

    const auto rate = [&](double t) { return std::sqrt(checked_radicand(spec, t)); };
    const std::vector<double> knots = merged_knots(spec);

    EmergentTimeSeries series;
    series.t_grid = linspace(spec.t0, spec.t1, samples);
    series.tau_values.assign(samples, 0.0);
    series.cumulative_error.assign(samples, 0.0);
    const double segment_tol = tol / static_cast<double>(samples - 1);
    for (std::size_t i = 1; i < samples; ++i) {
        const QuadratureResult r = integrate_pieces(rate, series.t_grid[i - 1], series.t_grid[i], knots, segment_tol);
        series.tau_values[i] = series.tau_values[i - 1] + std::max(0.0, r.value);
        series.cumulative_error[i] = series.cumulative_error[i - 1] + r.error_estimate;
    }
    series.quadrature_error_estimate = series.cumulative_error.back();
    return series;
}

EmergentTimeSeries flrw_series(const std::function<double(double)>& scale_factor, const std::vector<double>& t_grid,
                               double tol) {
    if (t_grid.size() < 2) throw InvalidArgument("flrw_series: need at least 2 grid points");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) throw InvalidArgument("flrw_series: grid must be strictly increasing");
    }
    EmergentTimeSeries series;
    series.t_grid = t_grid;
    series.tau_values.assign(t_grid.size(), 0.0);
    series.cumulative_error.assign(t_grid.size(), 0.0);
    const double segment_tol = tol / static_cast<double>(t_grid.size() - 1);
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const QuadratureResult r = emergent_time_flrw(scale_factor, t_grid[i - 1], t_grid[i], segment_tol);
        series.tau_values[i] = series.tau_values[i - 1] + r.value;
        series.cumulative_error[i] = series.cumulative_error[i - 1] + r.error_estimate;
    }
    series.quadrature_error_estimate = series.cumulative_error.back();
    return series;
}

EmergentTimeSeries constant_rate_series(double rate, const std::vector<double>& t_grid) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw InvalidArgument("tick rate must be finite and nonnegative");
    if (t_grid.empty()) throw InvalidArgument("constant_rate_series: empty grid");
    EmergentTimeSeries series;
    series.t_grid = t_grid;
    series.tau_values.reserve(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (i > 0 && t_grid[i] < t_grid[i - 1]) throw InvalidArgument("constant_rate_series: grid decreases");
        series.tau_values.push_back(rate * (t_grid[i] - t_grid.front()));
    }
    series.cumulative_error.assign(t_grid.size(), 0.0);
    return series;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {a};
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    out.back() = b;
    return out;
}

} // namespace emtime
