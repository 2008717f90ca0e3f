#include "doctest.h"

#include <cmath>
#include <random>

#include "emtime/chronometry.hpp"
#include "emtime/error.hpp"
#include "emtime/quadrature.hpp"

using namespace emtime;

TEST_CASE("adaptive Simpson") {
    SUBCASE("polynomials up to cubic are exact") {
        const auto r = adaptive_simpson([](double x) { return 3 * x * x * x - x + 2; }, -1.0, 2.0);
        CHECK(r.value == doctest::Approx(3.0 * 15.0 / 4.0 - 1.5 + 6.0).epsilon(1e-14));
    }
    SUBCASE("error estimate bounds the true error for smooth integrands") {
        struct Case {
            std::function<double(double)> f;
            double a, b, exact;
        };
        const std::vector<Case> cases{
            {[](double x) { return std::sin(x); }, 0.0, 3.0, 1.0 - std::cos(3.0)},
            {[](double x) { return std::exp(-2.0 * x); }, 0.0, 5.0, (1.0 - std::exp(-10.0)) / 2.0},
            {[](double x) { return 1.0 / (1.0 + x * x); }, -4.0, 4.0, 2.0 * std::atan(4.0)},
        };
        for (const auto& c : cases) {
            for (double tol : {1e-4, 1e-8, 1e-11}) {
                const auto r = adaptive_simpson(c.f, c.a, c.b, {.tol = tol});
                CHECK(std::abs(r.value - c.exact) <= r.error_estimate);
                CHECK(r.error_estimate <= tol);
            }
        }
    }
    SUBCASE("integrable endpoint singularity still converges") {
        const auto r = adaptive_simpson([](double x) { return std::sqrt(x); }, 0.0, 1.0, {.tol = 1e-10});
        CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-9);
    }
    SUBCASE("reversed and empty intervals") {
        CHECK(adaptive_simpson([](double) { return 1.0; }, 1.0, 1.0).value == 0.0);
        CHECK(adaptive_simpson([](double x) { return x; }, 1.0, 0.0).value == doctest::Approx(-0.5));
    }
    SUBCASE("non-finite integrand") {
        CHECK_THROWS_AS(adaptive_simpson([](double x) { return 1.0 / x; }, 0.0, 1.0), QuadratureError);
    }
}

TEST_CASE("special-relativistic factor") {
    CHECK(sr_factor(0.0) == 1.0);
    CHECK(sr_factor(0.6) == 0.8);
    CHECK(sr_factor(1.8, 3.0) == 0.8);
    double previous = 1.0;
    for (double eps : {1e-1, 1e-2, 1e-4, 1e-8, 1e-12}) {
        const double f = sr_factor(1.0 - eps);
        CHECK(f < previous);
        previous = f;
    }
    CHECK(previous < 2e-6);
    CHECK_THROWS_AS(sr_factor(1.0), DomainError);
    CHECK_THROWS_AS(sr_factor(1.2), DomainError);
    CHECK_THROWS_AS(sr_factor(-0.1), InvalidArgument);
    try {
        sr_factor(2.0);
    } catch (const DomainError& e) {
        CHECK(e.term() == "kinematic");
    }
}

TEST_CASE("Schwarzschild factor") {
    CHECK(schwarzschild_factor(0.0, 3.0) == 1.0);
    CHECK(std::abs(schwarzschild_factor(1.0, 4.0) - std::sqrt(0.5)) <= 1e-15);
    CHECK(std::abs(schwarzschild_factor(2.5, 10.0, 1.0) - std::sqrt(0.5)) <= 1e-15);
    double previous = 0.0;
    for (double r = 2.5; r < 1e6; r *= 3.0) {
        const double f = schwarzschild_factor(1.0, r);
        CHECK(f > previous);
        previous = f;
    }
    CHECK(previous > 0.99999);
    CHECK_THROWS_AS(schwarzschild_factor(1.0, 2.0), DomainError);
    CHECK_THROWS_AS(schwarzschild_factor(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(schwarzschild_factor(1.0, -1.0), InvalidArgument);
}

TEST_CASE("Schwarzschild emergent time") {
    CHECK(emergent_time_schwarzschild(0.0, 5.0, 7.0) == 7.0);
    CHECK(emergent_time_schwarzschild(1.0, 4.0, 7.0) == doctest::Approx(7.0 * std::sqrt(0.5)).epsilon(1e-15));
    CHECK(emergent_time_schwarzschild(1.0, 4.0, 7.0, 2.5) == 2.5 * emergent_time_schwarzschild(1.0, 4.0, 7.0));
    CHECK_THROWS_AS(emergent_time_schwarzschild(1.0, 1.5, 7.0), DomainError);
}

TEST_CASE("FLRW emergent time") {
    SUBCASE("static universe") {
        CHECK(emergent_time_flrw([](double) { return 1.0; }, 2.0, 5.5).value == doctest::Approx(3.5).epsilon(1e-15));
    }
    SUBCASE("exponential expansion") {
        const auto r = emergent_time_flrw([](double t) { return std::exp(t); }, 0.0, 1.0);
        CHECK(std::abs(r.value - 0.6321205588285577) <= 1e-8);
        CHECK(std::abs(r.value - 0.6321205588285577) <= r.error_estimate);
    }
    SUBCASE("saturates at 1/H") {
        const double h = 0.5;
        double previous = 0.0;
        for (double t1 : {10.0, 40.0, 100.0}) {
            const auto r = emergent_time_flrw([h](double t) { return std::exp(h * t); }, 0.0, t1, 1e-10);
            CHECK(r.value > previous);
            CHECK(r.value <= 1.0 / h + r.error_estimate);
            previous = r.value;
        }
        CHECK(std::abs(previous - 1.0 / h) < 1e-8);
    }
    SUBCASE("nonpositive scale factor") {
        CHECK_THROWS_AS(emergent_time_flrw([](double t) { return 1.0 - t; }, 0.0, 2.0), DomainError);
    }
}

TEST_CASE("exponential closed form") {
    CHECK(emergent_time_exponential(1.0, 0.0) == 0.0);
    CHECK(emergent_time_exponential(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(emergent_time_exponential(0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(emergent_time_exponential(-1.0, 1.0), InvalidArgument);

    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> h_dist(0.1, 5.0), t_dist(0.1, 10.0);
    for (int i = 0; i < 20; ++i) {
        const double h = h_dist(rng), t = t_dist(rng);
        const auto q = emergent_time_flrw([h](double s) { return std::exp(h * s); }, 0.0, t);
        CHECK(std::abs(q.value - emergent_time_exponential(h, t)) <= 1e-8);
    }
}

TEST_CASE("general metric emergent time") {
    const auto zero = [](double) { return 0.0; };
    SUBCASE("Minkowski at rest") {
        const auto r = emergent_time_metric(minkowski_metric(), axial_velocity(zero), 1.0, 4.0);
        CHECK(r.value == doctest::Approx(3.0).epsilon(1e-14));
    }
    SUBCASE("Minkowski at 0.6 c") {
        const auto r = emergent_time_metric(minkowski_metric(), axial_velocity([](double) { return 0.6; }), 0.0, 10.0);
        CHECK(std::abs(r.value - 8.0) <= 1e-10);
    }
    SUBCASE("Minkowski with c != 1") {
        const double c = 3.0;
        const auto r = emergent_time_metric(minkowski_metric(), axial_velocity([](double) { return 1.8; }, c), 0.0,
                                            10.0, 1e-10, c);
        CHECK(std::abs(r.value - 8.0) <= 1e-10);
    }
    SUBCASE("static observer at r = 4GM") {
        const auto r = emergent_time_metric(schwarzschild_metric(1.0, [](double) { return 4.0; }), axial_velocity(zero),
                                            0.0, 3.0);
        CHECK(std::abs(r.value - 3.0 * std::sqrt(0.5)) <= 1e-10);
    }
    SUBCASE("accelerating worldline matches the direct integral") {
        // v(t) = 0.5 t on [0, 1]: integral of sqrt(1 - t^2/4) = [t/2 sqrt(1 - t^2/4) + asin(t/2)]_0^1
        const auto r = emergent_time_metric(minkowski_metric(), axial_velocity([](double t) { return 0.5 * t; }), 0.0,
                                            1.0, 1e-12);
        const double exact = 0.5 * std::sqrt(0.75) + std::asin(0.5);
        CHECK(std::abs(r.value - exact) <= 1e-11);
    }
    SUBCASE("spacelike and null worldlines are rejected") {
        CHECK_THROWS_AS(emergent_time_metric(minkowski_metric(), axial_velocity([](double) { return 1.0; }), 0.0, 1.0),
                        DomainError);
        CHECK_THROWS_AS(emergent_time_metric(minkowski_metric(), axial_velocity([](double) { return 1.5; }), 0.0, 1.0),
                        DomainError);
    }
}

TEST_CASE("profiles") {
    const Profile p = Profile::tabulated({0.0, 1.0, 3.0}, {0.0, 2.0, 0.0});
    CHECK(p(0.5) == doctest::Approx(1.0));
    CHECK(p(2.0) == doctest::Approx(1.0));
    CHECK(p(3.0) == 0.0);
    CHECK(p.max() == 2.0);
    CHECK_THROWS_AS(p(3.5), InvalidArgument);
    CHECK_THROWS_AS(Profile::tabulated({0.0, 0.0}, {1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(Profile::tabulated({0.0}, {1.0}), InvalidArgument);
}

TEST_CASE("unified emergent time") {
    SUBCASE("no effects: tau = t - t0") {
        WorldlineSpec spec;
        spec.t0 = 2.0;
        spec.t1 = 7.0;
        const auto s = emergent_time_unified(spec);
        for (std::size_t i = 0; i < s.t_grid.size(); ++i) {
            CHECK(std::abs(s.tau_values[i] - (s.t_grid[i] - spec.t0)) < 1e-13);
        }
        CHECK(s.tau_values.front() == 0.0);
    }
    SUBCASE("kinematic only: v = 0.6c over T = 10") {
        WorldlineSpec spec;
        spec.speed = Profile::constant(0.6);
        spec.t1 = 10.0;
        CHECK(std::abs(emergent_time_unified(spec).tau_values.back() - 8.0) < 1e-12);
    }
    SUBCASE("cosmological horizon term with H r = 0.6 c") {
        WorldlineSpec spec;
        spec.hubble = 0.3;
        spec.radius = Profile::constant(2.0);
        spec.t1 = 10.0;
        CHECK(std::abs(emergent_time_unified(spec).tau_values.back() - 8.0) < 1e-12);
    }
    SUBCASE("tabulated speed agrees with the metric integral") {
        WorldlineSpec spec;
        spec.speed = Profile::tabulated({0.0, 1.0, 2.0, 4.0}, {0.0, 0.5, 0.9, 0.2});
        spec.t1 = 4.0;
        const auto s = emergent_time_unified(spec, 1e-12);
        const auto m = emergent_time_metric(minkowski_metric(), axial_velocity(spec.speed), 0.0, 4.0, 1e-12);
        CHECK(std::abs(s.tau_values.back() - m.value) < 1e-10);
        CHECK(s.quadrature_error_estimate <= 1e-12);
        for (std::size_t i = 1; i < s.tau_values.size(); ++i) CHECK(s.tau_values[i] > s.tau_values[i - 1]);
    }
    SUBCASE("adding a term never increases emergent time") {
        WorldlineSpec base;
        base.speed = Profile::constant(0.3);
        base.radius = Profile::constant(10.0);
        base.t1 = 5.0;
        WorldlineSpec more = base;
        more.gm = 1.0;
        WorldlineSpec most = more;
        most.hubble = 0.02;
        const double a = emergent_time_unified(base).tau_values.back();
        const double b = emergent_time_unified(more).tau_values.back();
        const double c = emergent_time_unified(most).tau_values.back();
        CHECK(a > b);
        CHECK(b > c);
    }
    SUBCASE("radicand touching zero keeps tau flat") {
        WorldlineSpec spec;
        spec.speed = Profile::constant(1.0);
        const auto s = emergent_time_unified(spec);
        CHECK(s.tau_values.back() == 0.0);
    }
    SUBCASE("domain errors name the offending term") {
        auto term_of = [](const WorldlineSpec& spec) {
            try {
                emergent_time_unified(spec);
            } catch (const DomainError& e) {
                return e.term();
            }
            return std::string("none");
        };
        WorldlineSpec horizon;
        horizon.gm = 1.0;
        horizon.radius = Profile::constant(1.5);
        CHECK(term_of(horizon) == "gravitational");

        WorldlineSpec fast;
        fast.speed = Profile::constant(1.1);
        CHECK(term_of(fast) == "kinematic");

        WorldlineSpec hubble;
        hubble.hubble = 1.0;
        hubble.radius = Profile::constant(1.2);
        CHECK(term_of(hubble) == "cosmological");

        WorldlineSpec mixed;
        mixed.gm = 0.2;
        mixed.radius = Profile::constant(1.0);
        mixed.speed = Profile::constant(0.8);
        CHECK(term_of(mixed) == "kinematic");

        WorldlineSpec late;
        late.speed = Profile::tabulated({0.0, 1.0}, {0.0, 1.2});
        CHECK(term_of(late) == "kinematic");
    }
    SUBCASE("invalid specs") {
        WorldlineSpec backwards;
        backwards.t0 = 1.0;
        backwards.t1 = 0.0;
        CHECK_THROWS_AS(emergent_time_unified(backwards), InvalidArgument);
        WorldlineSpec short_table;
        short_table.t1 = 2.0;
        short_table.speed = Profile::tabulated({0.0, 1.0}, {0.1, 0.1});
        CHECK_THROWS_AS(emergent_time_unified(short_table), InvalidArgument);
    }
}

TEST_CASE("series helpers") {
    const auto grid = linspace(0.0, 1.0, 5);
    CHECK(grid.size() == 5);
    CHECK(grid[2] == 0.5);
    const auto s = constant_rate_series(0.5, grid);
    CHECK(s.tau_values.back() == 0.5);
    const auto f = flrw_series([](double t) { return std::exp(t); }, grid);
    CHECK(std::abs(f.tau_values.back() - (1.0 - std::exp(-1.0))) < 1e-8);
    CHECK(f.tau_values.front() == 0.0);
}
