#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lvc/error.hpp"
#include "lvc/ode.hpp"

using namespace lvc;

namespace {

Vec3 harmonic(double, const Vec3& x) { return {-x[1], x[0], 0.0}; }

// Planar spiral toward the unit circle, z decoupled and decaying.
Vec3 hopf_field(double, const Vec3& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return {x[0] * (1 - r2) - x[1], x[1] * (1 - r2) + x[0], -x[2]};
}

double radius_sq(double r0sq, double t) {
    const double e = std::exp(2 * t);
    return r0sq * e / (1 - r0sq + r0sq * e);
}

} // namespace

TEST_CASE("energy conservation on the harmonic oscillator") {
    OdeOptions opt;
    opt.tol = 1e-10;
    opt.h_max = 10.0;
    auto traj = integrate(harmonic, {1.0, 0.0, 0.0}, 100.0, opt);
    double worst = 0;
    for (const auto& x : traj.x) {
        const double drift = std::abs(x[0] * x[0] + x[1] * x[1] - 1.0);
        worst = std::max(worst, drift);
    }
    CHECK(worst <= 1e-8);
    CHECK(traj.t.back() == doctest::Approx(100.0).epsilon(1e-12));
    // endpoint against the exact solution
    CHECK(traj.x.back()[0] == doctest::Approx(std::cos(100.0)).epsilon(1e-7));
    CHECK(traj.x.back()[1] == doctest::Approx(std::sin(100.0)).epsilon(1e-7));
}

TEST_CASE("spiral converges to the invariant circle") {
    OdeOptions opt;
    opt.tol = 1e-10;
    opt.h_max = 10.0;
    auto traj = integrate(hopf_field, {0.1, 0.0, 0.5}, 5.0, opt);
    const auto& xe = traj.x.back();
    const double r2 = xe[0] * xe[0] + xe[1] * xe[1];
    CHECK(r2 == doctest::Approx(radius_sq(0.01, 5.0)).epsilon(1e-6));
    CHECK(std::abs(xe[2] - 0.5 * std::exp(-5.0)) < 1e-6);

    auto late = integrate(hopf_field, {0.1, 0.0, 0.5}, 40.0, opt);
    const auto& xl = late.x.back();
    CHECK(xl[0] * xl[0] + xl[1] * xl[1] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("fixed point of the field stays fixed") {
    auto fp = [](double, const Vec3& x) -> Vec3 {
        return {x[0] * (2 * (x[0] - 1) + (x[1] - 1)), x[1] * ((x[0] - 1) + 2 * (x[1] - 1)),
                x[2] * (x[2] - 1)};
    };
    OdeOptions opt;
    opt.tol = 1e-10;
    opt.positivity = true;
    auto traj = integrate(fp, {1.0, 1.0, 1.0}, 10.0, opt);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(traj.x.back()[i] - 1.0) < 1e-9);
}

TEST_CASE("positivity guard stops fields that exit the octant") {
    auto outward = [](double, const Vec3&) -> Vec3 { return {-1.0, 0.0, 0.0}; };
    OdeOptions opt;
    opt.positivity = true;
    CHECK_THROWS_AS(integrate(outward, {0.5, 1.0, 1.0}, 10.0, opt), degenerate_input);
    CHECK_THROWS_AS(integrate(outward, {-0.5, 1.0, 1.0}, 10.0, opt), invalid_input);

    // Without the guard the same field just crosses zero.
    OdeOptions off;
    auto traj = integrate(outward, {0.5, 1.0, 1.0}, 10.0, off);
    CHECK(traj.x.back()[0] == doctest::Approx(-9.5));
}

TEST_CASE("dense output matches the exact flow inside steps") {
    OdeOptions opt;
    opt.tol = 1e-10;
    opt.h_max = 10.0;
    double worst = 0;
    integrate(harmonic, {1.0, 0.0, 0.0}, 10.0, opt, [&](const OdeStep& s) {
        for (double theta : {0.25, 0.5, 0.75}) {
            const Vec3 xi = dense_eval(s, theta);
            const double tt = s.t0 + theta * s.h;
            worst = std::max(worst, std::abs(xi[0] - std::cos(tt)));
            worst = std::max(worst, std::abs(xi[1] - std::sin(tt)));
        }
        return true;
    });
    CHECK(worst < 1e-7);
}

TEST_CASE("early stop through the step callback") {
    OdeOptions opt;
    opt.tol = 1e-8;
    auto traj = integrate(harmonic, {1.0, 0.0, 0.0}, 100.0, opt,
                          [](const OdeStep& s) { return s.t0 + s.h < 1.0; });
    CHECK(traj.t.back() < 2.0);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(integrate(harmonic, {1, 0, 0}, 0.0, {}), invalid_input);
    OdeOptions bad;
    bad.tol = 0;
    CHECK_THROWS_AS(integrate(harmonic, {1, 0, 0}, 1.0, bad), invalid_input);
}
