#include "lvc/ode.hpp"

#include <algorithm>
#include <cmath>

#include "lvc/error.hpp"

namespace lvc {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

Vec3 axpy(const Vec3& x, double h, const Vec3& d) {
    return {x[0] + h * d[0], x[1] + h * d[1], x[2] + h * d[2]};
}

bool positive(const Vec3& x) { return x[0] > 0 && x[1] > 0 && x[2] > 0; }

} // namespace

Vec3 dense_eval(const OdeStep& s, double theta) {
    const double t2 = theta * theta, t3 = t2 * theta;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + theta;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    Vec3 out;
    for (int i = 0; i < 3; ++i)
        out[i] = h00 * s.x0[i] + h10 * s.h * s.f0[i] + h01 * s.x1[i] + h11 * s.h * s.f1[i];
    return out;
}

Trajectory integrate(const VectorField& f, const Vec3& x0, double t_end, const OdeOptions& opt,
                     const std::function<bool(const OdeStep&)>& on_step) {
    if (!(t_end > 0)) throw invalid_input("integrate: t_end must be positive");
    if (!(opt.tol > 0)) throw invalid_input("integrate: tol must be positive");
    if (opt.positivity && !positive(x0))
        throw invalid_input("integrate: start outside the open positive octant");

    Trajectory traj;
    traj.t.push_back(0);
    traj.x.push_back(x0);

    double t = 0, h = std::min(opt.h_init, std::min(opt.h_max, t_end));
    Vec3 x = x0;
    Vec3 k1 = f(t, x);
    double err_prev = 1.0;

    for (long steps = 0; t < t_end; ++steps) {
        if (steps >= opt.max_steps) throw degenerate_input("integrate: step budget exhausted");
        if (h < opt.h_min) throw degenerate_input("integrate: step size underflow");
        if (t + h > t_end) h = t_end - t;

        const Vec3 k2 = f(t + c2 * h, axpy(x, h, {a21 * k1[0], a21 * k1[1], a21 * k1[2]}));
        Vec3 y;
        for (int i = 0; i < 3; ++i) y[i] = x[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const Vec3 k3 = f(t + c3 * h, y);
        for (int i = 0; i < 3; ++i) y[i] = x[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const Vec3 k4 = f(t + c4 * h, y);
        for (int i = 0; i < 3; ++i)
            y[i] = x[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const Vec3 k5 = f(t + c5 * h, y);
        for (int i = 0; i < 3; ++i)
            y[i] = x[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const Vec3 k6 = f(t + h, y);
        Vec3 x1;
        for (int i = 0; i < 3; ++i)
            x1[i] = x[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const Vec3 k7 = f(t + h, x1);

        double err = 0;
        for (int i = 0; i < 3; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = opt.tol + opt.tol * std::max(std::abs(x[i]), std::abs(x1[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / 3);

        const bool ok = err <= 1.0 && (!opt.positivity || positive(x1));
        if (ok) {
            OdeStep step{t, h, x, x1, k1, k7};
            t += h;
            x = x1;
            k1 = k7;
            traj.t.push_back(t);
            traj.x.push_back(x);
            err_prev = std::max(err, 1e-10);
            if (on_step && !on_step(step)) break;
        }

        double fac;
        if (err <= 1.0) {
            // PI controller (beta = 0.04).
            fac = 0.9 * std::pow(err > 0 ? err : 1e-10, -0.17) * std::pow(err_prev, 0.04);
        } else {
            fac = std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
        if (!ok && err <= 1.0) fac = 0.5; // positivity rejection
        h = std::min(opt.h_max, h * std::clamp(fac, 0.2, 5.0));
    }
    return traj;
}

} // namespace lvc
