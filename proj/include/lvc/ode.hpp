#pragma once

#include <array>
#include <functional>
#include <vector>

namespace lvc {

using Vec3 = std::array<double, 3>;
using VectorField = std::function<Vec3(double, const Vec3&)>;

struct OdeOptions {
    double tol = 1e-10; // per-step error target, absolute and relative
    double h_init = 1e-3;
    double h_min = 1e-13;
    double h_max = 1.0;
    // Reject steps whose endpoint leaves the open positive octant.
    bool positivity = false;
    long max_steps = 50000000;
};

// One accepted step with enough data for dense evaluation inside it.
struct OdeStep {
    double t0 = 0, h = 0;
    Vec3 x0{}, x1{};
    Vec3 f0{}, f1{}; // field at the endpoints
};

// Cubic Hermite interpolation at t0 + theta*h, theta in [0, 1].
Vec3 dense_eval(const OdeStep& s, double theta);

struct Trajectory {
    std::vector<double> t;
    std::vector<Vec3> x;
};

// Adaptive embedded Dormand-Prince 5(4) with PI step control.  on_step runs
// after every accepted step; returning false stops the integration early.
// Throws degenerate_input("integrate: step size underflow") when the
// controller cannot satisfy the tolerance or the positivity constraint.
Trajectory integrate(const VectorField& f, const Vec3& x0, double t_end, const OdeOptions& opt = {},
                     const std::function<bool(const OdeStep&)>& on_step = {});

} // namespace lvc
