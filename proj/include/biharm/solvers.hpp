#pragma once

#include <functional>
#include <span>
#include <vector>

#include "biharm/errors.hpp"

namespace biharm {

/// First-order ODE system y' = field(t, y). The field must be deterministic
/// and side-effect free; `valid` (optional) bounds the admissible region.
struct OdeSystem {
    int dim;
    std::function<void(double t, std::span<const double> y, std::span<double> dy)> field;
    std::function<bool(double t, std::span<const double> y)> valid;
};

enum class StopReason { RangeEnd, DomainExit, StepUnderflow };

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;  // one state per time
    std::vector<double> steps;                // accepted step sizes
    StopReason reason = StopReason::RangeEnd;

    const std::vector<double>& back_state() const { return states.back(); }
};

/// Classical fixed-step RK4 over [t0, t1].
Trajectory rk4_integrate(const OdeSystem& sys, std::span<const double> y0, double t0, double t1,
                         double step);

/// Embedded Runge-Kutta-Fehlberg 4(5) with adaptive stepping; stops with
/// StepUnderflow if the step falls below 1e-12.
Trajectory rkf45_integrate(const OdeSystem& sys, std::span<const double> y0, double t0, double t1,
                           double rel_tol, double abs_tol);

/// Brent's method on a bracketing interval; requires fn(lo)*fn(hi) < 0.
double brent_root(const std::function<double(double)>& fn, double lo, double hi, double tol);

/// Composite Simpson rule; panels must be even and >= 2.
double simpson(const std::function<double(double)>& fn, double a, double b, int panels);

/// Shooting record for the rotationally symmetric harmonic map equation
/// from R^4 to S^4: alpha'' + (3/r) alpha' - (3/2) sin(2 alpha)/r^2 = 0,
/// launched with the odd series alpha ~ a r from r0 = 1e-4.
struct HarmonicShootResult {
    Trajectory trajectory;
    double sup_alpha;
    int crossings;  // crossings of pi/2
};

HarmonicShootResult shoot_harmonic_R4(double initial_slope, double r_max);

/// Proper biharmonic solution of the Dirichlet data alpha(1) = R* via the
/// closed family alpha_c(r) = 2 atan(c^2 r); returns c = sqrt(tan(R*/2))
/// and the max bitension residual over a 50-point grid on [0.02, 1].
struct DirichletResult {
    double c;
    double residual_max;
};

DirichletResult dirichlet_conformal(double R_star);

}  // namespace biharm
