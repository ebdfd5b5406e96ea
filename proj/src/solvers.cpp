#include "biharm/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "biharm/rotsym.hpp"

namespace biharm {

namespace {

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void rk4_step(const OdeSystem& sys, double t, std::span<const double> y, double h,
              std::span<double> out) {
    const int n = sys.dim;
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    sys.field(t, y, k1);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    sys.field(t + 0.5 * h, tmp, k2);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    sys.field(t + 0.5 * h, tmp, k3);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    sys.field(t + h, tmp, k4);
    for (int i = 0; i < n; ++i)
        out[i] = y[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
}

// Fehlberg tableau.
constexpr double kA[6] = {0, 1. / 4, 3. / 8, 12. / 13, 1, 1. / 2};
constexpr double kB[6][5] = {
    {},
    {1. / 4},
    {3. / 32, 9. / 32},
    {1932. / 2197, -7200. / 2197, 7296. / 2197},
    {439. / 216, -8, 3680. / 513, -845. / 4104},
    {-8. / 27, 2, -3544. / 2565, 1859. / 4104, -11. / 40}};
constexpr double kC5[6] = {16. / 135, 0, 6656. / 12825, 28561. / 56430, -9. / 50, 2. / 55};
constexpr double kC4[6] = {25. / 216, 0, 1408. / 2565, 2197. / 4104, -1. / 5, 0};

}  // namespace

Trajectory rk4_integrate(const OdeSystem& sys, std::span<const double> y0, double t0, double t1,
                         double step) {
    if (!(step > 0)) throw NumericalError("rk4 requires a positive step");
    Trajectory traj;
    std::vector<double> y(y0.begin(), y0.end());
    double t = t0;
    traj.times.push_back(t);
    traj.states.push_back(y);
    std::vector<double> next(sys.dim);
    while (t < t1 - 1e-15 * std::max(1.0, std::abs(t1))) {
        double h = std::min(step, t1 - t);
        rk4_step(sys, t, y, h, next);
        if (!all_finite(next)) throw NumericalError("rk4 produced a non-finite state");
        t += h;
        y = next;
        if (sys.valid && !sys.valid(t, y)) {
            traj.reason = StopReason::DomainExit;
            return traj;
        }
        traj.times.push_back(t);
        traj.states.push_back(y);
        traj.steps.push_back(h);
    }
    traj.reason = StopReason::RangeEnd;
    return traj;
}

Trajectory rkf45_integrate(const OdeSystem& sys, std::span<const double> y0, double t0, double t1,
                           double rel_tol, double abs_tol) {
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw NumericalError("rkf45 tolerances must be positive");
    const int n = sys.dim;
    Trajectory traj;
    std::vector<double> y(y0.begin(), y0.end());
    double t = t0;
    traj.times.push_back(t);
    traj.states.push_back(y);

    double h = (t1 - t0) / 100.0;
    std::vector<std::vector<double>> k(6, std::vector<double>(n));
    std::vector<double> tmp(n), y5(n), y4(n);

    while (t < t1 - 1e-15 * std::max(1.0, std::abs(t1))) {
        h = std::min(h, t1 - t);
        if (h < 1e-12) {
            traj.reason = StopReason::StepUnderflow;
            return traj;
        }
        for (int s = 0; s < 6; ++s) {
            for (int i = 0; i < n; ++i) {
                double acc = y[i];
                for (int j = 0; j < s; ++j) acc += h * kB[s][j] * k[j][i];
                tmp[i] = acc;
            }
            sys.field(t + kA[s] * h, tmp, k[s]);
        }
        double err = 0.0;
        for (int i = 0; i < n; ++i) {
            double a5 = y[i], a4 = y[i];
            for (int s = 0; s < 6; ++s) {
                a5 += h * kC5[s] * k[s][i];
                a4 += h * kC4[s] * k[s][i];
            }
            y5[i] = a5;
            y4[i] = a4;
            double tol = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(a5));
            err = std::max(err, std::abs(a5 - a4) / tol);
        }
        if (!all_finite(y5)) throw NumericalError("rkf45 produced a non-finite state");
        if (err <= 1.0) {
            t += h;
            y = y5;
            if (sys.valid && !sys.valid(t, y)) {
                traj.reason = StopReason::DomainExit;
                return traj;
            }
            traj.times.push_back(t);
            traj.states.push_back(y);
            traj.steps.push_back(h);
        }
        double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    traj.reason = StopReason::RangeEnd;
    return traj;
}

double brent_root(const std::function<double(double)>& fn, double lo, double hi, double tol) {
    double a = lo, b = hi;
    double fa = fn(a), fb = fn(b);
    if (fa * fb > 0) throw NumericalError("brent_root: no sign change on the bracket");
    if (fa == 0) return a;
    if (fb == 0) return b;
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, d = b - a;
    bool mflag = true;
    for (int iter = 0; iter < 200; ++iter) {
        if (fb == 0 || std::abs(b - a) < tol) return b;
        double s;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        double lo_b = (3 * a + b) / 4, hi_b = b;
        if (lo_b > hi_b) std::swap(lo_b, hi_b);
        bool bad = s < lo_b || s > hi_b ||
                   (mflag && std::abs(s - b) >= std::abs(b - c) / 2) ||
                   (!mflag && std::abs(s - b) >= std::abs(c - d) / 2) ||
                   (mflag && std::abs(b - c) < tol) || (!mflag && std::abs(c - d) < tol);
        if (bad) {
            s = (a + b) / 2;
            mflag = true;
        } else {
            mflag = false;
        }
        double fs = fn(s);
        d = c;
        c = b;
        fc = fb;
        if (fa * fs < 0) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
    }
    return b;
}

double simpson(const std::function<double(double)>& fn, double a, double b, int panels) {
    if (panels < 2 || panels % 2 != 0) throw NumericalError("simpson requires even panels >= 2");
    const double h = (b - a) / panels;
    double acc = fn(a) + fn(b);
    for (int i = 1; i < panels; ++i) acc += fn(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

HarmonicShootResult shoot_harmonic_R4(double initial_slope, double r_max) {
    if (!(initial_slope > 0)) throw NumericalError("initial slope must be positive");
    const double r0 = 1e-4;
    OdeSystem sys{
        2,
        [](double r, std::span<const double> y, std::span<double> dy) {
            dy[0] = y[1];
            dy[1] = -3.0 / r * y[1] + 1.5 * std::sin(2.0 * y[0]) / (r * r);
        },
        nullptr};
    std::vector<double> y0 = {initial_slope * r0, initial_slope};
    Trajectory traj = rkf45_integrate(sys, y0, r0, r_max, 1e-10, 1e-12);
    if (traj.reason != StopReason::RangeEnd)
        throw NumericalError("harmonic shooting did not reach r_max");

    const double half_pi = std::numbers::pi / 2;
    double sup = 0.0;
    int crossings = 0;
    double prev = traj.states.front()[0] - half_pi;
    for (const auto& state : traj.states) {
        if (!std::isfinite(state[0])) throw NumericalError("harmonic shooting blow-up");
        sup = std::max(sup, state[0]);
        double cur = state[0] - half_pi;
        if (prev != 0.0 && cur != 0.0 && (prev < 0) != (cur < 0)) ++crossings;
        prev = cur;
    }
    return HarmonicShootResult{std::move(traj), sup, crossings};
}

DirichletResult dirichlet_conformal(double R_star) {
    if (!(R_star > 0.0) || !(R_star < std::numbers::pi))
        throw NumericalError("R* must lie in (0, pi)");
    const double c = std::sqrt(std::tan(R_star / 2.0));

    Expr form = parse_expr("2*atan(c^2*r)", std::vector<std::string>{"r", "c"});
    MapPair pair = make_map_pair(make_model(4, WarpingFunction::euclidean()),
                                 make_model(4, WarpingFunction::sphere(1.0)),
                                 RadialProfile::from_expr(form, {{"c", c}}));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        double r = 0.02 + (1.0 - 0.02) * i / 49.0;
        worst = std::max(worst, std::abs(bitension_residual_F(pair, r)));
    }
    return DirichletResult{c, worst};
}

}  // namespace biharm
