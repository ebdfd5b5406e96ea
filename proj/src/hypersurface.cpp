#include "biharm/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "biharm/variational.hpp"

namespace biharm {

namespace {

using std::numbers::pi;

constexpr double kBoundaryFloor = 1e-10;

// sin/cos of i pi / d with the representable lattice values snapped exact,
// so the degenerate forms (-y, x, ...) come out with literal coefficients.
double snapped(double v) {
    if (std::abs(v) < 4e-16) return 0.0;
    if (std::abs(v - 1.0) < 4e-16) return 1.0;
    if (std::abs(v + 1.0) < 4e-16) return -1.0;
    return v;
}

struct FormAngles {
    std::vector<double> s, c;  // sin/cos of i pi/d
};

FormAngles form_angles(int d) {
    FormAngles fa;
    for (int i = 0; i < d; ++i) {
        fa.s.push_back(snapped(std::sin(i * pi / d)));
        fa.c.push_back(snapped(std::cos(i * pi / d)));
    }
    return fa;
}

void check_interior(int d, double x, double y) {
    if (!cone_interior(d, x, y)) throw DomainError("point outside the orbit cone interior");
}

// flows stop one proximity margin before the walls so the per-sample
// curvature reports stay evaluable
bool flow_interior(const OrbitAction& action, double x, double y) {
    if (!cone_interior(action.d, x, y)) return false;
    for (int i = 0; i < action.d; ++i)
        if (std::abs(w_form(action.d, i, x, y)) < 1e-9) return false;
    return true;
}

// Position jets from an arc-length theta tower; order = theta.order() + 1.
std::pair<Jet, Jet> position_jets(const ProfileCurve& curve) {
    Jet xd = cos(curve.theta);
    Jet yd = sin(curve.theta);
    return {Jet::from_derivative(curve.x, xd), Jet::from_derivative(curve.y, yd)};
}

// sum_i m_i k_i as a jet of theta's order, built from (x, y, theta tower).
Jet orbital_sum(const OrbitAction& action, double x, double y, const Jet& theta) {
    const int o = theta.order();
    FormAngles fa = form_angles(action.d);
    Jet xd = cos(theta), yd = sin(theta);
    Jet X = o >= 1 ? Jet::from_derivative(x, xd.truncated(o - 1)) : Jet::constant(x, 0);
    Jet Y = o >= 1 ? Jet::from_derivative(y, yd.truncated(o - 1)) : Jet::constant(y, 0);
    Jet acc(o);
    for (int i = 0; i < action.d; ++i) {
        Jet denom = X * fa.s[i] - Y * fa.c[i];
        if (std::abs(denom.value()) < kBoundaryFloor)
            throw DomainError("orbit degenerates: boundary proximity in w-form " +
                              std::to_string(i));
        acc += static_cast<double>(action.mults[i]) * (yd * fa.s[i] + xd * fa.c[i]) / denom;
    }
    return acc;
}

double log_v2_rate(const OrbitAction& action, double x, double y, double theta) {
    FormAngles fa = form_angles(action.d);
    const double xd = std::cos(theta), yd = std::sin(theta);
    double acc = 0.0;
    for (int i = 0; i < action.d; ++i) {
        double w = x * fa.s[i] - y * fa.c[i];
        if (std::abs(w) < kBoundaryFloor) throw DomainError("boundary proximity in w-form");
        acc += 2.0 * action.mults[i] * (xd * fa.s[i] - yd * fa.c[i]) / w;
    }
    return acc;
}

// Jet of V(s) = prod |w_i(X,Y)|^(m_i) along background jets (normalized forms).
Jet volume_jet(const OrbitAction& action, const Jet& X, const Jet& Y) {
    FormAngles fa = form_angles(action.d);
    Jet acc = Jet::constant(1.0, X.order());
    for (int i = 0; i < action.d; ++i) {
        double scale = std::max(std::abs(fa.s[i]), std::abs(fa.c[i]));
        Jet w = (X * fa.s[i] - Y * fa.c[i]) / scale;
        if (w.value() < 0.0) w = -w;
        if (std::abs(w.value()) < kBoundaryFloor)
            throw DomainError("volume degenerates: boundary proximity");
        acc = acc * pow(w, action.mults[i]);
    }
    return acc;
}

// Stepwise driver: a stage evaluation that lands on a cone wall surfaces as
// DomainError from the curvature sums; that counts as leaving Q.
FlowResult run_flow(const OdeSystem& sys, std::span<const double> state0, double s_end,
                    double step,
                    const std::function<FlowSample(double, std::span<const double>)>& report) {
    FlowResult out;
    std::vector<double> y(state0.begin(), state0.end());
    double s = 0.0;
    out.samples.push_back(report(s, y));
    while (s < s_end - 1e-12) {
        double h = std::min(step, s_end - s);
        try {
            Trajectory one = rk4_integrate(sys, y, s, s + h, h);
            if (one.reason != StopReason::RangeEnd) {
                out.reason = one.reason;
                return out;
            }
            y = one.back_state();
        } catch (const DomainError&) {
            out.reason = StopReason::DomainExit;
            return out;
        }
        s += h;
        out.samples.push_back(report(s, y));
    }
    out.reason = StopReason::RangeEnd;
    return out;
}

}  // namespace

OrbitAction make_action(int d, std::vector<int> mults, int n, std::string label) {
    if (d != 1 && d != 2 && d != 3 && d != 4 && d != 6)
        throw ValidationError("cone type d must be one of 1, 2, 3, 4, 6");
    if (static_cast<int>(mults.size()) != d)
        throw ValidationError("action needs exactly d multiplicities");
    int sum = 1;
    for (int m : mults) {
        if (m <= 0) throw ValidationError("multiplicities must be positive");
        sum += m;
    }
    if (sum != n - 1)
        throw ValidationError("dimension count violated: 1 + sum(m_i) != n - 1 for " + label);
    return OrbitAction{d, std::move(mults), n, std::move(label)};
}

OrbitAction so_rotational(int n) {
    if (n < 3) throw ValidationError("SO(n-1) rotational action needs n >= 3");
    return make_action(1, {n - 2}, n, "SO(" + std::to_string(n - 1) + ")");
}

OrbitAction so_pq(int p, int q) {
    if (p < 2 || q < 2) throw ValidationError("SO(p)xSO(q) needs p, q >= 2");
    return make_action(2, {q - 1, p - 1}, p + q,
                       "SO(" + std::to_string(p) + ")xSO(" + std::to_string(q) + ")");
}

OrbitAction so2_som(int m) {
    if (m < 3) throw ValidationError("SO(2)xSO(m) needs m >= 3");
    return make_action(4, {m - 2, 1, m - 2, 1}, 2 * m,
                       "SO(2)xSO(" + std::to_string(m) + "):tensor");
}

OrbitAction su2_um(int m) {
    if (m < 2) throw ValidationError("S(U(2)xU(m)) needs m >= 2");
    return make_action(4, {2 * m - 3, 2, 2 * m - 3, 2}, 4 * m,
                       "S(U(2)xU(" + std::to_string(m) + "))");
}

OrbitAction sp2_spm(int m) {
    if (m < 2) throw ValidationError("Sp(2)xSp(m) needs m >= 2");
    return make_action(4, {4 * m - 5, 4, 4 * m - 5, 4}, 8 * m,
                       "Sp(2)xSp(" + std::to_string(m) + ")");
}

std::vector<OrbitAction> action_catalog() {
    return {
        so_rotational(3),
        so_pq(2, 2),
        make_action(3, {1, 1, 1}, 5, "SO(3)"),
        make_action(3, {2, 2, 2}, 8, "SU(3)"),
        make_action(3, {4, 4, 4}, 14, "Sp(3)"),
        make_action(3, {8, 8, 8}, 26, "F4"),
        make_action(4, {2, 2, 2, 2}, 10, "SO(5)"),
        so2_som(3),
        su2_um(2),
        sp2_spm(2),
        make_action(4, {5, 4, 5, 4}, 20, "U(5)"),
        make_action(4, {9, 6, 9, 6}, 32, "U(1)xSpin(10)"),
        make_action(6, {2, 2, 2, 2, 2, 2}, 14, "G2"),
        make_action(6, {1, 1, 1, 1, 1, 1}, 8, "SO(4)"),
    };
}

OrbitAction action_lookup(const std::string& label) {
    for (const OrbitAction& a : action_catalog())
        if (a.label == label) return a;
    // parametric families; the ":tensor" suffix picks the d=4 form of
    // SO(2)xSO(m), the bare product name is the d=2 action
    const int len = static_cast<int>(label.size());
    int p = 0, q = 0, used = -1;
    if (std::sscanf(label.c_str(), "SO(2)xSO(%d):tensor%n", &p, &used) == 1 && used == len)
        return so2_som(p);
    used = -1;
    if (std::sscanf(label.c_str(), "SO(%d)xSO(%d)%n", &p, &q, &used) == 2 && used == len)
        return so_pq(p, q);
    used = -1;
    if (std::sscanf(label.c_str(), "S(U(2)xU(%d))%n", &p, &used) == 1 && used == len)
        return su2_um(p);
    used = -1;
    if (std::sscanf(label.c_str(), "Sp(2)xSp(%d)%n", &p, &used) == 1 && used == len)
        return sp2_spm(p);
    used = -1;
    if (std::sscanf(label.c_str(), "SO(%d)%n", &p, &used) == 1 && used == len)
        return so_rotational(p + 1);
    throw ValidationError("unknown action label '" + label + "'");
}

double w_form(int d, int i, double x, double y) {
    if (i < 0 || i >= d) throw DomainError("w-form index out of range");
    FormAngles fa = form_angles(d);
    return x * fa.s[i] - y * fa.c[i];
}

bool cone_interior(int d, double x, double y) {
    const double s = snapped(std::sin(pi / d)), c = snapped(std::cos(pi / d));
    return y > 0.0 && x * s - y * c > 0.0;
}

VolumeValue volume_sq(const OrbitAction& action, double x, double y) {
    FormAngles fa = form_angles(action.d);
    double acc = 1.0;
    bool boundary = false;
    for (int i = 0; i < action.d; ++i) {
        double scale = std::max(std::abs(fa.s[i]), std::abs(fa.c[i]));
        double w = (x * fa.s[i] - y * fa.c[i]) / scale;
        if (w == 0.0) boundary = true;
        double w2 = w * w;
        for (int k = 0; k < action.mults[i]; ++k) acc *= w2;
    }
    return VolumeValue{boundary ? 0.0 : acc, boundary};
}

CurvatureReport curvatures(const OrbitAction& action, const ProfileCurve& curve) {
    if (curve.theta.order() < 1) throw DomainError("curvatures need a theta jet of order >= 1");
    check_interior(action.d, curve.x, curve.y);
    FormAngles fa = form_angles(action.d);
    const double theta = curve.theta.value();
    const double xd = std::cos(theta), yd = std::sin(theta);

    CurvatureReport rep;
    rep.kd = curve.theta.deriv(1);
    rep.mean_f = rep.kd;
    rep.A2 = rep.kd * rep.kd;
    rep.logV2_rate = 0.0;
    for (int i = 0; i < action.d; ++i) {
        double w = curve.x * fa.s[i] - curve.y * fa.c[i];
        if (std::abs(w) < kBoundaryFloor) throw DomainError("boundary proximity in w-form");
        double ki = (yd * fa.s[i] + xd * fa.c[i]) / w;
        rep.ks.push_back(ki);
        rep.mean_f += action.mults[i] * ki;
        rep.A2 += action.mults[i] * ki * ki;
        rep.logV2_rate += 2.0 * action.mults[i] * (xd * fa.s[i] - yd * fa.c[i]) / w;
    }
    return rep;
}

HypersurfaceResiduals biharmonic_residuals(const OrbitAction& action, const ProfileCurve& curve) {
    if (curve.theta.order() < 3)
        throw DomainError("biharmonic residuals need a theta jet of order 3");
    check_interior(action.d, curve.x, curve.y);

    // mean curvature as an order-2 jet in s
    Jet f = curve.theta.derivative() +
            orbital_sum(action, curve.x, curve.y, curve.theta.truncated(2));
    CurvatureReport rep = curvatures(action, curve);

    double normal = static_cast<double>(f.deriv_l(2) + 0.5L * rep.logV2_rate * f.deriv_l(1) -
                                        static_cast<long double>(rep.A2) * f.deriv_l(0));
    double tangential =
        static_cast<double>(f.deriv_l(1) * (f.deriv_l(0) + 2.0L * rep.kd));
    return {normal, tangential};
}

double cone_mean_f(const OrbitAction& action, double sigma, double s) {
    if (!(s > 0.0)) throw DomainError("cone radius must be positive");
    if (!(sigma > 0.0) || !(sigma < pi / action.d))
        throw DomainError("cone angle must lie in (0, pi/d)");
    double acc = 0.0;
    for (int i = 0; i < action.d; ++i) {
        double arg = sigma - i * pi / action.d;
        double sn = std::sin(arg);
        if (std::abs(sn) < 1e-14) throw DomainError("singular cone angle");
        acc += action.mults[i] * std::cos(arg) / sn;
    }
    return -acc / s;
}

std::vector<double> minimal_cone_angles(const OrbitAction& action) {
    const double hi = pi / action.d;
    const int kScan = 2000;
    auto g = [&](double sigma) { return cone_mean_f(action, sigma, 1.0); };

    std::vector<double> roots;
    double prev_sigma = hi * 1e-6;
    double prev = g(prev_sigma);
    for (int i = 1; i <= kScan; ++i) {
        double sigma = hi * (1e-6 + (1.0 - 2e-6) * i / kScan);
        double cur = g(sigma);
        if (prev == 0.0) roots.push_back(prev_sigma);
        else if (prev * cur < 0.0) roots.push_back(brent_root(g, prev_sigma, sigma, 1e-14));
        prev_sigma = sigma;
        prev = cur;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-10; }),
                roots.end());
    return roots;
}

HypersurfaceResiduals tension_d2(int p, int q, const ProfileCurve& curve) {
    if (p < 2 || q < 2) throw ValidationError("tension_d2 needs p, q >= 2");
    if (curve.theta.order() < 1) throw DomainError("tension needs a theta jet of order >= 1");
    const double x = curve.x, y = curve.y;
    if (x < kBoundaryFloor || y < kBoundaryFloor) throw DomainError("boundary proximity");
    const double theta = curve.theta.value(), td = curve.theta.deriv(1);
    const double xd = std::cos(theta), yd = std::sin(theta);
    const double xdd = -yd * td, ydd = xd * td;

    const double tau_x = xdd - (p - 1) * yd * yd / x + (q - 1) * xd * yd / y;
    const double tau_y = ydd - (q - 1) * xd * xd / y + (p - 1) * xd * yd / x;
    return {/*normal=*/-tau_x * yd + tau_y * xd, /*tangential=*/tau_x * xd + tau_y * yd};
}

HypersurfaceResiduals bitension_explicit_d2(int p, int q, const ProfileCurve& curve) {
    if (p < 2 || q < 2) throw ValidationError("bitension_explicit_d2 needs p, q >= 2");
    if (curve.theta.order() < 3) throw DomainError("bitension needs a theta jet of order 3");
    const double x = curve.x, y = curve.y;
    if (x < kBoundaryFloor || y < kBoundaryFloor) throw DomainError("boundary proximity");

    auto [X, Y] = position_jets(curve);  // order 4
    const double x1 = X.deriv(1), x2 = X.deriv(2), x3 = X.deriv(3), x4 = X.deriv(4);
    const double y1 = Y.deriv(1), y2 = Y.deriv(2), y3 = Y.deriv(3), y4 = Y.deriv(4);
    const double P = p, Q = q;

    double t2t = (P - 1) * x3 / x + (Q - 1) * y3 / y + 2 * (P - 1) * x1 * x1 * x3 / x +
                 2 * (Q - 1) * y1 * y1 * y3 / y + 2 * (Q - 1) * x1 * y1 * x3 / y +
                 2 * (P - 1) * x1 * y1 * y3 / x - 3 * x2 * x3 - 3 * y2 * y3 -
                 (P + Q - P * Q - 1) / (x * y) * (x1 * y2 + x2 * y1) -
                 (P * P - 5 * P + 4) * y1 * y2 / (x * x) +
                 (Q * Q - 5 * Q + 4) * y1 * y2 / (y * y) +
                 (P + Q - P * Q - 1) * x1 * y1 / (x * y) * (x1 / x + y1 / y) +
                 (P - 1) * (P - 1) * x1 * y1 * y1 / (x * x * x) +
                 (Q - 1) * (Q - 1) * x1 * x1 * y1 / (y * y * y);

    double t2n = x1 * y4 - y1 * x4 + 2 * (P - 1) * y3 / x - 2 * (Q - 1) * x3 / y +
                 2 * (P * Q - P - Q + 1) * y1 * y2 / (x * y) +
                 (P * P - 4 * P + 3) * x1 * y2 / (x * x) -
                 (Q * Q - 4 * Q + 3) * y1 * x2 / (y * y) + (Q - 1) * (Q - 1) * x1 / (y * y * y) -
                 (P - 1) * (P - 1) * y1 / (x * x * x) - 2 * (Q - 1) * x1 * y1 * y1 / (y * y * y) +
                 2 * (P - 1) * y1 * x1 * x1 / (x * x * x);

    return {t2n, t2t};
}

HypersurfaceResiduals bitension_variational(const OrbitAction& action, const Jet& x, const Jet& y) {
    if (x.order() < 6 || y.order() < 6)
        throw DomainError("variational bitension needs degree-6 curve jets");
    check_interior(action.d, x.value(), y.value());
    const double arc = x.deriv(1) * x.deriv(1) + y.deriv(1) * y.deriv(1) - 1.0;
    const double arc_rate = 2.0 * (x.deriv(1) * x.deriv(2) + y.deriv(1) * y.deriv(2));
    if (std::abs(arc) > 1e-10 || std::abs(arc_rate) > 1e-10)
        throw NumericalError("arc-length violation in the curve jets");

    FormAngles fa = form_angles(action.d);
    const Jet X0 = x, Y0 = y;  // frozen background

    VectorLagrangian L{
        2,
        [&action, &fa, &X0, &Y0](const Jet& t, std::span<const Dual> a, std::span<const Dual> ad,
                                 std::span<const Dual> add) -> Dual {
            const int o = t.order();
            Jet V = volume_jet(action, X0.truncated(o + 1), Y0.truncated(o + 1));
            Jet rate = V.derivative() / V.truncated(o);  // Vdot/V

            Dual tau_x = add[0] + rate * ad[0];
            Dual tau_y = add[1] + rate * ad[1];
            for (int i = 0; i < action.d; ++i) {
                Jet w0 = X0.truncated(o) * fa.s[i] - Y0.truncated(o) * fa.c[i];
                Dual w = a[0] * fa.s[i] - a[1] * fa.c[i];
                Dual ratio = static_cast<double>(action.mults[i]) * w / (w0 * w0);
                tau_x = tau_x - ratio * fa.s[i];
                tau_y = tau_y + ratio * fa.c[i];
            }
            return 0.5 * (tau_x * tau_x + tau_y * tau_y) * V.truncated(o);
        }};

    std::vector<Jet> curve = {x.truncated(4), y.truncated(4)};
    std::vector<double> B = el_system(L, curve, 0.0);
    double Vv = volume_jet(action, x.truncated(0), y.truncated(0)).value();
    double tau2x = B[0] / Vv, tau2y = B[1] / Vv;
    const double xd = x.deriv(1), yd = y.deriv(1);
    return {/*normal=*/-tau2x * yd + tau2y * xd, /*tangential=*/tau2x * xd + tau2y * yd};
}

FlowResult cmc_flow(const OrbitAction& action, double f0, double x0, double y0, double theta0,
                    double s_end, double step) {
    check_interior(action.d, x0, y0);
    OdeSystem sys{3,
                  [&action, f0](double, std::span<const double> s, std::span<double> ds) {
                      double S = orbital_sum(action, s[0], s[1],
                                             Jet::constant(s[2], 0)).value();
                      ds[0] = std::cos(s[2]);
                      ds[1] = std::sin(s[2]);
                      ds[2] = f0 - S;
                  },
                  [&action](double, std::span<const double> s) {
                      return flow_interior(action, s[0], s[1]);
                  }};
    auto report = [&action, f0](double s, std::span<const double> st) {
        Jet theta = Jet::constant(st[2], 0);
        for (int k = 1; k <= 3; ++k) {
            Jet S = orbital_sum(action, st[0], st[1], theta);
            Jet td = -S;
            td += f0;
            theta = Jet::from_derivative(st[2], td);
        }
        ProfileCurve curve{st[0], st[1], theta};
        CurvatureReport rep = curvatures(action, curve);
        HypersurfaceResiduals res = biharmonic_residuals(action, curve);
        return FlowSample{s,        st[0],      st[1], st[2],      rep.kd,
                          rep.mean_f, rep.A2, res.normal, res.tangential};
    };
    std::vector<double> init = {x0, y0, theta0};
    return run_flow(sys, init, s_end, step, report);
}

FlowResult biconservative_flow(const OrbitAction& action, double x0, double y0, double theta0,
                               double s_end, double step) {
    check_interior(action.d, x0, y0);
    OdeSystem sys{3,
                  [&action](double, std::span<const double> s, std::span<double> ds) {
                      double S = orbital_sum(action, s[0], s[1],
                                             Jet::constant(s[2], 0)).value();
                      ds[0] = std::cos(s[2]);
                      ds[1] = std::sin(s[2]);
                      ds[2] = -S / 3.0;
                  },
                  [&action](double, std::span<const double> s) {
                      return flow_interior(action, s[0], s[1]);
                  }};
    auto report = [&action](double s, std::span<const double> st) {
        Jet theta = Jet::constant(st[2], 0);
        for (int k = 1; k <= 3; ++k) {
            Jet S = orbital_sum(action, st[0], st[1], theta);
            theta = Jet::from_derivative(st[2], -(S / 3.0));
        }
        ProfileCurve curve{st[0], st[1], theta};
        CurvatureReport rep = curvatures(action, curve);
        HypersurfaceResiduals res = biharmonic_residuals(action, curve);
        return FlowSample{s,        st[0],      st[1], st[2],      rep.kd,
                          rep.mean_f, rep.A2, res.normal, res.tangential};
    };
    std::vector<double> init = {x0, y0, theta0};
    return run_flow(sys, init, s_end, step, report);
}

FlowResult biharmonic_flow(const OrbitAction& action, double x0, double y0, double theta0,
                           double kd0, double f1_0, double s_end, double step) {
    check_interior(action.d, x0, y0);
    auto field = [&action](double, std::span<const double> st, std::span<double> ds) {
        Jet theta1 = Jet::from_derivative(st[2], Jet::constant(st[3], 0));  // [theta, kd]
        Jet S = orbital_sum(action, st[0], st[1], theta1);
        double rate = log_v2_rate(action, st[0], st[1], st[2]);
        double f = st[3] + S.value();
        CurvatureReport rep =
            curvatures(action, ProfileCurve{st[0], st[1], theta1});
        ds[0] = std::cos(st[2]);
        ds[1] = std::sin(st[2]);
        ds[2] = st[3];
        ds[3] = st[4] - S.deriv(1);
        ds[4] = -0.5 * rate * st[4] + rep.A2 * f;
    };
    OdeSystem sys{5, field,
                  [&action](double, std::span<const double> s) {
                      return flow_interior(action, s[0], s[1]);
                  }};
    auto report = [&action](double s, std::span<const double> st) {
        // extend theta to order 3 using the flow's own defining relations
        Jet theta1 = Jet::from_derivative(st[2], Jet::constant(st[3], 0));
        Jet S1 = orbital_sum(action, st[0], st[1], theta1);
        double kd_dot = st[4] - S1.deriv(1);

        Jet kd1(1);
        kd1[0] = st[3];
        kd1[1] = kd_dot;
        Jet theta2 = Jet::from_derivative(st[2], kd1);
        Jet S2 = orbital_sum(action, st[0], st[1], theta2);
        double rate = log_v2_rate(action, st[0], st[1], st[2]);
        CurvatureReport rep0 = curvatures(action, ProfileCurve{st[0], st[1], theta2});
        double f = st[3] + S2.value();
        double f1_dot = -0.5 * rate * st[4] + rep0.A2 * f;
        double kd_ddot = f1_dot - S2.deriv(2);

        Jet kd2(2);
        kd2[0] = st[3];
        kd2[1] = kd_dot;
        kd2[2] = kd_ddot;
        Jet theta3 = Jet::from_derivative(st[2], kd2);
        ProfileCurve curve{st[0], st[1], theta3};
        CurvatureReport rep = curvatures(action, curve);
        HypersurfaceResiduals res = biharmonic_residuals(action, curve);
        return FlowSample{s,        st[0],      st[1], st[2],      rep.kd,
                          rep.mean_f, rep.A2, res.normal, res.tangential};
    };
    std::vector<double> init = {x0, y0, theta0, kd0, f1_0};
    return run_flow(sys, init, s_end, step, report);
}

}  // namespace biharm
