#pragma once

#include <string>
#include <vector>

#include "biharm/jet.hpp"
#include "biharm/solvers.hpp"

namespace biharm {

/// One cohomogeneity-two isometry group action on R^n: orbit-space cone of
/// angle pi/d, orbital multiplicities m_0..m_{d-1}. The hypersurface
/// dimension count 1 + sum(m_i) = n-1 is enforced.
struct OrbitAction {
    int d;
    std::vector<int> mults;
    int n;
    std::string label;
};

OrbitAction make_action(int d, std::vector<int> mults, int n, std::string label);

/// Rotational hypersurfaces, SO(n-1) acting on R^n (d=1).
OrbitAction so_rotational(int n);
/// SO(p) x SO(q) on R^(p+q) (d=2).
OrbitAction so_pq(int p, int q);
/// SO(2) x SO(m) on R^(2m) (d=4).
OrbitAction so2_som(int m);
/// S(U(2) x U(m)) on R^(4m) (d=4).
OrbitAction su2_um(int m);
/// Sp(2) x Sp(m) on R^(8m) (d=4).
OrbitAction sp2_spm(int m);

/// The full table of cohomogeneity-two actions; parametric families appear
/// at their smallest admissible parameters.
std::vector<OrbitAction> action_catalog();
OrbitAction action_lookup(const std::string& label);

/// Linear form w_(d,i)(x,y) = x sin(i pi/d) - y cos(i pi/d).
double w_form(int d, int i, double x, double y);

/// Is (x,y) strictly inside the orbit cone Q?
bool cone_interior(int d, double x, double y);

struct VolumeValue {
    double value;
    bool boundary;  // set when some orbit degenerates at (x,y)
};

/// Squared orbit volume prod_i w^(2 m_i); each linear form is rescaled so
/// its largest coefficient is 1 (the constants cancel in every residual).
VolumeValue volume_sq(const OrbitAction& action, double x, double y);

/// Arc-length profile curve state: position plus the theta tower
/// (theta.deriv(1) is the profile curvature k_d). x' = cos theta,
/// y' = sin theta hold by construction.
struct ProfileCurve {
    double x, y;
    Jet theta;  // order <= 3
};

struct CurvatureReport {
    std::vector<double> ks;  // orbital principal curvatures k_0..k_{d-1}
    double kd;               // profile curvature
    double mean_f;           // k_d + sum m_i k_i
    double A2;               // k_d^2 + sum m_i k_i^2
    double logV2_rate;       // d/ds ln V^2
};

CurvatureReport curvatures(const OrbitAction& action, const ProfileCurve& curve);

struct HypersurfaceResiduals {
    double normal;      // f'' + (1/2)(ln V^2)' f' - |A|^2 f
    double tangential;  // f' (f + 2 k_d)
};

/// Both biharmonicity residuals; f', f'' come from exact jet propagation
/// through the theta tower (order 3 required).
HypersurfaceResiduals biharmonic_residuals(const OrbitAction& action, const ProfileCurve& curve);

/// Mean curvature of the linear cone gamma(s) = (s cos sigma, s sin sigma):
/// f = -(1/s) sum m_i cot(sigma - i pi/d).
double cone_mean_f(const OrbitAction& action, double sigma, double s);

/// All roots of the cone mean curvature in (0, pi/d).
std::vector<double> minimal_cone_angles(const OrbitAction& action);

/// d=2 tension components (tangential, normal) of the isometric immersion;
/// the tangential part vanishes identically under arc length.
HypersurfaceResiduals tension_d2(int p, int q, const ProfileCurve& curve);

/// Literal evaluation of the explicit d=2 bitension component displays
/// (theta order 3; fourth derivatives of x, y come from the tower).
HypersurfaceResiduals bitension_explicit_d2(int p, int q, const ProfileCurve& curve);

/// Bitension components from the variational route: Euler-Lagrange operator
/// of L2 = (1/2)|tau|^2 V with the background curve frozen during slot
/// differentiation, then projected on the tangent and normal directions.
/// x, y are degree-6 jets of an arc-length curve at the evaluation point.
HypersurfaceResiduals bitension_variational(const OrbitAction& action, const Jet& x, const Jet& y);

struct FlowSample {
    double s, x, y, theta, kd, mean_f, A2, res_normal, res_tangential;
};

struct FlowResult {
    std::vector<FlowSample> samples;
    StopReason reason;
};

/// Constant-mean-curvature curve: theta' = f0 - sum m_i k_i keeps
/// mean_f = f0 along the flow; the normal residual reduces to -|A|^2 f0.
FlowResult cmc_flow(const OrbitAction& action, double f0, double x0, double y0, double theta0,
                    double s_end, double step);

/// Biconservative branch f + 2 k_d = 0: theta' = -(1/3) sum m_i k_i.
FlowResult biconservative_flow(const OrbitAction& action, double x0, double y0, double theta0,
                               double s_end, double step);

/// Normal-equation flow in the state (x, y, theta, k_d, f1 = f'):
/// k_d' = f1 - d/ds[sum m_i k_i], f1' = -(1/2)(ln V^2)' f1 + |A|^2 f.
/// The tangential residual f1 (f + 2 k_d) is monitored, not enforced.
FlowResult biharmonic_flow(const OrbitAction& action, double x0, double y0, double theta0,
                           double kd0, double f1_0, double s_end, double step);

}  // namespace biharm
