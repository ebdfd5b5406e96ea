#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "biharm/model.hpp"

namespace biharm {

/// First-order perturbation of a jet-valued quantity: `v` is the quantity as
/// a jet in the curve parameter t, `d` its derivative with respect to one
/// slot variable (alpha, alpha-dot or alpha-ddot), also propagated as a jet
/// in t. Seeding one slot with d=1 and evaluating a Lagrangian through this
/// algebra yields the slot partial along the curve, ready for total
/// t-derivatives by jet shift.
struct Dual {
    Jet v, d;

    Dual() = default;
    Dual(Jet value, Jet deriv) : v(std::move(value)), d(std::move(deriv)) {}

    static Dual constant(const Jet& value) { return Dual(value, Jet(value.order())); }
    static Dual seeded(const Jet& value) {
        return Dual(value, Jet::constant(1.0, value.order()));
    }

    Dual operator-() const { return Dual(-v, -d); }

    friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
    friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return {a.v * b.v, a.v * b.d + a.d * b.v};
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        Jet q = a.v / b.v;
        return {q, (a.d - q * b.d) / b.v};
    }

    friend Dual operator+(const Dual& a, double s) { return {a.v + s, a.d}; }
    friend Dual operator+(double s, const Dual& a) { return a + s; }
    friend Dual operator-(const Dual& a, double s) { return {a.v - s, a.d}; }
    friend Dual operator-(double s, const Dual& a) { return {s - a.v, -a.d}; }
    friend Dual operator*(const Dual& a, double s) { return {a.v * s, a.d * s}; }
    friend Dual operator*(double s, const Dual& a) { return a * s; }
    friend Dual operator/(const Dual& a, double s) { return {a.v / s, a.d / s}; }
    friend Dual operator/(double s, const Dual& a) { return Dual::constant(Jet::constant(s, a.v.order())) / a; }

    friend Dual operator*(const Dual& a, const Jet& j) { return {a.v * j, a.d * j}; }
    friend Dual operator*(const Jet& j, const Dual& a) { return a * j; }
    friend Dual operator/(const Dual& a, const Jet& j) { return {a.v / j, a.d / j}; }
};

inline Dual sin(const Dual& x) { return {sin(x.v), cos(x.v) * x.d}; }
inline Dual cos(const Dual& x) { return {cos(x.v), -sin(x.v) * x.d}; }
inline Dual tan(const Dual& x) {
    Jet t = tan(x.v);
    return {t, (1.0 + t * t) * x.d};
}
inline Dual sinh(const Dual& x) { return {sinh(x.v), cosh(x.v) * x.d}; }
inline Dual cosh(const Dual& x) { return {cosh(x.v), sinh(x.v) * x.d}; }
inline Dual tanh(const Dual& x) {
    Jet t = tanh(x.v);
    return {t, (1.0 - t * t) * x.d};
}
inline Dual exp(const Dual& x) {
    Jet e = exp(x.v);
    return {e, e * x.d};
}
inline Dual log(const Dual& x) { return {log(x.v), x.d / x.v}; }
inline Dual sqrt(const Dual& x) {
    Jet s = sqrt(x.v);
    return {s, x.d / (2.0 * s)};
}
inline Dual asin(const Dual& x) { return {asin(x.v), x.d / sqrt(1.0 - x.v * x.v)}; }
inline Dual acos(const Dual& x) { return {acos(x.v), -(x.d / sqrt(1.0 - x.v * x.v))}; }
inline Dual atan(const Dual& x) { return {atan(x.v), x.d / (1.0 + x.v * x.v)}; }
inline Dual atanh(const Dual& x) { return {atanh(x.v), x.d / (1.0 - x.v * x.v)}; }
inline Dual pow(const Dual& x, double p) {
    return {pow(x.v, p), p * pow(x.v, p - 1.0) * x.d};
}
inline Dual pow(const Dual& x, int n) {
    if (n == 0) return Dual::constant(Jet::constant(1.0, x.v.order()));
    return {pow(x.v, n), static_cast<double>(n) * pow(x.v, n - 1) * x.d};
}

/// First-order reduced Lagrangian L(t, alpha, alpha').
/// The evaluator receives t as a jet (variable seed) and the two slots as
/// duals; it must be written in Dual/Jet arithmetic only.
struct Lagrangian1 {
    std::function<Dual(const Jet& t, const Dual& a, const Dual& ad)> eval;
};

/// Second-order reduced Lagrangian L(t, alpha, alpha', alpha'').
struct Lagrangian2 {
    std::function<Dual(const Jet& t, const Dual& a, const Dual& ad, const Dual& add)> eval;
};

/// Vector Lagrangian over components alpha_j with slots (a_j, a_j', a_j'').
struct VectorLagrangian {
    int components;
    std::function<Dual(const Jet& t, std::span<const Dual> a, std::span<const Dual> ad,
                       std::span<const Dual> add)>
        eval;
};

/// dL/da - d/dt dL/da' at t, for a curve given by its jet (order >= 2).
double el_first_order(const Lagrangian1& L, const Jet& alpha, double t);

/// dL/da - d/dt dL/da' + d^2/dt^2 dL/da'' at t (curve jet order >= 4).
double el_second_order(const Lagrangian2& L, const Jet& alpha, double t);

/// Component j of the Euler-Lagrange system for a vector Lagrangian.
std::vector<double> el_system(const VectorLagrangian& L, std::span<const Jet> curve, double t);

/// Curve as a jet evaluator, the shared currency with radial profiles.
using CurveFn = std::function<Jet(double t, int order)>;

double functional_value(const Lagrangian1& L, const CurveFn& alpha, double a, double b,
                        int panels);
double functional_value(const Lagrangian2& L, const CurveFn& alpha, double a, double b,
                        int panels);

/// Central finite difference [E(alpha+h beta) - E(alpha-h beta)]/(2h) of the
/// reduced functional; beta must vanish at both endpoints (checked to 1e-12).
double first_variation_fd(const Lagrangian2& L, const CurveFn& alpha, const CurveFn& beta,
                          double a, double b, double h_step = 1e-5, int panels = 512);
double first_variation_fd(const Lagrangian1& L, const CurveFn& alpha, const CurveFn& beta,
                          double a, double b, double h_step = 1e-5, int panels = 512);

/// L(r, a, a') = (1/2) [a'^2 + (m-1) h^2(a)/f^2] f^(m-1),
/// the reduced energy density of a rotationally symmetric map.
Lagrangian1 reduced_energy_lagrangian(const Model& dom, const Model& cod);

/// L(r, a, a', a'') = (1/2) F^2 f^(m-1) with
/// F = a'' + (m-1)(f'/f) a' - (m-1) h(a) h'(a)/f^2.
Lagrangian2 reduced_bienergy_lagrangian(const Model& dom, const Model& cod);

/// Codomain warp and its derivative evaluated on a slot dual.
std::pair<Dual, Dual> warp_pair(const Model& cod, const Dual& x);

}  // namespace biharm
