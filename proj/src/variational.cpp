#include "biharm/variational.hpp"

#include <cmath>

#include "biharm/solvers.hpp"

namespace biharm {

namespace {

struct Slots {
    Jet t;
    Jet a, ad, add;
};

Slots curve_slots(const Jet& alpha, double t, int t_order) {
    if (alpha.order() < t_order + 2)
        throw DomainError("curve jet order too low for the requested variation");
    Slots s;
    s.t = Jet::variable(t, t_order);
    s.a = alpha.truncated(t_order);
    s.ad = alpha.derivative().truncated(t_order);
    s.add = alpha.derivative().derivative().truncated(t_order);
    return s;
}

}  // namespace

double el_first_order(const Lagrangian1& L, const Jet& alpha, double t) {
    if (alpha.order() < 2) throw DomainError("el_first_order needs a curve jet of order >= 2");
    Jet tj = Jet::variable(t, 1);
    Jet a = alpha.truncated(1);
    Jet ad = alpha.derivative().truncated(1);

    long double p_a = L.eval(tj, Dual::seeded(a), Dual::constant(ad)).d.deriv_l(0);
    long double dp_ad = L.eval(tj, Dual::constant(a), Dual::seeded(ad)).d.deriv_l(1);
    return static_cast<double>(p_a - dp_ad);
}

double el_second_order(const Lagrangian2& L, const Jet& alpha, double t) {
    if (alpha.order() < 4) throw DomainError("el_second_order needs a curve jet of order >= 4");
    Slots s = curve_slots(alpha, t, 2);

    long double p_a = L.eval(s.t, Dual::seeded(s.a), Dual::constant(s.ad), Dual::constant(s.add))
                          .d.deriv_l(0);
    long double dp_ad =
        L.eval(s.t, Dual::constant(s.a), Dual::seeded(s.ad), Dual::constant(s.add)).d.deriv_l(1);
    long double d2p_add =
        L.eval(s.t, Dual::constant(s.a), Dual::constant(s.ad), Dual::seeded(s.add)).d.deriv_l(2);
    return static_cast<double>(p_a - dp_ad + d2p_add);
}

std::vector<double> el_system(const VectorLagrangian& L, std::span<const Jet> curve, double t) {
    if (static_cast<int>(curve.size()) != L.components)
        throw ValidationError("el_system arity mismatch: " + std::to_string(curve.size()) +
                              " curve components for " + std::to_string(L.components));
    const int n = L.components;
    std::vector<Slots> slots;
    slots.reserve(n);
    for (const Jet& alpha : curve) {
        if (alpha.order() < 4) throw DomainError("el_system needs curve jets of order >= 4");
        slots.push_back(curve_slots(alpha, t, 2));
    }

    std::vector<double> out(n);
    std::vector<Dual> a(n), ad(n), add(n);
    auto reset = [&] {
        for (int j = 0; j < n; ++j) {
            a[j] = Dual::constant(slots[j].a);
            ad[j] = Dual::constant(slots[j].ad);
            add[j] = Dual::constant(slots[j].add);
        }
    };
    Jet tj = Jet::variable(t, 2);
    for (int j = 0; j < n; ++j) {
        reset();
        a[j] = Dual::seeded(slots[j].a);
        long double p_a = L.eval(tj, a, ad, add).d.deriv_l(0);
        reset();
        ad[j] = Dual::seeded(slots[j].ad);
        long double dp_ad = L.eval(tj, a, ad, add).d.deriv_l(1);
        reset();
        add[j] = Dual::seeded(slots[j].add);
        long double d2p_add = L.eval(tj, a, ad, add).d.deriv_l(2);
        out[j] = static_cast<double>(p_a - dp_ad + d2p_add);
    }
    return out;
}

namespace {

template <typename L>
double value_at(const L& lagr, const CurveFn& alpha, double t);

template <>
double value_at(const Lagrangian1& lagr, const CurveFn& alpha, double t) {
    Jet aj = alpha(t, 1);
    Jet tj = Jet::variable(t, 0);
    return lagr.eval(tj, Dual::constant(aj.truncated(0)), Dual::constant(aj.derivative()))
        .v.value();
}

template <>
double value_at(const Lagrangian2& lagr, const CurveFn& alpha, double t) {
    Jet aj = alpha(t, 2);
    Jet tj = Jet::variable(t, 0);
    return lagr
        .eval(tj, Dual::constant(aj.truncated(0)), Dual::constant(aj.derivative().truncated(0)),
              Dual::constant(aj.derivative().derivative()))
        .v.value();
}

template <typename L>
double functional_value_impl(const L& lagr, const CurveFn& alpha, double a, double b, int panels) {
    return simpson([&](double t) { return value_at(lagr, alpha, t); }, a, b, panels);
}

template <typename L>
double first_variation_fd_impl(const L& lagr, const CurveFn& alpha, const CurveFn& beta, double a,
                               double b, double h, int panels) {
    if (std::abs(beta(a, 0).value()) > 1e-12 || std::abs(beta(b, 0).value()) > 1e-12)
        throw ValidationError("perturbation must vanish at the interval endpoints");
    auto shifted = [&](double sgn) {
        CurveFn fn = [&alpha, &beta, sgn, h](double t, int order) {
            return alpha(t, order) + beta(t, order) * (sgn * h);
        };
        return functional_value_impl(lagr, fn, a, b, panels);
    };
    return (shifted(1.0) - shifted(-1.0)) / (2.0 * h);
}

}  // namespace

double functional_value(const Lagrangian1& L, const CurveFn& alpha, double a, double b,
                        int panels) {
    return functional_value_impl(L, alpha, a, b, panels);
}
double functional_value(const Lagrangian2& L, const CurveFn& alpha, double a, double b,
                        int panels) {
    return functional_value_impl(L, alpha, a, b, panels);
}

double first_variation_fd(const Lagrangian2& L, const CurveFn& alpha, const CurveFn& beta,
                          double a, double b, double h_step, int panels) {
    return first_variation_fd_impl(L, alpha, beta, a, b, h_step, panels);
}
double first_variation_fd(const Lagrangian1& L, const CurveFn& alpha, const CurveFn& beta,
                          double a, double b, double h_step, int panels) {
    return first_variation_fd_impl(L, alpha, beta, a, b, h_step, panels);
}

std::pair<Dual, Dual> warp_pair(const Model& cod, const Dual& x) {
    const int o = x.v.order();
    Jet tower = cod.warp.jet(x.v.deriv_l(0), o + 2);
    Jet h = compose(tower.truncated(o), x.v);
    Jet hp = compose(tower.derivative().truncated(o), x.v);
    Jet hpp = compose(tower.derivative().derivative(), x.v);
    return {Dual(h, hp * x.d), Dual(hp, hpp * x.d)};
}

Lagrangian1 reduced_energy_lagrangian(const Model& dom, const Model& cod) {
    const int m = dom.m;
    WarpingFunction f = dom.warp;
    Model codc = cod;
    return Lagrangian1{[m, f, codc](const Jet& t, const Dual& a, const Dual& ad) {
        Jet fj = f.jet(t.value(), t.order());
        Jet V = pow(fj, m - 1);
        auto [h, hp] = warp_pair(codc, a);
        Dual density = ad * ad + static_cast<double>(m - 1) * h * h / (fj * fj);
        return 0.5 * density * V;
    }};
}

Lagrangian2 reduced_bienergy_lagrangian(const Model& dom, const Model& cod) {
    const int m = dom.m;
    WarpingFunction f = dom.warp;
    Model codc = cod;
    return Lagrangian2{
        [m, f, codc](const Jet& t, const Dual& a, const Dual& ad, const Dual& add) {
            Jet ffull = f.jet(t.value(), t.order() + 1);
            Jet fj = ffull.truncated(t.order());
            Jet fd = ffull.derivative();
            Jet V = pow(fj, m - 1);
            auto [h, hp] = warp_pair(codc, a);
            Dual F = add + static_cast<double>(m - 1) * (fd / fj) * ad -
                     static_cast<double>(m - 1) * h * hp / (fj * fj);
            return 0.5 * F * F * V;
        }};
}

}  // namespace biharm
