#include "biharm/rotsym.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "biharm/solvers.hpp"

namespace biharm {

namespace {

constexpr double kPoleGuard = 1e-4;   // residuals are not evaluated below this radius
constexpr double kWarpFloor = 1e-12;  // f(r) below this counts as pole proximity

void check_pole_guard(double r, double f_value) {
    if (r < kPoleGuard) throw DomainError("pole proximity: r < 1e-4");
    if (f_value < kWarpFloor) throw DomainError("pole proximity: f(r) < 1e-12");
}

// Derivative tower of the codomain warp at a point of its own variable.
Jet cod_tower(const Model& cod, long double alpha, int order) {
    return cod.warp.jet(alpha, order);
}

// Picard reconstruction of the profile jet from alpha' = rhs(r, alpha):
// each pass extends the tower by one order, so `order` passes suffice.
Jet ode_profile_jet(const std::function<Jet(const Jet&, const Jet&)>& rhs, double r, double alpha0,
                    int order) {
    Jet a = Jet::constant(alpha0, 0);
    for (int k = 1; k <= order; ++k) {
        Jet rj = Jet::variable(r, k - 1);
        Jet g = rhs(rj, a);  // g[j] = alpha^{(j+1)}
        a = Jet::from_derivative(alpha0, g);
    }
    return a;
}

}  // namespace

RadialProfile RadialProfile::from_expr(const Expr& form,
                                       const std::map<std::string, double>& params,
                                       bool zero_at_pole) {
    RadialProfile p;
    p.fn_ = [form, params](double r, int order) { return jet_eval(form, "r", r, params, order); };
    p.zero_at_pole_ = zero_at_pole;
    if (zero_at_pole) {
        double a_eps = p.fn_(1e-6, 0).value();
        if (std::abs(a_eps) > 1e-4)
            throw ValidationError("profile does not vanish at the pole: alpha(1e-6) = " +
                                  std::to_string(a_eps));
    }
    return p;
}

RadialProfile RadialProfile::from_ode(std::function<Jet(const Jet&, const Jet&)> rhs, double r0,
                                      double alpha0, double r_lo, double r_hi, bool zero_at_pole) {
    if (!(r_lo < r_hi) || !(r0 >= r_lo) || !(r0 <= r_hi))
        throw ValidationError("profile ODE range must contain the anchor point");

    // Dense forward/backward sweeps; queries re-integrate from the nearest
    // stored node so off-grid points keep full accuracy.
    OdeSystem sys{1,
                  [rhs](double r, std::span<const double> y, std::span<double> dy) {
                      dy[0] = rhs(Jet::constant(r, 0), Jet::constant(y[0], 0)).value();
                  },
                  nullptr};

    OdeSystem rev{1,
                  [rhs](double t, std::span<const double> y, std::span<double> dy) {
                      dy[0] = -rhs(Jet::constant(-t, 0), Jet::constant(y[0], 0)).value();
                  },
                  nullptr};
    // Integrate from (rs, alpha) to radius r, either direction.
    auto hop = [sys, rev](double rs, double alpha, double r) -> double {
        if (rs == r) return alpha;
        std::vector<double> y = {alpha};
        if (std::abs(r - rs) < 1e-9)
            return r > rs ? rk4_integrate(sys, y, rs, r, r - rs).back_state()[0]
                          : rk4_integrate(rev, y, -rs, -r, rs - r).back_state()[0];
        return r > rs ? rkf45_integrate(sys, y, rs, r, 1e-13, 1e-14).back_state()[0]
                      : rkf45_integrate(rev, y, -rs, -r, 1e-13, 1e-14).back_state()[0];
    };

    auto samples = std::make_shared<std::vector<std::pair<double, double>>>();
    std::vector<double> y0 = {alpha0};
    if (r0 > r_lo) {
        Trajectory back = rkf45_integrate(rev, y0, -r0, -r_lo, 1e-12, 1e-13);
        for (std::size_t i = back.times.size(); i-- > 0;)
            samples->emplace_back(-back.times[i], back.states[i][0]);
    } else {
        samples->emplace_back(r0, alpha0);
    }
    if (r0 < r_hi) {
        Trajectory fwd = rkf45_integrate(sys, y0, r0, r_hi, 1e-12, 1e-13);
        for (std::size_t i = 1; i < fwd.times.size(); ++i)
            samples->emplace_back(fwd.times[i], fwd.states[i][0]);
    }

    RadialProfile p;
    p.zero_at_pole_ = zero_at_pole;
    p.fn_ = [rhs, samples, hop](double r, int order) {
        auto it = std::lower_bound(samples->begin(), samples->end(), r,
                                   [](const auto& s, double v) { return s.first < v; });
        if (it == samples->end()) --it;
        if (it != samples->begin() && it->first > r) --it;
        double alpha = hop(it->first, it->second, r);
        return ode_profile_jet(rhs, r, alpha, order);
    };
    return p;
}

RadialProfile RadialProfile::from_jet_fn(JetFn fn, bool zero_at_pole) {
    RadialProfile p;
    p.fn_ = std::move(fn);
    p.zero_at_pole_ = zero_at_pole;
    return p;
}

Jet RadialProfile::jet(double r, int order) const {
    if (!fn_) throw Error("empty radial profile");
    return fn_(r, order);
}

MapPair make_map_pair(Model dom, Model cod, RadialProfile profile) {
    if (dom.m != cod.m)
        throw ValidationError("rotationally symmetric maps require equal model dimensions");
    return MapPair{std::move(dom), std::move(cod), std::move(profile)};
}

Jet tension_F(const MapPair& pair, double r, int depth) {
    if (depth < 0 || depth > 2) throw DomainError("tension_F depth must be 0, 1 or 2");
    const int m = pair.dom.m;
    Jet f = pair.dom.warp.jet(r, depth + 1);
    check_pole_guard(r, f.value());

    Jet a = pair.profile.jet(r, depth + 2);
    Jet at = a.truncated(depth);
    Jet ad = a.derivative().truncated(depth);
    Jet add = a.derivative().derivative();
    Jet ft = f.truncated(depth);
    Jet fd = f.derivative();

    Jet htow = cod_tower(pair.cod, a.deriv_l(0), depth + 1);
    Jet h = compose(htow.truncated(depth), at);
    Jet hp = compose(htow.derivative(), at);

    return add + static_cast<double>(m - 1) * (fd / ft) * ad -
           static_cast<double>(m - 1) * h * hp / (ft * ft);
}

double bitension_residual_F(const MapPair& pair, double r) {
    const long double m = pair.dom.m;
    Jet F = tension_F(pair, r, 2);
    Jet f = pair.dom.warp.jet(r, 1);
    Jet ht = cod_tower(pair.cod, pair.profile.jet(r, 0).deriv_l(0), 2);
    const long double fv = f.deriv_l(0), fp = f.deriv_l(1);
    const long double h = ht.deriv_l(0), hp = ht.deriv_l(1), hpp = ht.deriv_l(2);
    return static_cast<double>(
        F.deriv_l(2) + (m - 1) * (fv * fp * F.deriv_l(1) - hp * hp * F.deriv_l(0)) / (fv * fv) -
        (m - 1) * h * hpp * F.deriv_l(0) / (fv * fv));
}

double bitension_residual_expanded(const MapPair& pair, double r) {
    const long double m = pair.dom.m;
    Jet f = pair.dom.warp.jet(r, 3);
    check_pole_guard(r, f.value());
    Jet a = pair.profile.jet(r, 4);
    Jet ht = cod_tower(pair.cod, a.deriv_l(0), 3);

    const long double fv = f.deriv_l(0), f1 = f.deriv_l(1), f2 = f.deriv_l(2), f3 = f.deriv_l(3);
    const long double ad = a.deriv_l(1), add = a.deriv_l(2), a3 = a.deriv_l(3), a4 = a.deriv_l(4);
    const long double h = ht.deriv_l(0), hp = ht.deriv_l(1), hpp = ht.deriv_l(2),
                      hppp = ht.deriv_l(3);

    const long double term_h =
        (m - 1) * h *
        (2 * fv * f2 * hp - 2 * (m - 3) * fv * f1 * ad * hpp + 2 * (m - 4) * f1 * f1 * hp -
         fv * fv * (hppp * ad * ad + 2 * add * hpp) + (m - 1) * hp * hp * hp);
    const long double term_f =
        fv * ((m - 3) * (m - 1) * fv * f1 * f1 * add - (m - 3) * (m - 1) * f1 * f1 * f1 * ad +
              (m - 1) * fv *
                  (fv * (f3 * ad + 2 * f2 * add) - 2 * add * hp * hp - 3 * ad * ad * hp * hpp) +
              (m - 1) * f1 * (ad * ((m - 4) * fv * f2 - 2 * (m - 3) * hp * hp) + 2 * fv * fv * a3) +
              fv * fv * fv * a4);
    const long double term_hh = (m - 1) * (m - 1) * h * h * hp * hpp;

    return static_cast<double>(std::pow(fv, m - 5) * (term_h + term_f + term_hh));
}

double conformality_residual(const MapPair& pair, double r) {
    Jet f = pair.dom.warp.jet(r, 0);
    check_pole_guard(r, f.value());
    Jet a = pair.profile.jet(r, 1);
    long double h = cod_tower(pair.cod, a.deriv_l(0), 0).deriv_l(0);
    return static_cast<double>(a.deriv_l(1) - h / f.deriv_l(0));
}

namespace detail {

double conformal_biharmonic_general(int mi, const Model& dom, const Model& cod, double r,
                                    double alpha) {
    const long double m = mi;
    Jet f = dom.warp.jet(r, 3);
    check_pole_guard(r, f.value());
    Jet ht = cod_tower(cod, alpha, 3);
    const long double fv = f.deriv_l(0), f1 = f.deriv_l(1), f2 = f.deriv_l(2), f3 = f.deriv_l(3);
    const long double h = ht.deriv_l(0), hp = ht.deriv_l(1), hpp = ht.deriv_l(2),
                      hppp = ht.deriv_l(3);

    const long double inner =
        fv * fv * f3 + hp * (4 * fv * f2 + (m - 5) * h * hpp) + (3 * m - 14) * f1 * f1 * hp -
        2 * (m - 4) * f1 * f1 * f1 +
        f1 * ((m - 7) * fv * f2 - 2 * (m - 4) * h * hpp - 2 * (m - 4) * hp * hp) - h * h * hppp +
        (m - 2) * hp * hp * hp;
    return static_cast<double>((m - 2) * std::pow(fv, m - 5) * h * inner);
}

double conformal_biharmonic_m4(const Model& dom, const Model& cod, double r, double alpha) {
    Jet f = dom.warp.jet(r, 3);
    check_pole_guard(r, f.value());
    Jet ht = cod_tower(cod, alpha, 3);
    const long double fv = f.deriv_l(0), f1 = f.deriv_l(1), f2 = f.deriv_l(2), f3 = f.deriv_l(3);
    const long double h = ht.deriv_l(0), hp = ht.deriv_l(1), hpp = ht.deriv_l(2),
                      hppp = ht.deriv_l(3);

    return static_cast<double>(
        2.0L * h / fv *
        (fv * fv * f3 + hp * (4 * fv * f2 - h * hpp) - 2 * f1 * f1 * hp - 3 * fv * f1 * f2 -
         h * h * hppp + 2 * hp * hp * hp));
}

}  // namespace detail

double conformal_biharmonic_residual(const Model& dom, const Model& cod, double r, double alpha) {
    if (dom.m != cod.m)
        throw ValidationError("conformal residual requires equal model dimensions");
    if (dom.m == 4) return detail::conformal_biharmonic_m4(dom, cod, r, alpha);
    return detail::conformal_biharmonic_general(dom.m, dom, cod, r, alpha);
}

double h_condition_residual(const Model& cod, double alpha) {
    Jet ht = cod_tower(cod, alpha, 3);
    const long double h = ht.deriv_l(0), hp = ht.deriv_l(1), hpp = ht.deriv_l(2),
                      hppp = ht.deriv_l(3);
    return static_cast<double>(h * h * hppp + hp * (2.0L + h * hpp) - 2.0L * hp * hp * hp);
}

double prime_integral(const Model& cod, double alpha) {
    Jet ht = cod_tower(cod, alpha, 2);
    const long double h = ht.deriv_l(0), hp = ht.deriv_l(1), hpp = ht.deriv_l(2);
    return static_cast<double>(h * h * (1.0L - hp * hp + h * hpp));
}

MapPair CatalogEntry::instantiate(double c) const {
    if (classification == MapClass::None)
        throw ValidationError("case " + case_id + " has no solution to instantiate");
    if (!(c > 0)) throw ValidationError("catalog parameter c must be positive");

    auto model_for = [](const std::string& desc) {
        if (desc == "r") return make_model(4, WarpingFunction::euclidean());
        if (desc == "sin(r)") return make_model(4, WarpingFunction::sphere(1.0));
        if (desc == "sinh(r)") return make_model(4, WarpingFunction::hyperbolic(1.0));
        throw ValidationError("unknown catalog warp " + desc);
    };
    Expr form = parse_expr(profile_form, std::vector<std::string>{"r", "c"});
    return make_map_pair(model_for(dom_desc), model_for(cod_desc),
                         RadialProfile::from_expr(form, {{"c", c}}));
}

double CatalogEntry::r_bound(double c) const {
    if (case_id == "1C") return 1.0 / (c * c);
    if (case_id == "2B") return std::numbers::pi;
    return std::numeric_limits<double>::infinity();
}

std::vector<CatalogEntry> classification_catalog() {
    return {
        {"1A", "r", "r", "c*r", MapClass::Harmonic},
        {"1B", "r", "sin(r)", "2*atan(c^2*r)", MapClass::ProperBiharmonic},
        {"1C", "r", "sinh(r)", "2*atanh(c^2*r)", MapClass::ProperBiharmonic},
        {"2A", "sin(r)", "r", "", MapClass::None},
        {"2B", "sin(r)", "sin(r)", "r", MapClass::Harmonic},
        {"2C", "sin(r)", "sinh(r)", "", MapClass::None},
        {"3A", "sinh(r)", "r", "", MapClass::None},
        {"3B", "sinh(r)", "sin(r)", "", MapClass::None},
        {"3C", "sinh(r)", "sinh(r)", "r", MapClass::Harmonic},
    };
}

const CatalogEntry& catalog_lookup(int case_number, char letter) {
    static const std::vector<CatalogEntry> catalog = classification_catalog();
    std::string id = std::to_string(case_number) + std::string(1, letter);
    for (const auto& entry : catalog)
        if (entry.case_id == id) return entry;
    throw ValidationError("no catalog case " + id);
}

PoleSmoothnessReport pole_smoothness_check(const RadialProfile& profile, int k_max) {
    if (k_max < 1 || k_max > 2) throw DomainError("pole smoothness supports k_max in {1, 2}");

    // Taylor back-extrapolation from eps and eps/2, Richardson-combined; the
    // order-6 jet leaves an O(eps^(7-k)) tail for the k-th derivative.
    auto estimate = [&](double eps, int k) {
        Jet j = profile.jet(eps, Jet::kMaxOrder);
        double acc = 0.0, pw = 1.0, fact = 1.0;
        for (int i = 0; k + i <= Jet::kMaxOrder; ++i) {
            if (i > 0) {
                pw *= -eps;
                fact *= i;
            }
            acc += j.deriv(k + i) * pw / fact;
        }
        return acc;
    };
    const double eps = 1e-3;
    auto richardson = [&](int k) {
        double e1 = estimate(eps, k), e2 = estimate(eps / 2, k);
        double w = std::pow(2.0, 7 - k);
        return (w * e2 - e1) / (w - 1.0);
    };

    PoleSmoothnessReport rep{};
    rep.alpha0 = richardson(0);
    rep.d1 = richardson(1);
    rep.d2 = richardson(2);
    rep.d3 = richardson(3);
    rep.d4 = richardson(4);
    rep.even_ok = std::abs(rep.d2) <= 1e-5 && (k_max < 2 || std::abs(rep.d4) <= 1e-5);
    rep.odd_finite = std::isfinite(rep.d1) && std::isfinite(rep.d3);
    rep.pass = rep.even_ok && rep.odd_finite;
    return rep;
}

double reduced_bienergy(const MapPair& pair, double a, double b, int panels) {
    if (!(a < b)) throw DomainError("reduced bienergy needs a < b");
    check_pole_guard(a, 1.0);
    const double m = pair.dom.m;
    auto integrand = [&](double r) {
        Jet F = tension_F(pair, r, 0);
        double f = pair.dom.warp.jet(r, 0).value();
        return 0.5 * F.value() * F.value() * std::pow(f, m - 1);
    };
    return simpson(integrand, a, b, panels);
}

}  // namespace biharm
