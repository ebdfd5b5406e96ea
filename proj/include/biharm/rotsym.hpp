#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "biharm/model.hpp"

namespace biharm {

/// Radial profile alpha(r) of a rotationally symmetric map, exposed as a
/// jet evaluator so closed forms and ODE trajectories share one interface.
class RadialProfile {
public:
    using JetFn = std::function<Jet(double r, int order)>;

    RadialProfile() = default;

    /// Closed-form profile from an expression in r with bound parameters.
    /// When zero_at_pole is set, |alpha(1e-6)| <= 1e-4 is enforced.
    static RadialProfile from_expr(const Expr& form, const std::map<std::string, double>& params,
                                   bool zero_at_pole = true);

    /// Profile defined by the first-order ODE alpha' = rhs(r, alpha) through
    /// the point (r0, alpha0); higher derivatives come from differentiating
    /// the ODE, values from dense integration. rhs must accept jets.
    static RadialProfile from_ode(std::function<Jet(const Jet& r, const Jet& alpha)> rhs,
                                  double r0, double alpha0, double r_lo, double r_hi,
                                  bool zero_at_pole = false);

    /// Profile backed by an arbitrary jet evaluator (used by tests with
    /// synthetic towers).
    static RadialProfile from_jet_fn(JetFn fn, bool zero_at_pole = false);

    Jet jet(double r, int order) const;
    bool zero_at_pole() const { return zero_at_pole_; }

private:
    JetFn fn_;
    bool zero_at_pole_ = false;
};

/// A rotationally symmetric map phi_alpha: M_f^m -> M'_h^m.
/// Both models must share the dimension m.
struct MapPair {
    Model dom;
    Model cod;
    RadialProfile profile;
};

MapPair make_map_pair(Model dom, Model cod, RadialProfile profile);

/// Reduced tension scalar F = alpha'' + (m-1)(f'/f) alpha'
///                            - (m-1) h(alpha) h'(alpha) / f^2,
/// returned as a jet of the requested depth (depth 2 yields F, F', F'').
Jet tension_F(const MapPair& pair, double r, int depth);

/// Left side of the second-order system in F:
/// F'' + (m-1)(f f' F' - h'(alpha)^2 F)/f^2 - (m-1) h(alpha) h''(alpha) F/f^2.
/// Zero iff phi_alpha is biharmonic at r.
double bitension_residual_F(const MapPair& pair, double r);

/// Literal evaluation of the expanded fourth-order biharmonicity display;
/// equals f^(m-1) times bitension_residual_F.
double bitension_residual_expanded(const MapPair& pair, double r);

/// alpha' - h(alpha)/f; zero iff conformal at r.
double conformality_residual(const MapPair& pair, double r);

/// Biharmonicity residual for a conformal map, pointwise in alpha (no
/// profile derivatives enter). Uses the dedicated m=4 display when m=4;
/// the two agree identically there.
double conformal_biharmonic_residual(const Model& dom, const Model& cod, double r, double alpha);

namespace detail {
// Both displays separately, for the cross-check of their m=4 agreement.
double conformal_biharmonic_general(int m, const Model& dom, const Model& cod, double r,
                                    double alpha);
double conformal_biharmonic_m4(const Model& dom, const Model& cod, double r, double alpha);
}  // namespace detail

/// h^2 h''' + h'(2 + h h'') - 2 h'^3 evaluated at alpha.
double h_condition_residual(const Model& cod, double alpha);

/// Prime integral h^2 (1 - h'^2 + h h'') of the preceding condition.
double prime_integral(const Model& cod, double alpha);

enum class MapClass { Harmonic, ProperBiharmonic, None };

/// One row of the classification of conformal biharmonic diffeomorphisms
/// between 4-dimensional constant-curvature models.
struct CatalogEntry {
    std::string case_id;            // "1A" .. "3C"
    std::string dom_desc;           // warping function of the domain
    std::string cod_desc;           // warping function of the codomain
    std::string profile_form;       // e.g. "2*atan(c^2*r)", empty when none
    MapClass classification;

    /// Instantiate the models and profile at a concrete c > 0.
    MapPair instantiate(double c) const;
    /// Largest admissible radius for that c (infinity when unbounded,
    /// 1/c^2 for case 1C, pi for case 2B).
    double r_bound(double c) const;
};

/// All nine rows (Cases 1A-3C).
std::vector<CatalogEntry> classification_catalog();
const CatalogEntry& catalog_lookup(int case_number, char letter);

/// Pole smoothness estimates per the even/odd derivative conditions at 0.
struct PoleSmoothnessReport {
    double alpha0;        // extrapolated alpha(0)
    double d1, d2, d3, d4;  // extrapolated derivatives at 0
    bool even_ok;         // |alpha''(0)|, |alpha''''(0)| <= 1e-5 (as requested by k_max)
    bool odd_finite;
    bool pass;
};

/// Richardson-extrapolated jet estimates at r=0; checks alpha^(2k)(0)=0 for
/// k=1..k_max and finiteness of the odd tower.
PoleSmoothnessReport pole_smoothness_check(const RadialProfile& profile, int k_max = 2);

/// Composite-Simpson value of (1/2) Int F^2 f^(m-1) dr over [a, b].
double reduced_bienergy(const MapPair& pair, double a, double b, int panels);

}  // namespace biharm
