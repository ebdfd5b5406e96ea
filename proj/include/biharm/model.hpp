#pragma once

#include <optional>
#include <string>

#include "biharm/expr.hpp"
#include "biharm/jet.hpp"

namespace biharm {

/// Radial scale factor f(r) of a model (S^{m-1} x [0,inf), f^2 g + dr^2).
///
/// Builtins cover the constant-curvature cases: euclidean f(r)=r,
/// sphere(d) f(r)=sin(d r)/d on [0, pi/d] with a closing pole, and
/// hyperbolic(c) f(r)=sinh(c r)/c. Arbitrary warps come from parsed
/// expressions in r on [0, r_max).
class WarpingFunction {
public:
    static WarpingFunction euclidean();
    static WarpingFunction sphere(double d);
    static WarpingFunction hyperbolic(double c);
    /// Expression in a single radial variable (any name; r is conventional).
    static WarpingFunction from_expr(Expr expr, double r_max);

    /// Derivative tower of f at r. Works for any r in the domain interior;
    /// r is treated as the differentiation variable.
    Jet jet(long double r, int order) const;

    double r_max() const { return r_max_; }
    bool has_closing_pole() const { return closing_pole_; }
    std::string describe() const;

private:
    enum class Tag { Euclidean, Sphere, Hyperbolic, Expression };
    WarpingFunction(Tag tag, double param, std::optional<Expr> expr, double r_max,
                    bool closing_pole)
        : tag_(tag), param_(param), expr_(std::move(expr)), r_max_(r_max),
          closing_pole_(closing_pole) {}

    Tag tag_;
    double param_ = 0.0;
    std::optional<Expr> expr_;
    std::string var_ = "r";
    double r_max_;
    bool closing_pole_;
};

/// A model M_f^m(o): dimension plus warping function.
struct Model {
    int m;
    WarpingFunction warp;
};

/// Validates the pole conditions f(0)=0, f'(0)=1, f''(0)=0, f''''(0)=0
/// (within 1e-6, via jets at r=1e-6 extrapolated back to 0), positivity on a
/// sample grid, and the closing-pole conditions f(b)=0, f'(b)=-1 when the
/// domain closes. Throws ValidationError naming the violated condition.
Model make_model(int m, WarpingFunction warp);

/// Radial curvature K(r) = -f''(r)/f(r).
double radial_curvature(const Model& model, double r);

}  // namespace biharm
