#include "biharm/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace biharm {

namespace {

constexpr double kPoleTol = 1e-6;
constexpr double kPoleEps = 1e-6;

// Taylor back-extrapolation of the k-th derivative from a jet at eps to the
// endpoint eps+delta (delta = -eps for the origin pole).
double extrapolate(const Jet& j, int k, double delta) {
    double acc = 0.0;
    double pw = 1.0;
    double fact = 1.0;
    for (int i = 0; k + i <= j.order(); ++i) {
        if (i > 0) {
            pw *= delta;
            fact *= i;
        }
        acc += j.deriv(k + i) * pw / fact;
    }
    return acc;
}

void require(bool ok, const std::string& condition, double got) {
    if (!ok) {
        std::ostringstream os;
        os << "model validation failed: " << condition << " (got " << got << ")";
        throw ValidationError(os.str());
    }
}

}  // namespace

WarpingFunction WarpingFunction::euclidean() {
    return WarpingFunction(Tag::Euclidean, 0.0, std::nullopt,
                           std::numeric_limits<double>::infinity(), false);
}

WarpingFunction WarpingFunction::sphere(double d) {
    if (d <= 0.0) throw ValidationError("sphere curvature parameter must be positive");
    return WarpingFunction(Tag::Sphere, d, std::nullopt, std::numbers::pi / d, true);
}

WarpingFunction WarpingFunction::hyperbolic(double c) {
    if (c <= 0.0) throw ValidationError("hyperbolic curvature parameter must be positive");
    return WarpingFunction(Tag::Hyperbolic, c, std::nullopt,
                           std::numeric_limits<double>::infinity(), false);
}

WarpingFunction WarpingFunction::from_expr(Expr expr, double r_max) {
    auto syms = expr.symbols();
    if (syms.size() > 1)
        throw ValidationError("warping expression must use a single radial variable");
    WarpingFunction w(Tag::Expression, 0.0, std::move(expr), r_max, false);
    if (!syms.empty()) w.var_ = syms.front();
    return w;
}

Jet WarpingFunction::jet(long double r, int order) const {
    switch (tag_) {
        case Tag::Euclidean:
            return Jet::variable(r, order);
        case Tag::Sphere:
            return sin(Jet::variable(r, order) * param_) / param_;
        case Tag::Hyperbolic:
            return sinh(Jet::variable(r, order) * param_) / param_;
        case Tag::Expression:
            return jet_eval(*expr_, var_, r, {}, order);
    }
    throw Error("unreachable warp tag");
}

std::string WarpingFunction::describe() const {
    std::ostringstream os;
    switch (tag_) {
        case Tag::Euclidean: os << "r"; break;
        case Tag::Sphere: os << "sin(" << param_ << "*r)/" << param_; break;
        case Tag::Hyperbolic: os << "sinh(" << param_ << "*r)/" << param_; break;
        case Tag::Expression: os << expr_->to_string(); break;
    }
    return os.str();
}

Model make_model(int m, WarpingFunction warp) {
    if (m < 2) throw ValidationError("model dimension must satisfy m >= 2");

    Jet j = warp.jet(kPoleEps, Jet::kMaxOrder);
    double f0 = extrapolate(j, 0, -kPoleEps);
    double f1 = extrapolate(j, 1, -kPoleEps);
    double f2 = extrapolate(j, 2, -kPoleEps);
    double f4 = extrapolate(j, 4, -kPoleEps);
    require(std::abs(f0) <= kPoleTol, "f(0)=0", f0);
    require(std::abs(f1 - 1.0) <= kPoleTol, "f'(0)=1", f1);
    require(std::abs(f2) <= kPoleTol, "f''(0)=0", f2);
    require(std::abs(f4) <= kPoleTol, "f''''(0)=0", f4);

    const double hi = std::isinf(warp.r_max()) ? 10.0 : warp.r_max();
    for (int i = 1; i < 100; ++i) {
        double r = hi * i / 100.0;
        double v = warp.jet(r, 0).value();
        require(v > 0.0, "f(r)>0 on the open interior", v);
    }

    if (warp.has_closing_pole()) {
        const double b = warp.r_max();
        Jet jb = warp.jet(b - kPoleEps, Jet::kMaxOrder);
        double fb = extrapolate(jb, 0, kPoleEps);
        double fb1 = extrapolate(jb, 1, kPoleEps);
        require(std::abs(fb) <= kPoleTol, "f(b)=0", fb);
        require(std::abs(fb1 + 1.0) <= kPoleTol, "f'(b)=-1", fb1);
    }

    return Model{m, std::move(warp)};
}

double radial_curvature(const Model& model, double r) {
    if (!(r > 0.0) || r >= model.warp.r_max())
        throw DomainError("radial curvature needs r in the open domain interior");
    Jet f = model.warp.jet(r, 2);
    if (std::abs(f.value()) < 1e-12)
        throw DomainError("radial curvature division by near-zero f(r)");
    return -f.deriv(2) / f.value();
}

}  // namespace biharm
