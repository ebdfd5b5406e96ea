#pragma once

#include <array>
#include <cassert>
#include <ostream>

#include "biharm/errors.hpp"

namespace biharm {

/// Truncated tower of derivative values of a scalar function at a point.
///
/// coeffs[k] holds the k-th *derivative value* (not the Taylor coefficient,
/// no k! division), so every formula written in derivatives transcribes
/// literally. The order is capped at kMaxOrder = 6: the deepest consumer is
/// the second total derivative of a bienergy slot partial, which needs a
/// curve jet of order 6.
///
/// Coefficients are carried in extended precision: fourth-order residuals
/// cancel terms of size ~1e8 down to ~1e-9, which sits below the double
/// rounding floor but far above the extended one.
class Jet {
public:
    static constexpr int kMaxOrder = 6;

    Jet() : order_(0) { d_.fill(0.0L); }

    explicit Jet(int order) : order_(check_order(order)) { d_.fill(0.0L); }

    /// Jet of the constant function with value v.
    static Jet constant(long double v, int order) {
        Jet j(order);
        j.d_[0] = v;
        return j;
    }

    /// Jet of the identity map at v (derivative 1, higher derivatives 0).
    static Jet variable(long double v, int order) {
        Jet j(order);
        j.d_[0] = v;
        if (order >= 1) j.d_[1] = 1.0L;
        return j;
    }

    /// Assemble a jet from a value and the jet of its derivative
    /// (one integration step of the tower; order = d.order()+1).
    static Jet from_derivative(long double value, const Jet& d) {
        Jet j(d.order_ + 1);
        j.d_[0] = value;
        for (int k = 0; k <= d.order_; ++k) j.d_[k + 1] = d.d_[k];
        return j;
    }

    int order() const { return order_; }
    double value() const { return static_cast<double>(d_[0]); }

    /// k-th derivative value.
    double deriv(int k) const { return static_cast<double>(deriv_l(k)); }

    /// k-th derivative value at full carried precision, for assembling
    /// cancellation-heavy residual combinations.
    long double deriv_l(int k) const {
        assert(k >= 0 && k <= order_);
        return d_[static_cast<std::size_t>(k)];
    }

    long double& operator[](int k) {
        assert(k >= 0 && k <= order_);
        return d_[static_cast<std::size_t>(k)];
    }
    long double operator[](int k) const { return deriv_l(k); }

    Jet truncated(int order) const {
        assert(order <= order_);
        Jet j(order);
        for (int k = 0; k <= order; ++k) j.d_[k] = d_[k];
        return j;
    }

    /// Jet of the derivative function (tower shift; order decreases by one).
    Jet derivative() const {
        assert(order_ >= 1);
        Jet j(order_ - 1);
        for (int k = 0; k < order_; ++k) j.d_[k] = d_[k + 1];
        return j;
    }

    Jet operator-() const {
        Jet j(order_);
        for (int k = 0; k <= order_; ++k) j.d_[k] = -d_[k];
        return j;
    }

    Jet& operator+=(const Jet& o) {
        assert(o.order_ == order_);
        for (int k = 0; k <= order_; ++k) d_[k] += o.d_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        assert(o.order_ == order_);
        for (int k = 0; k <= order_; ++k) d_[k] -= o.d_[k];
        return *this;
    }
    Jet& operator+=(long double s) {
        d_[0] += s;
        return *this;
    }
    Jet& operator-=(long double s) {
        d_[0] -= s;
        return *this;
    }
    Jet& operator*=(long double s) {
        for (int k = 0; k <= order_; ++k) d_[k] *= s;
        return *this;
    }
    Jet& operator/=(long double s) { return *this *= 1.0L / s; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, long double s) { return a += s; }
    friend Jet operator+(long double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, long double s) { return a -= s; }
    friend Jet operator-(long double s, const Jet& a) { return -a + s; }
    friend Jet operator*(Jet a, long double s) { return a *= s; }
    friend Jet operator*(long double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, long double s) { return a /= s; }

    /// Leibniz product: (fg)^(k) = sum_j C(k,j) f^(j) g^(k-j).
    friend Jet operator*(const Jet& a, const Jet& b);
    /// Quotient by back-substitution through the Leibniz rule.
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator/(long double s, const Jet& b) {
        return Jet::constant(s, b.order()) / b;
    }

    friend std::ostream& operator<<(std::ostream& os, const Jet& j);

private:
    static int check_order(int order) {
        if (order < 0 || order > kMaxOrder) throw DomainError("jet order out of range [0,6]");
        return order;
    }

    int order_;
    std::array<long double, kMaxOrder + 1> d_;
};

/// Faa-di-Bruno composition. `outer` is the derivative tower of the outer
/// function with respect to its own argument, evaluated at inner.value();
/// the result is the tower of the composite along inner's variable.
Jet compose(const Jet& outer, const Jet& inner);

Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet tan(const Jet& x);
Jet asin(const Jet& x);
Jet acos(const Jet& x);
Jet atan(const Jet& x);
Jet sinh(const Jet& x);
Jet cosh(const Jet& x);
Jet tanh(const Jet& x);
Jet atanh(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);

/// x^p for real p; requires x.value() > 0.
Jet pow(const Jet& x, double p);
/// x^n for integer n; any base, except x.value()==0 with n<0.
Jet pow(const Jet& x, int n);

}  // namespace biharm
