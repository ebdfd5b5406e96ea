#include "biharm/jet.hpp"

#include <cmath>
#include <string>

namespace biharm {

namespace {

// Binomial coefficients up to kMaxOrder.
constexpr int kN = Jet::kMaxOrder + 1;
constexpr auto kBinom = [] {
    std::array<std::array<long double, kN>, kN> b{};
    for (int n = 0; n < kN; ++n) {
        b[n][0] = 1.0L;
        for (int k = 1; k <= n; ++k)
            b[n][k] = b[n - 1][k - 1] + (k <= n - 1 ? b[n - 1][k] : 0.0L);
    }
    return b;
}();

constexpr std::array<long double, kN> kFactorial = {1, 1, 2, 6, 24, 120, 720};

// Tower of an elementary function from a cyclic derivative list.
template <std::size_t M>
Jet cyclic_tower(const std::array<long double, M>& cycle, int order) {
    Jet t(order);
    for (int k = 0; k <= order; ++k) t[k] = cycle[k % M];
    return t;
}

// Tower of an inverse function whose first derivative has the closed
// algebraic form `dfirst` (a jet builder): tower[0] = value, the rest is
// the order-(n-1) jet of dfirst at the identity seed.
template <typename F>
Jet inverse_fn_tower(long double value, long double x, int order, F dfirst) {
    Jet t(order);
    t[0] = value;
    if (order >= 1) {
        Jet dj = dfirst(Jet::variable(x, order - 1));
        for (int k = 0; k < order; ++k) t[k + 1] = dj[k];
    }
    return t;
}

Jet pow_tower(long double x, long double p, int order) {
    if (x <= 0.0L) throw DomainError("pow with non-integer exponent requires positive base");
    Jet t(order);
    long double coef = 1.0L;
    for (int k = 0; k <= order; ++k) {
        t[k] = coef * std::pow(x, p - k);
        coef *= (p - k);
    }
    return t;
}

Jet pow_int_tower(long double x, int n, int order) {
    Jet t(order);
    for (int k = 0; k <= order; ++k) {
        if (n >= 0 && k > n) break;  // falling factorial hits zero
        if (x == 0.0L && n - k < 0) throw DomainError("zero base raised to negative power");
        long double coef = 1.0L;
        for (int i = 0; i < k; ++i) coef *= (n - i);
        t[k] = coef * (n - k == 0 ? 1.0L : std::pow(x, static_cast<long double>(n - k)));
    }
    return t;
}

}  // namespace

Jet operator*(const Jet& a, const Jet& b) {
    assert(a.order_ == b.order_);
    Jet j(a.order_);
    for (int k = 0; k <= a.order_; ++k) {
        long double acc = 0.0L;
        for (int i = 0; i <= k; ++i) acc += kBinom[k][i] * a.d_[i] * b.d_[k - i];
        j.d_[k] = acc;
    }
    return j;
}

Jet operator/(const Jet& a, const Jet& b) {
    assert(a.order_ == b.order_);
    if (b.d_[0] == 0.0L) throw DomainError("jet division by zero");
    Jet q(a.order_);
    for (int k = 0; k <= a.order_; ++k) {
        long double acc = a.d_[k];
        for (int i = 0; i < k; ++i) acc -= kBinom[k][i] * q.d_[i] * b.d_[k - i];
        q.d_[k] = acc / b.d_[0];
    }
    return q;
}

std::ostream& operator<<(std::ostream& os, const Jet& j) {
    os << '(';
    for (int k = 0; k <= j.order_; ++k) os << (k ? ", " : "") << static_cast<double>(j.d_[k]);
    return os << ')';
}

Jet compose(const Jet& outer, const Jet& inner) {
    assert(outer.order() == inner.order());
    const int n = inner.order();
    // Work in Taylor coefficients; the inner series minus its constant term
    // has zero constant coefficient, so truncated Horner composition is exact.
    std::array<long double, kN> a{}, b{}, c{};
    for (int k = 0; k <= n; ++k) {
        a[k] = outer.deriv_l(k) / kFactorial[k];
        b[k] = inner.deriv_l(k) / kFactorial[k];
    }
    b[0] = 0.0L;
    c[0] = a[n];
    for (int j = n - 1; j >= 0; --j) {
        std::array<long double, kN> t{};
        for (int i = 0; i <= n; ++i) {
            if (c[i] == 0.0L) continue;
            for (int k = 1; k + i <= n; ++k) t[i + k] += c[i] * b[k];
        }
        t[0] += a[j];
        c = t;
    }
    Jet out(n);
    for (int k = 0; k <= n; ++k) out[k] = c[k] * kFactorial[k];
    return out;
}

Jet sin(const Jet& x) {
    const long double v = x.deriv_l(0);
    const std::array<long double, 4> cyc = {std::sin(v), std::cos(v), -std::sin(v), -std::cos(v)};
    return compose(cyclic_tower(cyc, x.order()), x);
}

Jet cos(const Jet& x) {
    const long double v = x.deriv_l(0);
    const std::array<long double, 4> cyc = {std::cos(v), -std::sin(v), -std::cos(v), std::sin(v)};
    return compose(cyclic_tower(cyc, x.order()), x);
}

Jet tan(const Jet& x) { return sin(x) / cos(x); }

Jet sinh(const Jet& x) {
    const long double v = x.deriv_l(0);
    const std::array<long double, 2> cyc = {std::sinh(v), std::cosh(v)};
    return compose(cyclic_tower(cyc, x.order()), x);
}

Jet cosh(const Jet& x) {
    const long double v = x.deriv_l(0);
    const std::array<long double, 2> cyc = {std::cosh(v), std::sinh(v)};
    return compose(cyclic_tower(cyc, x.order()), x);
}

Jet tanh(const Jet& x) { return sinh(x) / cosh(x); }

Jet exp(const Jet& x) {
    const std::array<long double, 1> cyc = {std::exp(x.deriv_l(0))};
    return compose(cyclic_tower(cyc, x.order()), x);
}

Jet log(const Jet& x) {
    const long double v = x.deriv_l(0);
    if (v <= 0.0L) throw DomainError("ln of nonpositive value " + std::to_string(x.value()));
    Jet t(x.order());
    t[0] = std::log(v);
    long double pw = 1.0L;  // (-1)^(k-1) (k-1)! / v^k
    for (int k = 1; k <= x.order(); ++k) {
        pw /= v;
        t[k] = (k % 2 ? 1.0L : -1.0L) * kFactorial[k - 1] * pw;
    }
    return compose(t, x);
}

Jet sqrt(const Jet& x) {
    const long double v = x.deriv_l(0);
    if (v < 0.0L) throw DomainError("sqrt of negative value " + std::to_string(x.value()));
    if (v == 0.0L) {
        if (x.order() == 0) return Jet::constant(0.0L, 0);
        throw DomainError("sqrt not differentiable at 0");
    }
    return compose(pow_tower(v, 0.5L, x.order()), x);
}

Jet asin(const Jet& x) {
    const long double v = x.deriv_l(0);
    if (x.order() >= 1 && std::abs(v) >= 1.0L)
        throw DomainError("asin not differentiable at |x|>=1, x=" + std::to_string(x.value()));
    if (std::abs(v) > 1.0L) throw DomainError("asin of |x|>1");
    auto d = [](const Jet& t) { return 1.0L / sqrt(1.0L - t * t); };
    return compose(inverse_fn_tower(std::asin(v), v, x.order(), d), x);
}

Jet acos(const Jet& x) {
    const long double v = x.deriv_l(0);
    if (x.order() >= 1 && std::abs(v) >= 1.0L)
        throw DomainError("acos not differentiable at |x|>=1, x=" + std::to_string(x.value()));
    if (std::abs(v) > 1.0L) throw DomainError("acos of |x|>1");
    auto d = [](const Jet& t) { return -(1.0L / sqrt(1.0L - t * t)); };
    return compose(inverse_fn_tower(std::acos(v), v, x.order(), d), x);
}

Jet atan(const Jet& x) {
    const long double v = x.deriv_l(0);
    auto d = [](const Jet& t) { return 1.0L / (1.0L + t * t); };
    return compose(inverse_fn_tower(std::atan(v), v, x.order(), d), x);
}

Jet atanh(const Jet& x) {
    const long double v = x.deriv_l(0);
    if (std::abs(v) >= 1.0L)
        throw DomainError("atanh at |x|>=1, x=" + std::to_string(x.value()));
    auto d = [](const Jet& t) { return 1.0L / (1.0L - t * t); };
    return compose(inverse_fn_tower(std::atanh(v), v, x.order(), d), x);
}

Jet pow(const Jet& x, double p) {
    // integral exponents are delegated so any base stays legal
    if (p == static_cast<double>(static_cast<int>(p)) && std::abs(p) < 64.0)
        return pow(x, static_cast<int>(p));
    return compose(pow_tower(x.deriv_l(0), static_cast<long double>(p), x.order()), x);
}

Jet pow(const Jet& x, int n) { return compose(pow_int_tower(x.deriv_l(0), n, x.order()), x); }

}  // namespace biharm
