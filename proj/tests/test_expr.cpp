#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "biharm/expr.hpp"

using namespace biharm;
using std::numbers::pi;

namespace {
const std::vector<std::string> kR = {"r"};
const std::vector<std::string> kRC = {"r", "c"};
}  // namespace

TEST_CASE("parse well-formed input") {
    Expr e = parse_expr("sin(r)^2 + 1/r", kR);
    CHECK(e.symbol_leaf_count() == 2);
    CHECK(e.symbols() == std::vector<std::string>{"r"});
}

TEST_CASE("parse with bound parameter") {
    Expr e = parse_expr("2*atan(c^2*r)", kRC);
    auto syms = e.symbols();
    CHECK(syms == std::vector<std::string>{"c", "r"});
}

TEST_CASE("syntax error carries byte offset") {
    try {
        parse_expr("sin(", kR);
        FAIL("expected ParseError");
    } catch (const ParseError& err) {
        CHECK(err.offset == 4);
    }
}

TEST_CASE("unknown names are rejected with the offender") {
    try {
        parse_expr("r + q", kR);
        FAIL("expected ParseError");
    } catch (const ParseError& err) {
        CHECK(std::string(err.what()).find("'q'") != std::string::npos);
        CHECK(err.offset == 4);
    }
    CHECK_THROWS_AS(parse_expr("foo(r)", kR), ParseError);
    CHECK_THROWS_AS(parse_expr("", kR), ParseError);
    CHECK_THROWS_AS(parse_expr("r^x", {kRC.begin(), 1}), ParseError);
}

TEST_CASE("reserved constants") {
    Expr e = parse_expr("sin(pi/2) + e", kR);
    Jet j = jet_eval(e, {}, 0);
    CHECK(j.value() == doctest::Approx(1.0 + std::numbers::e).epsilon(1e-15));
}

TEST_CASE("jet_eval examples") {
    Jet p = jet_eval(parse_expr("r^3", kR), "r", 2.0, {}, 4);
    CHECK(p.deriv(0) == 8.0);
    CHECK(p.deriv(1) == 12.0);
    CHECK(p.deriv(2) == 12.0);
    CHECK(p.deriv(3) == 6.0);
    CHECK(p.deriv(4) == 0.0);

    Jet s = jet_eval(parse_expr("sin(r)", kR), "r", 0.0, {}, 3);
    CHECK(s.deriv(0) == 0.0);
    CHECK(s.deriv(1) == 1.0);
    CHECK(s.deriv(2) == 0.0);
    CHECK(s.deriv(3) == -1.0);

    Jet a = jet_eval(parse_expr("atan(r)", kR), "r", 1.0, {}, 2);
    CHECK(a.deriv(0) == doctest::Approx(pi / 4).epsilon(1e-15));
    CHECK(a.deriv(1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(a.deriv(2) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("jet_eval domain errors") {
    CHECK_THROWS_AS(jet_eval(parse_expr("ln(r)", kR), "r", -2.0, {}, 1), DomainError);
    CHECK_THROWS_AS(jet_eval(parse_expr("atanh(r)", kR), "r", 1.5, {}, 1), DomainError);
    CHECK_THROWS_AS(jet_eval(parse_expr("r", kR), JetBindings{}, 1), DomainError);
}

TEST_CASE("jet_compose examples") {
    // sin composed with the identity-like jet
    Jet id(3);
    id[0] = 0.0;
    id[1] = 1.0;
    Jet s = jet_compose(parse_expr("sin(a)", {{"a"}}), id);
    CHECK(s.deriv(0) == 0.0);
    CHECK(s.deriv(1) == 1.0);
    CHECK(s.deriv(2) == 0.0);
    CHECK(s.deriv(3) == -1.0);

    // a^2 against the brute-force chain rule: (alpha^2)'' = 2 a'^2 + 2 a a'' = 34
    Jet in(2);
    in[0] = 2.0;
    in[1] = 3.0;
    in[2] = 4.0;
    Jet sq = jet_compose(parse_expr("a^2", {{"a"}}), in);
    CHECK(sq.deriv(0) == 4.0);
    CHECK(sq.deriv(1) == 12.0);
    CHECK(sq.deriv(2) == 34.0);

    // identity passes the jet through
    Jet j(4);
    j[0] = 0.3;
    j[1] = -1.0;
    j[2] = 0.25;
    j[3] = 2.0;
    j[4] = -0.5;
    Jet out = jet_compose(parse_expr("a", {{"a"}}), j);
    for (int k = 0; k <= 4; ++k) CHECK(out.deriv(k) == j.deriv(k));
}

// ---------------------------------------------------------------------------
// Random expression generator for the property tests. Functions are applied
// through range-compressing wrappers so evaluation stays inside every domain.
// ---------------------------------------------------------------------------
namespace {

struct RandomExpr {
    std::mt19937 rng;
    explicit RandomExpr(unsigned seed) : rng(seed) {}

    std::string gen(int depth) {
        std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
        switch (pick(rng)) {
            case 0: {
                std::uniform_real_distribution<double> U(0.25, 3.0);
                char buf[32];
                snprintf(buf, sizeof buf, "%.6f", U(rng));
                return buf;
            }
            case 1: return "r";
            case 2: return "(" + gen(depth - 1) + "+" + gen(depth - 1) + ")";
            case 3: return "(" + gen(depth - 1) + "*" + gen(depth - 1) + ")";
            case 4: {
                // shift the divisor away from zero
                return "(" + gen(depth - 1) + "/(3+sin(" + gen(depth - 1) + ")))";
            }
            case 5: {
                const char* fns[] = {"sin", "cos", "tanh", "exp", "atan", "sinh"};
                std::uniform_int_distribution<int> f(0, 5);
                // tanh keeps the argument bounded so exp/sinh stay tame
                return std::string(fns[f(rng)]) + "(tanh(" + gen(depth - 1) + "))";
            }
            default: {
                std::uniform_int_distribution<int> p(2, 3);
                return "(1+cosh(tanh(" + gen(depth - 1) + ")))^" + std::to_string(p(rng));
            }
        }
    }
};

double eval_value(const Expr& e, double r) { return jet_eval(e, "r", r, {}, 0).value(); }

}  // namespace

TEST_CASE("property: jet coefficients 1..3 match central finite differences") {
    // Step sizes grow with the difference order: a third central difference at
    // step 1e-5 sits below double-precision noise (eps/h^3 ~ 0.1), so orders 2
    // and 3 use the steps where truncation and rounding balance.
    RandomExpr gen(2024);
    std::uniform_real_distribution<double> X(0.3, 2.0);
    int tested = 0;
    while (tested < 1000) {
        Expr e = parse_expr(gen.gen(3), kR);
        double x = X(gen.rng);
        Jet j = jet_eval(e, "r", x, {}, 5);
        double f0 = eval_value(e, x);

        const double h1 = 1e-5;
        double d1 = (eval_value(e, x + h1) - eval_value(e, x - h1)) / (2 * h1);
        double tol1 = 1e-5 * std::max({1.0, std::abs(j.deriv(1)), std::abs(f0)}) +
                      std::abs(j.deriv(3)) * h1 * h1;
        CHECK(std::abs(j.deriv(1) - d1) <= tol1);

        const double h2 = 1e-4;
        double d2 = (eval_value(e, x + h2) - 2 * f0 + eval_value(e, x - h2)) / (h2 * h2);
        double tol2 = 1e-5 * std::max({1.0, std::abs(j.deriv(2)), std::abs(f0)}) +
                      std::abs(j.deriv(4)) * h2 * h2;
        CHECK(std::abs(j.deriv(2) - d2) <= tol2);

        const double h3 = 1e-3;
        double d3 = (eval_value(e, x + 2 * h3) - 2 * eval_value(e, x + h3) +
                     2 * eval_value(e, x - h3) - eval_value(e, x - 2 * h3)) /
                    (2 * h3 * h3 * h3);
        double tol3 = 1e-4 * std::max({1.0, std::abs(j.deriv(3)), std::abs(f0)}) +
                      std::abs(j.deriv(5)) * h3 * h3;
        CHECK(std::abs(j.deriv(3) - d3) <= tol3);
        ++tested;
    }
}

TEST_CASE("property: jet_compose agrees with syntactic composition") {
    // f(g(r)) via jet_compose(f, jet_eval(g)) vs parsing the composed text
    const char* outers[] = {"sin(u)", "atan(u)", "(1+u*u)^2", "exp(tanh(u))", "cosh(u)", "u"};
    const char* inners[] = {"tanh(r)", "sin(r)+cos(2*r)", "r^2/(1+r)", "atan(r)*r"};
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> X(0.2, 1.8);
    for (const char* fo : outers)
        for (const char* fi : inners) {
            Expr f = parse_expr(fo, {{"u"}});
            Expr g = parse_expr(fi, kR);
            std::string composed(fo);
            for (std::size_t p = composed.find('u'); p != std::string::npos;
                 p = composed.find('u', p)) {
                composed.replace(p, 1, "(" + std::string(fi) + ")");
                p += std::string(fi).size() + 2;
            }
            Expr fg = parse_expr(composed, kR);
            for (int trial = 0; trial < 20; ++trial) {
                double x = X(rng);
                Jet inner = jet_eval(g, "r", x, {}, 5);
                Jet via_compose = jet_compose(f, inner);
                Jet direct = jet_eval(fg, "r", x, {}, 5);
                for (int k = 0; k <= 5; ++k) {
                    double scale = std::max(1.0, std::abs(direct.deriv(k)));
                    CHECK(std::abs(via_compose.deriv(k) - direct.deriv(k)) <= 1e-12 * scale);
                }
            }
        }
}

TEST_CASE("grammar details") {
    // '-' binds tighter than '^': -2^2 is (-2)^2
    CHECK(jet_eval(parse_expr("-2^2", kR), "r", 1.0, {}, 0).value() == 4.0);
    // non-integer exponent via parenthesized constant expression
    CHECK(jet_eval(parse_expr("r^(1/2)", kR), "r", 4.0, {}, 0).value() ==
          doctest::Approx(2.0).epsilon(1e-15));
    // whitespace insignificant
    CHECK(jet_eval(parse_expr("  1 +  2 * r ", kR), "r", 3.0, {}, 0).value() == 7.0);
    // unbalanced trailing input
    CHECK_THROWS_AS(parse_expr("1 + 2)", kR), ParseError);
}
