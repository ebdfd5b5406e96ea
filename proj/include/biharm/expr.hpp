#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biharm/jet.hpp"

namespace biharm {

enum class UnaryFn { Sin, Cos, Tan, Asin, Acos, Atan, Sinh, Cosh, Tanh, Atanh, Exp, Ln, Sqrt };

std::string_view unary_fn_name(UnaryFn fn);

/// Immutable tree of a parsed mathematical expression.
///
/// Grammar (EBNF, whitespace insignificant; pi and e are reserved constants):
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := base ("^" base)?
///   base   := NUMBER | NAME | NAME "(" expr ")" | "(" expr ")" | "-" base
///
/// Exponents must be constant subexpressions; integer exponents admit any
/// base, non-integer exponents require a positive base at evaluation time.
class Expr {
public:
    enum class Kind { Constant, Symbol, Unary, Binary, Pow };
    enum class BinOp { Add, Sub, Mul, Div };

    struct Node {
        Kind kind;
        double constant = 0.0;                  // Constant
        std::string name;                       // Symbol
        UnaryFn fn = UnaryFn::Sin;              // Unary
        BinOp op = BinOp::Add;                  // Binary
        std::shared_ptr<const Node> lhs, rhs;   // children (Unary uses lhs)
        double expo = 0.0;                      // Pow
        bool expo_is_int = false;
    };

    Expr() = default;
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    bool empty() const { return root_ == nullptr; }
    const Node& root() const { return *root_; }

    /// Distinct free names, sorted.
    std::vector<std::string> symbols() const;
    /// Number of symbol leaves (with multiplicity).
    int symbol_leaf_count() const;

    std::string to_string() const;

private:
    std::shared_ptr<const Node> root_;
};

/// Parse `src` against the grammar above. Free names must come from
/// `symbols`; violations raise ParseError with the byte offset and the
/// offending name.
Expr parse_expr(std::string_view src, std::span<const std::string> symbols);

/// Bindings for evaluation: order-0 jets broadcast as constants, all other
/// jets must carry the evaluation order.
using JetBindings = std::map<std::string, Jet, std::less<>>;

/// Evaluate to a jet of the given order; coeffs[k] is the exact k-th
/// derivative along whichever bound jet carries derivative structure.
Jet jet_eval(const Expr& e, const JetBindings& bindings, int order);

/// Convenience: bind `var` as the differentiation variable at x, everything
/// else as real parameters.
Jet jet_eval(const Expr& e, std::string_view var, long double x,
             const std::map<std::string, double>& params, int order);

/// Faa-di-Bruno composition of a one-variable expression with an inner jet:
/// coeffs[k] = d^k/dr^k [outer(inner(r))].
Jet jet_compose(const Expr& outer, const Jet& inner);

// ---------------------------------------------------------------------------
// Generic evaluation over any scalar type with jet-like arithmetic. Used to
// drive the same expression trees with plain jets and with slot-perturbation
// duals (see variational.hpp).
// ---------------------------------------------------------------------------

template <class S, class SymbolFn, class ConstFn>
S eval_generic(const Expr::Node& n, const SymbolFn& symbol, const ConstFn& konst) {
    using Kind = Expr::Kind;
    switch (n.kind) {
        case Kind::Constant:
            return konst(n.constant);
        case Kind::Symbol:
            return symbol(n.name);
        case Kind::Binary: {
            S a = eval_generic<S>(*n.lhs, symbol, konst);
            S b = eval_generic<S>(*n.rhs, symbol, konst);
            switch (n.op) {
                case Expr::BinOp::Add: return a + b;
                case Expr::BinOp::Sub: return a - b;
                case Expr::BinOp::Mul: return a * b;
                case Expr::BinOp::Div: return a / b;
            }
            throw Error("unreachable binary op");
        }
        case Kind::Pow: {
            S b = eval_generic<S>(*n.lhs, symbol, konst);
            if (n.expo_is_int) return pow(b, static_cast<int>(n.expo));
            return pow(b, n.expo);
        }
        case Kind::Unary: {
            S a = eval_generic<S>(*n.lhs, symbol, konst);
            switch (n.fn) {
                case UnaryFn::Sin: return sin(a);
                case UnaryFn::Cos: return cos(a);
                case UnaryFn::Tan: return tan(a);
                case UnaryFn::Asin: return asin(a);
                case UnaryFn::Acos: return acos(a);
                case UnaryFn::Atan: return atan(a);
                case UnaryFn::Sinh: return sinh(a);
                case UnaryFn::Cosh: return cosh(a);
                case UnaryFn::Tanh: return tanh(a);
                case UnaryFn::Atanh: return atanh(a);
                case UnaryFn::Exp: return exp(a);
                case UnaryFn::Ln: return log(a);
                case UnaryFn::Sqrt: return sqrt(a);
            }
            throw Error("unreachable unary fn");
        }
    }
    throw Error("unreachable node kind");
}

}  // namespace biharm
