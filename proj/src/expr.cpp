#include "biharm/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace biharm {

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

const std::map<std::string_view, UnaryFn> kFunctions = {
    {"sin", UnaryFn::Sin},   {"cos", UnaryFn::Cos},   {"tan", UnaryFn::Tan},
    {"asin", UnaryFn::Asin}, {"acos", UnaryFn::Acos}, {"atan", UnaryFn::Atan},
    {"sinh", UnaryFn::Sinh}, {"cosh", UnaryFn::Cosh}, {"tanh", UnaryFn::Tanh},
    {"atanh", UnaryFn::Atanh}, {"exp", UnaryFn::Exp}, {"ln", UnaryFn::Ln},
    {"sqrt", UnaryFn::Sqrt}};

NodePtr make_constant(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Expr::Kind::Constant;
    n->constant = v;
    return n;
}

NodePtr make_symbol(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Expr::Kind::Symbol;
    n->name = std::move(name);
    return n;
}

NodePtr make_binary(Expr::BinOp op, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->kind = Expr::Kind::Binary;
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

NodePtr make_unary(UnaryFn fn, NodePtr child) {
    auto n = std::make_shared<Node>();
    n->kind = Expr::Kind::Unary;
    n->fn = fn;
    n->lhs = std::move(child);
    return n;
}

NodePtr make_pow(NodePtr base, double expo) {
    auto n = std::make_shared<Node>();
    n->kind = Expr::Kind::Pow;
    n->lhs = std::move(base);
    n->expo = expo;
    n->expo_is_int = std::abs(expo - std::round(expo)) < 1e-12 && std::abs(expo) < 2147483647.0;
    if (n->expo_is_int) n->expo = std::round(expo);
    return n;
}

void collect_symbols(const Node& n, std::set<std::string>& out) {
    if (n.kind == Expr::Kind::Symbol) out.insert(n.name);
    if (n.lhs) collect_symbols(*n.lhs, out);
    if (n.rhs) collect_symbols(*n.rhs, out);
}

class Parser {
public:
    Parser(std::string_view src, std::span<const std::string> symbols)
        : src_(src), symbols_(symbols) {}

    NodePtr parse() {
        if (src_.empty()) throw ParseError("empty expression", 0);
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size())
            throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = make_binary(Expr::BinOp::Add, lhs, parse_term());
            else if (accept('-'))
                lhs = make_binary(Expr::BinOp::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (accept('*'))
                lhs = make_binary(Expr::BinOp::Mul, lhs, parse_factor());
            else if (accept('/'))
                lhs = make_binary(Expr::BinOp::Div, lhs, parse_factor());
            else
                return lhs;
        }
    }

    NodePtr parse_factor() {
        NodePtr base = parse_base();
        skip_ws();
        std::size_t caret = pos_;
        if (accept('^')) {
            NodePtr ex = parse_base();
            std::set<std::string> free;
            collect_symbols(*ex, free);
            if (!free.empty())
                throw ParseError("exponent must be constant, found name '" + *free.begin() + "'",
                                 caret);
            Jet v = jet_eval(Expr(ex), {}, 0);
            return make_pow(base, v.value());
        }
        return base;
    }

    NodePtr parse_base() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (c == '-') {
            ++pos_;
            NodePtr child = parse_base();
            // fold negation of literals so "-2" is a plain constant
            if (child->kind == Expr::Kind::Constant) return make_constant(-child->constant);
            return make_binary(Expr::BinOp::Sub, make_constant(0.0), child);
        }
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    NodePtr parse_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // 'e' belonged to something else
            }
        }
        double v = 0.0;
        auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (res.ec != std::errc{} || res.ptr != src_.data() + pos_)
            throw ParseError("malformed number", start);
        return make_constant(v);
    }

    NodePtr parse_name() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_'))
            ++pos_;
        std::string name(src_.substr(start, pos_ - start));
        if (peek() == '(') {
            auto it = kFunctions.find(name);
            if (it == kFunctions.end())
                throw ParseError("unknown function '" + name + "'", start);
            accept('(');
            NodePtr arg = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return make_unary(it->second, arg);
        }
        if (name == "pi") return make_constant(std::numbers::pi);
        if (name == "e") return make_constant(std::numbers::e);
        if (std::find(symbols_.begin(), symbols_.end(), name) == symbols_.end())
            throw ParseError("unknown name '" + name + "'", start);
        return make_symbol(std::move(name));
    }

    std::string_view src_;
    std::span<const std::string> symbols_;
    std::size_t pos_ = 0;
};

void node_to_string(const Node& n, std::ostream& os) {
    switch (n.kind) {
        case Expr::Kind::Constant: os << n.constant; return;
        case Expr::Kind::Symbol: os << n.name; return;
        case Expr::Kind::Unary:
            os << unary_fn_name(n.fn) << '(';
            node_to_string(*n.lhs, os);
            os << ')';
            return;
        case Expr::Kind::Pow:
            os << '(';
            node_to_string(*n.lhs, os);
            os << ")^" << n.expo;
            return;
        case Expr::Kind::Binary: {
            const char* op = n.op == Expr::BinOp::Add   ? "+"
                             : n.op == Expr::BinOp::Sub ? "-"
                             : n.op == Expr::BinOp::Mul ? "*"
                                                        : "/";
            os << '(';
            node_to_string(*n.lhs, os);
            os << op;
            node_to_string(*n.rhs, os);
            os << ')';
            return;
        }
    }
}

}  // namespace

std::string_view unary_fn_name(UnaryFn fn) {
    for (const auto& [name, f] : kFunctions)
        if (f == fn) return name;
    return "?";
}

std::vector<std::string> Expr::symbols() const {
    std::set<std::string> s;
    if (root_) collect_symbols(*root_, s);
    return {s.begin(), s.end()};
}

int Expr::symbol_leaf_count() const {
    int count = 0;
    auto walk = [&](auto&& self, const Node& n) -> void {
        if (n.kind == Kind::Symbol) ++count;
        if (n.lhs) self(self, *n.lhs);
        if (n.rhs) self(self, *n.rhs);
    };
    if (root_) walk(walk, *root_);
    return count;
}

std::string Expr::to_string() const {
    if (!root_) return "";
    std::ostringstream os;
    node_to_string(*root_, os);
    return os.str();
}

Expr parse_expr(std::string_view src, std::span<const std::string> symbols) {
    return Expr(Parser(src, symbols).parse());
}

Jet jet_eval(const Expr& e, const JetBindings& bindings, int order) {
    if (e.empty()) throw Error("evaluation of empty expression");
    auto symbol = [&](const std::string& name) -> Jet {
        auto it = bindings.find(name);
        if (it == bindings.end()) throw DomainError("unbound name '" + name + "'");
        const Jet& j = it->second;
        if (j.order() == order) return j;
        if (j.order() == 0) return Jet::constant(j.value(), order);
        throw DomainError("binding for '" + name + "' has mismatched jet order");
    };
    auto konst = [&](double v) { return Jet::constant(v, order); };
    return eval_generic<Jet>(e.root(), symbol, konst);
}

Jet jet_eval(const Expr& e, std::string_view var, long double x,
             const std::map<std::string, double>& params, int order) {
    JetBindings b;
    b.emplace(std::string(var), Jet::variable(x, order));
    for (const auto& [name, v] : params) b.emplace(name, Jet::constant(v, order));
    return jet_eval(e, b, order);
}

Jet jet_compose(const Expr& outer, const Jet& inner) {
    auto syms = outer.symbols();
    if (syms.size() != 1) throw DomainError("jet_compose requires exactly one free name");
    JetBindings b;
    b.emplace(syms.front(), Jet::variable(inner.value(), inner.order()));
    Jet tower = jet_eval(outer, b, inner.order());
    return compose(tower, inner);
}

}  // namespace biharm
