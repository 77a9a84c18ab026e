#include "aslo/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>

#include "aslo/errors.hpp"

namespace aslo::expr {

struct Node {
    enum class Op { number, variable, neg, add, sub, mul, div, pow, call };
    Op op = Op::number;
    double value = 0.0;
    std::size_t slot = 0;
    std::string fn;
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

const std::map<std::string, std::size_t>& arities() {
    static const std::map<std::string, std::size_t> table = {
        {"sin", 1},  {"cos", 1},  {"tan", 1},  {"exp", 1},  {"log", 1},   {"sqrt", 1},  {"abs", 1},
        {"tanh", 1}, {"atan", 1}, {"sign", 1}, {"atan2", 2}, {"min", 2},  {"max", 2},  {"pow", 2},
    };
    return table;
}

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

    NodePtr parse() {
        NodePtr n = expression();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("expression '" + text_ + "': " + what + " at offset " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr binary(Node::Op op, NodePtr a, NodePtr b) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->args = {std::move(a), std::move(b)};
        return n;
    }

    NodePtr expression() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = binary(Node::Op::add, lhs, term());
            else if (accept('-')) lhs = binary(Node::Op::sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = binary(Node::Op::mul, lhs, unary());
            else if (accept('/')) lhs = binary(Node::Op::div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) {
            auto n = std::make_shared<Node>();
            n->op = Node::Op::neg;
            n->args = {unary()};
            return n;
        }
        if (accept('+')) return unary();
        NodePtr base = atom();
        if (accept('^')) return binary(Node::Op::pow, base, unary());
        return base;
    }

    NodePtr atom() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end");
        const char c = text_[pos_];
        if (accept('(')) {
            NodePtr inner = expression();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        auto n = std::make_shared<Node>();
        n->value = v;
        return n;
    }

    NodePtr name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string id = text_.substr(start, pos_ - start);
        if (accept('(')) {
            auto it = arities().find(id);
            if (it == arities().end()) fail("unknown function '" + id + "'");
            auto n = std::make_shared<Node>();
            n->op = Node::Op::call;
            n->fn = id;
            n->args.push_back(expression());
            while (accept(',')) n->args.push_back(expression());
            if (!accept(')')) fail("expected ')' after arguments of '" + id + "'");
            if (n->args.size() != it->second)
                fail("'" + id + "' takes " + std::to_string(it->second) + " argument(s)");
            return n;
        }
        auto n = std::make_shared<Node>();
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            if (vars_[k] == id) {
                n->op = Node::Op::variable;
                n->slot = k;
                return n;
            }
        }
        if (id == "pi") {
            n->value = std::numbers::pi;
            return n;
        }
        fail("unknown variable '" + id + "'");
    }

    const std::string& text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

double call(const std::string& fn, double a, double b) {
    if (fn == "sin") return std::sin(a);
    if (fn == "cos") return std::cos(a);
    if (fn == "tan") return std::tan(a);
    if (fn == "exp") return std::exp(a);
    if (fn == "log") return std::log(a);
    if (fn == "sqrt") return std::sqrt(a);
    if (fn == "abs") return std::abs(a);
    if (fn == "tanh") return std::tanh(a);
    if (fn == "atan") return std::atan(a);
    if (fn == "sign") return (a > 0) - (a < 0);
    if (fn == "atan2") return std::atan2(a, b);
    if (fn == "min") return std::min(a, b);
    if (fn == "max") return std::max(a, b);
    return std::pow(a, b);
}

double evaluate(const Node& n, std::span<const double> v) {
    switch (n.op) {
        case Node::Op::number: return n.value;
        case Node::Op::variable: return v[n.slot];
        case Node::Op::neg: return -evaluate(*n.args[0], v);
        case Node::Op::add: return evaluate(*n.args[0], v) + evaluate(*n.args[1], v);
        case Node::Op::sub: return evaluate(*n.args[0], v) - evaluate(*n.args[1], v);
        case Node::Op::mul: return evaluate(*n.args[0], v) * evaluate(*n.args[1], v);
        case Node::Op::div: return evaluate(*n.args[0], v) / evaluate(*n.args[1], v);
        case Node::Op::pow: return std::pow(evaluate(*n.args[0], v), evaluate(*n.args[1], v));
        case Node::Op::call: {
            const double a = evaluate(*n.args[0], v);
            const double b = n.args.size() > 1 ? evaluate(*n.args[1], v) : 0.0;
            return call(n.fn, a, b);
        }
    }
    return 0.0;
}

}  // namespace

Expression Expression::compile(const std::string& text, const std::vector<std::string>& variables) {
    Expression e;
    e.text_ = text;
    e.root_ = Parser(text, variables).parse();
    return e;
}

double Expression::eval(std::span<const double> values) const { return root_ ? evaluate(*root_, values) : 0.0; }

}  // namespace aslo::expr
